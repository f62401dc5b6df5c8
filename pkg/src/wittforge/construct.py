"""Constructive pipelines: shifted Artin-Schreier systems, common cyclic
presentations, common inseparable splitting fields, symbol compression,
common-slot decompositions, exponent-drop factorizations, and the char-2
Pfister representation predicate.

Every pipeline returns explicit witnesses and machine-checkable rewrite
certificates, each re-verified before it is reported.
"""

from __future__ import annotations

import itertools

from . import chains
from .algebras import SymbolAlgebraPresentation, cyclic_extension_of_degree
from .chains import Chain, ChainCaps, vec_at
from .errors import (
    BadParameters,
    CertificateFailed,
    ChainNotFound,
    DescriptorMismatch,
    ObligationUnresolved,
    OracleRefused,
    PreconditionFails,
    SearchExhausted,
    Undecided,
    UnsupportedParameters,
)
from .fields import (
    FieldElement,
    FiniteField,
    PrimeField,
    RationalFunctionField,
    SimpleExtension,
    artin_schreier_solve,
    ext_norm,
    fp_independent,
    generates_extension,
)
from ._poly import square_part
from .symbols import (
    ClassPresentation,
    PSymbol,
    R1Step,
    R2Step,
    SlotMulStep,
    WittAddStep,
    shift_map,
    verify_certificate,
)
from .witt import WittVector


def wp_elem(a):
    return a.frobenius() - a


# -- Lemma-level machinery -------------------------------------------------------


class AspSystem:
    """The congruence system psi_i = r_i^(p^t) * pi modulo wp(F)."""

    def __init__(self, rs, psis):
        if len(rs) != len(psis) or not rs:
            raise BadParameters("need equally many r's and psi's, at least one")
        field = rs[0].field
        for e in list(rs) + list(psis):
            if e.field != field:
                raise DescriptorMismatch("system elements lie in different fields")
        if not fp_independent(rs):
            raise PreconditionFails("the r_i must be F_p-independent")
        self.rs = list(rs)
        self.psis = list(psis)
        self.field = field

    @property
    def t(self):
        return len(self.rs) - 1


class AspSolution:
    """pi together with exact witnesses: psi_i = r_i^(p^t) pi + wp(x_i)."""

    def __init__(self, pi, xs):
        self.pi = pi
        self.xs = xs

    def to_json(self):
        return {"pi": str(self.pi), "witnesses": [str(x) for x in self.xs]}


def solve_shifted_asp_system(system):
    """Solve by elimination: subtract the first congruence from the rest,
    recurse on the reduced system in X_0, and back-substitute."""
    rs, psis = system.rs, system.psis
    field = system.field
    p = field.p
    t = system.t
    if t == 0:
        pi = psis[0] / rs[0]
        sol = AspSolution(pi, [field.zero()])
    else:
        s = [rs[i] / rs[0] for i in range(1, t + 1)]
        pt = p ** t
        reduced_psis = [psis[i] - (s[i - 1] ** pt) * psis[0] for i in range(1, t + 1)]
        reduced_rs = [wp_elem(si) for si in s]
        sub = solve_shifted_asp_system(AspSystem(reduced_rs, reduced_psis))
        x0 = sub.pi
        ts = sub.xs
        pi = (psis[0] - wp_elem(x0)) / (rs[0] ** pt)
        xs = [x0]
        for i in range(1, t + 1):
            xs.append(ts[i - 1] + (s[i - 1] ** (p ** (t - 1))) * x0)
        sol = AspSolution(pi, xs)
    # exact re-verification of every congruence
    pt = p ** t
    for i in range(t + 1):
        if psis[i] != (rs[i] ** pt) * sol.pi + wp_elem(sol.xs[i]):
            raise AssertionError("shifted system solution failed exact verification")
    return sol


def check_depend(rs):
    """Images wp(r_i/r_0) for i >= 1, plus their F_p-independence."""
    if len(rs) < 2:
        raise BadParameters("need at least two elements")
    if rs[0].is_zero():
        raise PreconditionFails("r_0 must be nonzero")
    images = [wp_elem(r / rs[0]) for r in rs[1:]]
    return fp_independent(images), images


def tignol_bound(p, t=None, m=None, r=None, ell=None):
    """p^(t-m), or p^(r*ell - m) for the length-r refinement."""
    if r is not None or ell is not None:
        if r is None or ell is None or m is None or m > ell:
            raise BadParameters("the refinement needs r, ell and m <= ell")
        return p ** (r * ell - m)
    if t is None or m is None or m > t:
        raise BadParameters("need m <= t")
    return p ** (t - m)


class Obligation:
    """A deferred symbol-length bound attached to a presentation."""

    def __init__(self, description, bound, justification, presentation):
        self.description = description
        self.bound = bound
        self.justification = justification
        self.presentation = presentation
        self.resolved = False
        self.resolution = None  # ClassPresentation at the lower level
        self.certificate = None

    def resolve(self, resolution, certificate):
        self.resolved = True
        self.resolution = resolution
        self.certificate = certificate

    def to_json(self):
        out = {
            "description": self.description,
            "bound": self.bound,
            "justification": self.justification,
            "presentation": self.presentation.to_json(),
            "resolved": self.resolved,
        }
        if self.resolved:
            out["resolution"] = self.resolution.to_json()
            if self.certificate is not None:
                out["certificate"] = self.certificate.to_json()
        return out


# -- embeddings -------------------------------------------------------------------


def embed_element(elem, target):
    """Embed along the tower chain target -> ... -> elem.field."""
    if elem.field == target:
        return elem
    if isinstance(target, SimpleExtension):
        return target.from_base(embed_element(elem, target.base))
    raise DescriptorMismatch(f"{elem.field} does not embed into {target}")


def embed_witt(witt, target):
    return WittVector(target, [embed_element(c, target) for c in witt.components])


# -- common cyclic presentations (the Witt alignment rounds) -----------------------


def _checked_certificate(chain, end):
    cert = chain.certificate(end)
    ok, fail = verify_certificate(cert)
    if not ok:
        raise CertificateFailed(f"internally built certificate failed: {fail}")
    return cert


def _emit_add_r2_slot_vector(chain, witt, sym_slot, k, lam_base, e):
    """Forward-add V_k(sym_slot * lam_base^(p^e)) to a unit's Witt vector.

    lam_base^(p^e) is the slot multiplier, so the coupled relation plus a
    p^e-fold collapse (which dies below slot m) justifies the move exactly.
    """
    field = witt.field
    m = chain.current.m
    p = field.p
    if lam_base.is_zero():
        return witt
    lam = lam_base ** (p ** e)
    v = sym_slot * lam
    vec = vec_at(field, m, k, v)
    chain.apply(R2Step(k, v, [v], m, 1))
    if not lam.is_one():
        chain.apply(SlotMulStep(vec, 0, sym_slot, lam, [v], "split"))
        leftover = chains.emit_power_slot_collapse(chain, vec, [lam], 0, lam_base, e)
        if leftover is not None:
            raise CertificateFailed("slot-coupled vector did not collapse to zero")
    chain.apply(WittAddStep(witt, vec, [sym_slot], "merge"))
    return witt + vec


def common_cyclic_presentation(algebras, beta, rs, caps=None):
    """Align the Witt vectors of algebras with slots beta - r_i^(p^(m+t-1))
    into one shared vector, slot by slot, emitting verified certificates.

    algebras[0] must have slot beta (r_0 = 0); r_1..r_t must be
    F_p-independent. Returns (omega, [certificates]).
    """
    caps = caps or ChainCaps()
    if not algebras:
        raise BadParameters("need at least one algebra")
    field = algebras[0].field
    m = algebras[0].m
    p = field.p
    t = len(algebras) - 1
    for a in algebras:
        if a.m != m or a.field != field:
            raise DescriptorMismatch("algebras must share one (field, m)")
    slot_exp = p ** (m + t - 1)
    slots = [beta] + [beta - (r ** slot_exp) for r in rs]
    for a, s in zip(algebras, slots):
        if a.beta != s:
            raise PreconditionFails(
                "slot pattern must be beta, then beta - r_i^(p^(m+t-1))"
            )
    if t >= 1 and not fp_independent(rs):
        raise PreconditionFails("the r_i must be F_p-independent")

    vectors = [a.omega for a in algebras]
    chainlist = [
        Chain(ClassPresentation.of_symbol(PSymbol(a.omega, [a.beta])))
        for a in algebras
    ]
    if t == 0:
        certs = [
            _checked_certificate(chainlist[0], chainlist[0].current)
        ]
        return vectors[0], certs

    for k in range(1, m + 1):
        e = m - k + 1
        # Frobenius twist of every algebra by p^e
        for i in range(t + 1):
            vectors[i] = chains.emit_frobenius_unit(
                chainlist[i], vectors[i], [slots[i]], e
            )
        # solve the slot-k system on the twisted-by-previous-rounds values
        base = [r ** (p ** (k - 1)) for r in rs]
        psis = [
            vectors[i].components[k - 1] - vectors[0].components[k - 1]
            for i in range(1, t + 1)
        ]
        sol = solve_shifted_asp_system(AspSystem(base, psis))
        pi_k = sol.pi
        # modifications: coupled-slot vector plus an exact wp fix
        for i in range(t + 1):
            vectors[i] = _emit_add_r2_slot_vector(
                chainlist[i], vectors[i], slots[i], k, pi_k, e
            )
            if i >= 1:
                x = sol.xs[i - 1]
                if not x.is_zero():
                    fix = vec_at(field, m, k, -(x ** (p ** e)))
                    vectors[i] = chains.emit_add_wp_vector(
                        chainlist[i], vectors[i], [slots[i]], fix
                    )
        lead = vectors[0].components[:k]
        for i in range(1, t + 1):
            if vectors[i].components[:k] != lead:
                raise CertificateFailed(
                    f"slot alignment failed at round {k} for algebra {i}"
                )
    omega = vectors[0]
    for v in vectors[1:]:
        if v != omega:
            raise CertificateFailed("final Witt vectors differ")
    certs = []
    for i in range(t + 1):
        end = ClassPresentation.of_symbol(PSymbol(omega, [slots[i]]))
        certs.append(_checked_certificate(chainlist[i], end))
    return omega, certs


# -- norm generators and common inseparable splitting ------------------------------


def find_norm_generator(K, L, caps=None):
    """v in LK whose norm down to K generates K over the ground field.

    K is a purely inseparable simple extension, L a separable one over the
    same ground field. Returns (LK, v, z) with z = Norm_{LK/K}(v)."""
    caps = caps or ChainCaps()
    if not isinstance(K, SimpleExtension):
        raise UnsupportedParameters("K must be a simple extension tower")
    if K.degree == 1:
        raise BadParameters("K must be a proper extension")
    base = K.base
    if L.base != base:
        raise DescriptorMismatch("K and L must extend the same field")
    lifted_min = tuple(embed_element(c, K) for c in L.minpoly)
    LK = SimpleExtension(K, L.gen_name, lifted_min, L.ext_kind, _trusted=True)
    theta = LK.generator()
    pool = [K.zero()] + chains.candidate_elements(K, caps)
    tried = 0
    for u in pool:
        tried += 1
        if tried > 4096:
            break
        v = theta + LK.from_base(u)
        z = ext_norm(LK, v)
        if z.is_zero():
            continue
        if generates_extension(K, z):
            return LK, v, z
    raise SearchExhausted("no norm generator within the search caps")


class InsepSplitResult:
    def __init__(self, b, b_ground, r, tower, trace, certificates):
        self.b = b              # the generator datum z*gamma (in E for k = 2)
        self.b_ground = b_ground  # its descent to the ground field
        self.r = r
        self.tower = tower      # the splitting field T as a descriptor
        self.trace = trace
        self.certificates = certificates

    def to_json(self):
        return {
            "b": str(self.b),
            "b_ground": str(self.b_ground),
            "r": self.r,
            "tower": self.tower.to_json(),
            "trace": self.trace,
            "certificates": [c.to_json() for c in self.certificates],
        }


def _purely_insep_tower(field, name, c, r):
    """field(c^(1/p^r)) as a descriptor."""
    p = field.p
    coeffs = [-c] + [field.zero()] * (p ** r - 1)
    return SimpleExtension(field, name, coeffs, "purely_inseparable")


def _kill_power_slot_unit(chain, witt, slot_elem, base, e):
    leftover = chains.emit_power_slot_collapse(chain, witt, [slot_elem], 0, base, e)
    if leftover is not None:
        raise CertificateFailed("power slot did not collapse")


def common_inseparable_splitting(presentations, caps=None):
    """A single purely inseparable extension splitting every input algebra.

    Follows the inductive construction: the first algebra's own slot field,
    then a norm generator twist for the second. Emits split certificates
    over the output tower. Supports up to two inputs (tower-depth caps)."""
    caps = caps or ChainCaps()
    distinct = []
    for pres in presentations:
        if not any(
            q.m == pres.m and q.omega == pres.omega and q.beta == pres.beta
            for q in distinct
        ):
            distinct.append(pres)
    if not distinct:
        raise BadParameters("need at least one presentation")
    if len(distinct) > 2:
        raise UnsupportedParameters(
            "common inseparable splitting is capped at two distinct algebras"
        )
    field = distinct[0].field
    p = field.p
    a1 = distinct[0]
    if a1.beta.pth_root() is not None:
        raise Undecided("first slot is a p-th power; the slot field degenerates")
    if len(distinct) == 1:
        r = a1.m
        tower = _purely_insep_tower(field, "s", a1.beta, r)
        omega_t = embed_witt(a1.omega, tower)
        beta_t = embed_element(a1.beta, tower)
        chain = Chain(ClassPresentation.of_symbol(PSymbol(omega_t, [beta_t])))
        _kill_power_slot_unit(chain, omega_t, beta_t, tower.generator(), r)
        cert = _checked_certificate(chain, ClassPresentation(tower, a1.m, 1))
        return InsepSplitResult(
            a1.beta, a1.beta, r, tower,
            {"kind": "single", "slot": str(a1.beta)},
            [cert],
        )
    a2 = distinct[1]
    if a2.m != 1 or a1.m != 1:
        raise UnsupportedParameters(
            "the two-algebra construction is implemented for degree-p inputs"
        )
    E = _purely_insep_tower(field, "s", a1.beta, a1.m)
    # L = the cyclic subfield attached to a2's Witt vector (degree p here)
    c2 = a2.omega.components[0]
    try:
        sol = artin_schreier_solve(c2)
    except Undecided:
        sol = None
    if sol is not None:
        raise Undecided("second algebra's cyclic subfield is split; use k = 1")
    L = SimpleExtension(
        field,
        "t",
        [-c2, -field.one()] + [field.zero()] * (p - 2),
        "separable",
    )
    LK, v, z = find_norm_generator(E, L, caps)
    gamma = a2.beta
    b = z * embed_element(gamma, E)
    # T = E((z*gamma)^(1/p^{m2})): a depth-2 tower
    T = _purely_insep_tower(E, "u", b, a2.m)
    # descent to the ground field: (z*gamma)^(p^{m1}) lies in F
    b_power = b ** (p ** a1.m)
    coords = b_power.payload
    if any(not c.is_zero() for c in coords[1:]):
        raise CertificateFailed("descended generator did not land in the ground field")
    b_ground = coords[0]
    r_total = a1.m + a2.m
    # split certificate for a1 over T: its slot is the p^{m1} power of s
    s_in_T = T.from_base(E.generator())
    omega1_t = embed_witt(a1.omega, T)
    beta1_t = embed_element(a1.beta, T)
    ch1 = Chain(ClassPresentation.of_symbol(PSymbol(omega1_t, [beta1_t])))
    _kill_power_slot_unit(ch1, omega1_t, beta1_t, s_in_T, a1.m)
    cert1 = _checked_certificate(ch1, ClassPresentation(T, a1.m, 1))
    # split certificate for a2 over T: gamma = u^{p^{m2}} / z
    omega2_t = embed_witt(a2.omega, T)
    gamma_t = embed_element(gamma, T)
    z_t = embed_element(z, T)
    u_gen = T.generator()
    ch2 = Chain(ClassPresentation.of_symbol(PSymbol(omega2_t, [gamma_t])))
    certs = [cert1]
    if p == 2:
        # gamma = u^2 * z^{-1} exactly
        if gamma_t != (u_gen * u_gen) / z_t:
            raise CertificateFailed("slot decomposition failed over the tower")
        chain2 = ch2
        chain2.apply(
            SlotMulStep(
                omega2_t, 0, u_gen * u_gen, z_t.inv(), [gamma_t], "split"
            )
        )
        _kill_power_slot_unit(chain2, omega2_t, u_gen * u_gen, u_gen, 1)
        # z = wp(u_of_v) + c2 with v = theta + u_of_v from the generator search
        u_of_v = v.payload[0]  # v = theta + (element of E)
        g_in_T = embed_element(u_of_v, T)
        rho = omega2_t.components[0]
        if not chains._norm_kill_last_slot(
            chain2, omega2_t, z_t.inv(), (g_in_T, z_t.inv()), caps
        ):
            raise CertificateFailed("norm-based split certificate failed")
        cert2 = _checked_certificate(chain2, ClassPresentation(T, a2.m, 1))
        certs.append(cert2)
    trace = {
        "kind": "double",
        "E": E.to_json(),
        "L": L.to_json(),
        "v": str(v),
        "z": str(z),
        "b": str(b),
        "b_ground": str(b_ground),
    }
    return InsepSplitResult(b, b_ground, r_total, T, trace, certs)


# -- the re-presentation oracle ----------------------------------------------------


class RepresentationOracle:
    """Supplies re-presentations [omega_i, beta_i) = [omega_i', c) over a
    bigger Witt length, either by bounded structured search or from
    explicit caller data."""

    def __init__(self, caps=None, supplied=None):
        self.caps = caps or ChainCaps()
        self.supplied = supplied or {}

    def represent(self, pres, target_slot, target_m):
        """Returns (omega', certificate start=Shifted input, end=new symbol)."""
        key = (str(pres.omega), str(pres.beta), str(target_slot), target_m)
        if key in self.supplied:
            omega_new, cert = self.supplied[key]
            ok, fail = verify_certificate(cert)
            if not ok:
                raise OracleRefused(f"supplied re-presentation failed: {fail}")
            return omega_new, cert
        return self._search(pres, target_slot, target_m)

    def _search(self, pres, target_slot, target_m):
        field = pres.field
        p = field.p
        if p != 2 or pres.m != 1 or target_m != 2:
            raise OracleRefused(
                "search backend covers p = 2 re-presentations from length 1 to 2"
            )
        if not isinstance(field, RationalFunctionField):
            raise OracleRefused("search backend expects a rational function field")
        tau = pres.omega.components[0]
        t_b = pres.beta
        start = shift_map(
            ClassPresentation.of_symbol(PSymbol(pres.omega, [pres.beta])),
            target_m - pres.m,
        )
        num, den = target_slot.payload
        if not den.is_constant():
            raise OracleRefused("target slot must be polynomial")
        s0_poly, h_poly = square_part(num)
        s0 = field.from_polys(s0_poly)
        h = field.from_polys(h_poly)
        if den.constant_value() != 1:
            raise OracleRefused("target slot must be monic-denominator free")
        # strategy 1: a_1 = 1 when the square part matches the target slot
        if h == t_b and tau.is_one():
            got = self._vanish_solve_m2(s0)
            if got is not None:
                a2, recipe = got
                omega_new = WittVector(field, [field.one(), a2])
                cert = self._build_cert_a1_one(
                    start, omega_new, target_slot, s0, h, recipe
                )
                if cert is not None:
                    return omega_new, cert
        # strategy 2: a_1 = 0 via square-shift transport onto the target slot
        if tau.is_one():
            got = self._transport_solve(t_b, s0)
            if got is not None:
                a2, hq = got
                omega_new = WittVector(field, [field.zero(), a2])
                cert = self._build_cert_a1_zero(
                    start, omega_new, target_slot, s0, h, t_b, hq
                )
                if cert is not None:
                    return omega_new, cert
        raise OracleRefused("no re-presentation found within the search caps")

    def _vanish_solve_m2(self, s0):
        """a2 with (1, a2) (x) s0 provably zero: seed the coupled relation
        with s0 itself and aim the residual at a direct relation instance."""
        field = s0.field
        try:
            lam = artin_schreier_solve(field.one() + s0)
        except Undecided:
            lam = None
        if lam is None:
            return None
        # offset = slot 2 of ((1,0) + (s0,0)) - wp((lam,0))
        base_vec = WittVector(field, [field.one(), field.zero()])
        seed_vec = WittVector(field, [s0, field.zero()])
        merged = base_vec + seed_vec
        after = merged - vec_at(field, 2, 1, lam).wp()
        offset = after.components[1]
        a2 = s0 - offset
        return a2, lam

    def _build_cert_a1_one(self, start, omega_new, slot, s0, h, lam):
        field = omega_new.field
        end = ClassPresentation.of_symbol(PSymbol(omega_new, [slot]))
        red = Chain(end)
        # peel the square factor: slot = s0 * h^2
        red.apply(SlotMulStep(omega_new, 0, s0, h * h, [slot], "split"))
        leftover = chains.emit_power_slot_collapse(red, omega_new, [h * h], 0, h, 1)
        if leftover is None:
            return None
        # leftover = 2 * omega_new = (0, 1): the target shifted symbol
        # now kill (omega_new (x) s0) via the seeded route
        seed_vec = WittVector(field, [s0, field.zero()])
        red.apply(R2Step(1, s0, [s0], 2, 1))
        red.apply(WittAddStep(omega_new, seed_vec, [s0], "merge"))
        merged = omega_new + seed_vec
        lam_vec = vec_at(field, 2, 1, lam)
        rest = merged - lam_vec.wp()
        red.apply(WittAddStep(lam_vec.wp(), rest, [s0], "split"))
        red.apply(R1Step(lam_vec, [s0], 3))
        # rest must be (0, s0): a direct slot-coupled relation instance
        if rest != vec_at(field, 2, 2, s0):
            return None
        red.apply(R2Step(2, s0, [s0], 2, 3))
        probe = Chain(start)
        try:
            probe.extend_inverted(red)
        except UnsupportedParameters:
            return None
        return _checked_certificate(probe, end)

    def _transport_solve(self, t_b, s0):
        """(h', q) with s0 = t_b * h'^2 + q^2; a2 = s0 / (t_b h'^2)."""
        field = s0.field
        pool = [field.one()] + chains.candidate_elements(field, self.caps)
        for hp in pool:
            if hp.is_zero():
                continue
            rem = s0 - t_b * hp * hp
            if rem.is_zero():
                q = field.zero()
            else:
                q = rem.pth_root()
                if q is None:
                    continue
            a2 = s0 / (t_b * hp * hp)
            return a2, (hp, q)
        return None

    def _build_cert_a1_zero(self, start, omega_new, slot, s0, h, t_b, hq):
        hp, q = hq
        field = omega_new.field
        a2 = omega_new.components[1]
        end = ClassPresentation.of_symbol(PSymbol(omega_new, [slot]))
        red = Chain(end)
        if not h.is_one():
            red.apply(SlotMulStep(omega_new, 0, s0, h * h, [slot], "split"))
            leftover = chains.emit_power_slot_collapse(
                red, omega_new, [h * h], 0, h, 1
            )
            if leftover is not None:
                return None
        # now: (0, a2) (x) s0 with a2 = s0/(t_b hp^2); factor the slot
        B = t_b * hp * hp
        red.apply(SlotMulStep(omega_new, 0, B, a2, [s0], "split"))
        # (0,a2) (x) a2 is a relation instance
        red.apply(R2Step(2, a2, [a2], 2, 3))
        if not hp.is_one():
            red.apply(SlotMulStep(omega_new, 0, t_b, hp * hp, [B], "split"))
            leftover = chains.emit_power_slot_collapse(
                red, omega_new, [hp * hp], 0, hp, 1
            )
            if leftover is not None:
                return None
        # remaining: (0, a2) (x) t_b vs target (0, tau=1) (x) t_b:
        # a2 - 1 = (q / (hp t_b))^2 * t_b: a coupled-slot second-slot shift
        if not q.is_zero():
            g = q / (hp * t_b)
            shift_val = (g * g) * t_b
            one_vec = vec_at(field, 2, 2, field.one())
            shift_vec = vec_at(field, 2, 2, shift_val)
            if one_vec + shift_vec != omega_new:
                return None
            red.apply(WittAddStep(one_vec, shift_vec, [t_b], "split"))
            # kill (0, g^2 t_b) (x) t_b: couple the slot, then collapse g^{-2}
            w2 = t_b / shift_val  # = g^{-2}
            red.apply(SlotMulStep(shift_vec, 0, shift_val, w2, [t_b], "split"))
            red.apply(R2Step(2, shift_val, [shift_val], 2, 3))
            leftover = chains.emit_power_slot_collapse(
                red, shift_vec, [w2], 0, g.inv(), 1
            )
            if leftover is not None:
                return None
        probe = Chain(start)
        try:
            probe.extend_inverted(red)
        except UnsupportedParameters:
            return None
        return _checked_certificate(probe, end)
