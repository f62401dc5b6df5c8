"""Chain construction: mechanical emitters of relation-justified rewrites.

Everything here produces *verified-by-construction* step sequences: each
emitter applies its steps to a live presentation as it records them, so an
invalid emission fails immediately rather than at replay time. Searches
(span witnesses, norm witnesses, square-shift data) are deterministic
over sorted candidate lists and bounded by explicit caps.
"""

from __future__ import annotations

import itertools

from .errors import Undecided, UnsupportedParameters
from .fields import (
    FiniteField,
    PrimeField,
    RationalFunctionField,
    SimpleExtension,
    artin_schreier_solve,
    fp_solve,
)
from ._poly import FpPoly
from .symbols import (
    ClassPresentation,
    EquivalenceCertificate,
    PSymbol,
    R1Step,
    R2Step,
    R3Step,
    SlotMulStep,
    WittAddStep,
)
from .witt import WittVector


class ChainCaps:
    """Bounds for the deterministic searches inside chain construction."""

    def __init__(self, max_degree=2, max_height=2, max_terms=400, max_rounds=64):
        self.max_degree = max_degree
        self.max_height = max_height
        self.max_terms = max_terms
        self.max_rounds = max_rounds


class Chain:
    """A live presentation plus the steps that produced it."""

    def __init__(self, start):
        self.start = start
        self.current = start
        self.steps = []

    def apply(self, step):
        self.current = step.apply(self.current)
        self.steps.append(step)

    def certificate(self, end=None):
        return EquivalenceCertificate(self.start, end or self.current, self.steps)

    def extend_inverted(self, other):
        """Append the inverse of `other`'s steps (other.current must equal
        self.current); afterwards self.current == other.start."""
        if other.current != self.current:
            raise UnsupportedParameters("chains do not meet at a common form")
        for step in reversed(other.steps):
            self.apply(invert_step(step))


def invert_step(step):
    if isinstance(step, R1Step):
        modulus = step.witt.field.p ** _step_length(step)
        return R1Step(step.witt, step.slots, (-step.coeff) % modulus)
    if isinstance(step, R2Step):
        modulus = step.a.field.p ** step.m
        return R2Step(step.position, step.a, step.slots, step.m, (-step.coeff) % modulus)
    if isinstance(step, R3Step):
        modulus = step.witt.field.p ** step.witt.length
        return R3Step(step.witt, step.slots, (-step.coeff) % modulus)
    if isinstance(step, WittAddStep):
        direction = "split" if step.direction == "merge" else "merge"
        return WittAddStep(step.witt1, step.witt2, step.slots, direction)
    if isinstance(step, SlotMulStep):
        direction = "merge" if step.direction == "split" else "split"
        return SlotMulStep(
            step.witt, step.position, step.b, step.bprime, step.rest_slots, direction
        )
    raise UnsupportedParameters(f"cannot invert step {step!r}")


def _step_length(step):
    return step.witt.length


def vec_at(field, m, k, value):
    """(0,..,0,value,0,..,0) with value at 1-based slot k."""
    comps = [field.zero()] * m
    comps[k - 1] = value
    return WittVector(field, comps)


# -- elementary emitters --------------------------------------------------------


def emit_remove_zero_vector_term(chain, slots):
    """Cancel every unit of (zero-vector (x) slots) via an R1 instance."""
    field = chain.current.field
    m = chain.current.m
    zero = WittVector.zero(field, m)
    sym = PSymbol(zero, slots)
    c = dict(chain.current.terms).get(sym, 0)
    if c:
        chain.apply(R1Step(zero, slots, (-c) % (field.p ** m)))


def emit_conjure_pair(chain, witt, slots):
    """Introduce (witt (x) slots) + (-witt (x) slots) out of an R1 zero term."""
    field = chain.current.field
    m = chain.current.m
    zero = WittVector.zero(field, m)
    chain.apply(R1Step(zero, slots, 1))
    chain.apply(WittAddStep(witt, -witt, slots, "split"))


def emit_collapse_units(chain, witt, slots, count):
    """Merge `count` units of (witt (x) slots) into the Witt `count`-multiple.

    Returns the merged vector (count >= 1)."""
    acc = witt
    for _ in range(count - 1):
        chain.apply(WittAddStep(acc, witt, slots, "merge"))
        acc = acc + witt
    return acc


def emit_negate_unit(chain, witt, slots):
    """Turn coefficient p^m - 1 of (witt (x) slots) into one unit of (-witt)."""
    field = chain.current.field
    modulus = field.p ** chain.current.m
    return emit_collapse_units(chain, witt, slots, modulus - 1)


def emit_frobenius_unit(chain, witt, slots, e=1):
    """Replace a unit (witt (x) slots) by (witt^{p^e} (x) slots)."""
    current = witt
    for _ in range(e):
        wp = current.wp()
        chain.apply(R1Step(current, slots, 1))
        chain.apply(WittAddStep(current, wp, slots, "merge"))
        current = current + wp
    return current


def emit_add_wp_vector(chain, witt, slots, preimage):
    """Replace a unit (witt (x) slots) by ((witt + wp(preimage)) (x) slots)."""
    wp = preimage.wp()
    chain.apply(R1Step(preimage, slots, 1))
    chain.apply(WittAddStep(witt, wp, slots, "merge"))
    return witt + wp


def emit_frobenius_reduce(chain, witt, slots):
    """Replace a unit (witt (x) slots) by its componentwise p-th root when
    every component has one; returns the root vector or None."""
    roots = []
    for c in witt.components:
        r = c.pth_root()
        if r is None:
            return None
        roots.append(r)
    root = WittVector(witt.field, roots)
    if root == witt:
        return None
    wp = root.wp()
    chain.apply(WittAddStep(root, wp, slots, "split"))
    chain.apply(R1Step(root, slots, (-1) % (witt.field.p ** chain.current.m)))
    return root


def emit_split_off(chain, witt, slots, part):
    """Split a unit (witt (x) slots) into (part) + (witt - part); returns rest."""
    rest = witt - part
    chain.apply(WittAddStep(part, rest, slots, "split"))
    return rest


def emit_power_slot_collapse(chain, witt, slots, position, base, e):
    """Collapse a unit with slot base^(p^e) at `position` into the
    p^e-fold Witt multiple with slot `base`; removes the term when the
    multiple vanishes. Returns the final vector or None if removed.

    Coefficients live mod p^m, so units that annihilate modulo p^m simply
    vanish during the peeling; only the surviving residue gets merged."""
    field = chain.current.field
    p = field.p
    count = p ** e
    modulus = p ** chain.current.m
    for k in range(count, 1, -1):
        cur_slots = list(slots)
        cur_slots[position] = base ** k
        chain.apply(
            SlotMulStep(witt, position, base, base ** (k - 1), cur_slots, "split")
        )
    units = count % modulus
    if units == 0:
        return None
    base_slots = list(slots)
    base_slots[position] = base
    merged = emit_collapse_units(chain, witt, base_slots, units)
    if merged.is_zero():
        emit_remove_zero_vector_term(chain, base_slots)
        return None
    return merged


def emit_r2_power_kill(chain, k, c_small, i_exp, b, slots, position=0):
    """Remove a unit (V_k(c^p * b^i) (x) ...b...) using the slot-coupled
    relation; deeper-slot residue terms may be introduced (the caller's
    reduction loop handles them). Supports p in {2, 3}."""
    field = chain.current.field
    p = field.p
    m = chain.current.m
    if p > 3:
        raise UnsupportedParameters("slot-coupled kills implemented for p <= 3")
    v = (c_small ** p) * (b ** i_exp)
    vec = vec_at(field, m, k, v)
    # split slot b = v * (b / v)
    w = b / v
    cur_slots = list(slots)
    cur_slots[position] = b
    chain.apply(SlotMulStep(vec, position, v, w, cur_slots, "split"))
    # cancel the (vec (x) ...v...) piece against the relation instance
    v_slots = list(slots)
    v_slots[position] = v
    if position == 0:
        chain.apply(R2Step(k, v, v_slots, m, (-1) % (field.p ** m)))
    else:
        raise UnsupportedParameters("slot-coupled kills expect the coupled slot first")
    # handle the (vec (x) ...w...) piece, w = c^{-p} * b^{1-i}
    w_slots = list(slots)
    w_slots[position] = w
    if i_exp == 1:
        emit_power_slot_collapse(chain, vec, w_slots, position, c_small.inv(), 1)
        return
    # split w = c^{-p} * b^{1-i}
    c_inv_p = (c_small.inv()) ** p
    b_neg_part = b ** (1 - i_exp)
    chain.apply(SlotMulStep(vec, position, c_inv_p, b_neg_part, w_slots, "split"))
    cp_slots = list(slots)
    cp_slots[position] = c_inv_p
    emit_power_slot_collapse(chain, vec, cp_slots, position, c_small.inv(), 1)
    # (vec (x) (b^{-1})^(i-1)): split into i-1 units of slot b^{-1} and recurse
    binv = b.inv()
    for j in range(i_exp - 1, 1, -1):
        cur = list(slots)
        cur[position] = binv ** j
        chain.apply(SlotMulStep(vec, position, binv, binv ** (j - 1), cur, "split"))
    # each unit: v = (c*b)^p * (b^{-1})^(p - i): recurse
    binv_slots = list(slots)
    binv_slots[position] = binv
    for _ in range(i_exp - 1):
        emit_r2_power_kill(chain, k, c_small * b, p - i_exp, binv, binv_slots, position)


def emit_swap_to_negated(chain, witt, slots, i, j):
    """Replace a unit (witt (x) ...b_i...b_j...) by ((-witt) (x) swapped slots)."""
    field = witt.field
    modulus = field.p ** chain.current.m
    if slots[i] == slots[j]:
        # equal slots: both the term and its negated swap are R3 instances
        chain.apply(R3Step(witt, slots, (-1) % modulus))
        chain.apply(R3Step(-witt, slots, 1))
        return
    a, b = slots[i], slots[j]
    swapped = list(slots)
    swapped[i], swapped[j] = b, a
    diag_a = list(slots)
    diag_a[j] = a
    diag_b = list(slots)
    diag_b[i] = b
    if -witt == witt:
        # conjured pairs would annihilate: expand the full R3 square instead
        full = list(slots)
        full[i] = a * b
        full[j] = a * b
        chain.apply(R3Step(witt, full, (-1) % modulus))
        half_a = list(slots)
        half_a[j] = a * b
        half_b = list(swapped)
        half_b[j] = a * b
        for _ in range(modulus - 1):
            chain.apply(SlotMulStep(witt, i, a, b, full, "split"))
        for _ in range(modulus - 1):
            chain.apply(SlotMulStep(witt, j, a, b, half_a, "split"))
        for _ in range(modulus - 1):
            chain.apply(SlotMulStep(witt, j, b, a, half_b, "split"))
        chain.apply(R3Step(witt, diag_a, 1))
        chain.apply(R3Step(witt, diag_b, 1))
        # (witt (x) swapped) now has coefficient p^m - 1: self-annihilate pairs
        count = modulus - 1
        while count > 1:
            chain.apply(WittAddStep(witt, witt, swapped, "merge"))
            emit_remove_zero_vector_term(chain, swapped)
            count -= 2
        return
    emit_conjure_pair(chain, -witt, swapped)
    # presentation now has: (witt(x)slots), (-witt(x)swapped), (witt(x)swapped)
    chain.apply(R3Step(witt, diag_a, 1))
    chain.apply(R3Step(witt, diag_b, 1))
    merged_j = list(slots)
    merged_j[j] = a * b
    chain.apply(SlotMulStep(witt, j, a, b, merged_j, "merge"))
    merged_j2 = list(swapped)
    merged_j2[j] = b * a
    chain.apply(SlotMulStep(witt, j, b, a, merged_j2, "merge"))
    final = list(slots)
    final[i] = a * b
    final[j] = a * b
    chain.apply(SlotMulStep(witt, i, a, b, final, "merge"))
    chain.apply(R3Step(witt, final, (-1) % modulus))


# -- witness searches ------------------------------------------------------------


def candidate_elements(field, caps):
    """Deterministic candidate pool for bounded searches."""
    if field.is_finite():
        return [e for e in field.iter_elements() if not e.is_zero()]
    if isinstance(field, RationalFunctionField):
        out = []
        deg = caps.max_degree
        monos = [
            e
            for e in itertools.product(range(deg + 1), repeat=field.nvars)
            if sum(e) <= deg
        ]
        monos.sort(key=lambda e: (sum(e), e))
        for coeffs in itertools.product(range(field.p), repeat=len(monos)):
            if not any(coeffs):
                continue
            poly = FpPoly(field.p, field.nvars)
            for c, e in zip(coeffs, monos):
                if c:
                    poly.coeffs[e] = c
            out.append(field.from_polys(poly))
        out.sort(key=lambda e: e.sort_key())
        inverses = [e.inv() for e in out if not e.is_one()]
        return out + inverses
    if isinstance(field, SimpleExtension):
        base = candidate_elements(field.base, caps)
        lifted = [field.from_base(e) for e in base]
        gen = field.generator()
        extra = [gen] + [gen + e for e in lifted[: caps.max_height * 8]]
        return lifted + extra
    raise Undecided(f"no candidate pool for {field}")


def span_solve(rho, b, caps):
    """Witnesses (lam, [c_1..c_{p-1}]) with rho = wp(lam) + sum c_i^p b^i.

    Complete over finite fields; over rational function fields tries the
    pure wp route and then bounded candidates for a single c (p = 2).
    Returns None when nothing is found (never a definite 'no' beyond the
    decidable fragment).
    """
    field = rho.field
    p = field.p
    zero_cs = [field.zero()] * (p - 1)
    if rho.is_zero():
        return field.zero(), zero_cs
    try:
        lam = artin_schreier_solve(rho)
    except Undecided:
        lam = None
    if lam is not None:
        return lam, zero_cs
    if isinstance(field, (PrimeField, FiniteField)):
        k = field.k if isinstance(field, FiniteField) else 1
        basis = []
        for i in range(k):
            coeffs = [1 if j == i else 0 for j in range(k)]
            if isinstance(field, FiniteField):
                basis.append(field.element(field.coeff_payload(coeffs)))
            else:
                basis.append(field.one())
        cols = []
        for e in basis:
            cols.append(e.frobenius() - e)  # wp on basis
        for i in range(1, p):
            bi = b ** i
            for e in basis:
                cols.append(e * bi)
        matrix = [
            [_coords(field, col)[row] for col in cols] for row in range(k)
        ]
        rhs = _coords(field, rho)
        sol = fp_solve(p, matrix, rhs)
        if sol is None:
            return None
        lam = field.zero()
        for c, e in zip(sol[:k], basis):
            lam = lam + e * c
        cs = []
        for i in range(1, p):
            h = field.zero()
            for c, e in zip(sol[k * i : k * (i + 1)], basis):
                h = h + e * c
            root = h.pth_root()
            assert root is not None
            cs.append(root)
        return lam, cs
    if p == 2:
        for c in candidate_elements(field, caps):
            try:
                lam = artin_schreier_solve(rho - (c * c) * b)
            except Undecided:
                continue
            if lam is not None:
                return lam, [c]
    return None


def _coords(field, elem):
    if isinstance(field, PrimeField):
        return [elem.payload]
    return list(field.coeffs_of(elem.payload))


def norm_decompose(b, rho, caps):
    """For p = 2: (g, v) with b = v^2 * (wp(g) + rho), or None."""
    field = rho.field
    if field.p != 2:
        return None
    candidates = [field.one()] + list(candidate_elements(field, caps))
    for v in candidates:
        if v.is_zero():
            continue
        try:
            g = artin_schreier_solve(b / (v * v) - rho)
        except Undecided:
            continue
        if g is not None:
            return g, v
    return None


# -- single-term kill and the reduction driver -----------------------------------


def _first_nonzero_slot(witt):
    for i, c in enumerate(witt.components):
        if not c.is_zero():
            return i + 1
    return None


def kill_term(chain, sym, caps):
    """Reduce the unit (sym.witt (x) sym.slots) to nothing, possibly leaving
    deeper-slot residue terms for the driver. Returns True on success."""
    field = chain.current.field
    m = chain.current.m
    p = field.p
    witt = sym.witt
    slots = sym.slots
    k = _first_nonzero_slot(witt)
    if k is None:
        emit_remove_zero_vector_term(chain, slots)
        return True
    if len(slots) != 1:
        # kills with coupled slots are single-slot machinery
        return False
    b = slots[0]
    rho = witt.components[k - 1]
    data = span_solve(rho, b, caps)
    if data is None and k == m and p == 2:
        nd = norm_decompose(b, rho, caps)
        if nd is not None:
            return _norm_kill_last_slot(chain, witt, b, nd, caps)
        return False
    if data is None:
        return False
    lam, cs = data
    current = witt
    if not lam.is_zero():
        pvec = vec_at(field, m, k, lam).wp()
        current = emit_split_off(chain, current, slots, pvec)
        chain.apply(R1Step(vec_at(field, m, k, lam), slots, (-1) % (p ** m)))
    for i, c in enumerate(cs, start=1):
        if c.is_zero():
            continue
        piece = vec_at(field, m, k, (c ** p) * (b ** i))
        current = emit_split_off(chain, current, slots, piece)
        emit_r2_power_kill(chain, k, c, i, b, slots)
    # `current` now has zero slot k and zeros below; recurse on deeper slots
    sub = PSymbol(current, slots)
    if current.is_zero():
        emit_remove_zero_vector_term(chain, slots)
        return True
    if _first_nonzero_slot(current) <= k:
        return False
    return kill_term(chain, sub, caps)


def _norm_kill_last_slot(chain, witt, b, data, caps):
    """Kill (V_m(rho) (x) b) with b = v^2 * (wp(g) + rho), p = 2, last slot.

    At the last Witt slot everything adds plainly, so the prime-level norm
    identity lifts verbatim: no residue terms are produced.
    """
    g, v = data
    field = witt.field
    m = chain.current.m
    k = m
    rho = witt.components[k - 1]
    core = g.frobenius() - g + rho  # wp(g) + rho
    if core.is_zero():
        merged = emit_power_slot_collapse(chain, witt, [b], 0, v, 1)
        return merged is None
    if not v.is_one():
        chain.apply(SlotMulStep(witt, 0, v * v, core, [b], "split"))
        merged = emit_power_slot_collapse(chain, witt, [v * v], 0, v, 1)
        if merged is not None:
            return False
    # now (V_m(rho) (x) core) is present
    modulus = field.p ** m
    wp_slot_val = g.frobenius() - g
    if wp_slot_val.is_zero():
        # core == rho: the term is an R2 instance directly
        chain.apply(R2Step(k, core, [core], m, (-1) % modulus))
        return True
    # add -(V_m(core) (x) core) [an R2 multiple], collapse it to the negated
    # vector, absorb our term, and discharge the wp leftover by R1
    chain.apply(R2Step(k, core, [core], m, (-1) % modulus))
    neg_core_vec = emit_collapse_units(
        chain, vec_at(field, m, k, core), [core], modulus - 1
    )
    assert neg_core_vec == vec_at(field, m, k, -core)
    chain.apply(WittAddStep(witt, neg_core_vec, [core], "merge"))
    # merged vector = V_m(rho - core) = V_m(-wp(g)) = wp(V_m(-g))
    chain.apply(R1Step(vec_at(field, m, k, -g), [core], (-1) % modulus))
    return True


def _try_kill(chain, sym, caps):
    """Attempt a kill on a probe; commit the steps only on success."""
    from .errors import DivisionByZero, StepInvalid

    probe = Chain(chain.current)
    try:
        ok = kill_term(probe, sym, caps)
    except (StepInvalid, Undecided, UnsupportedParameters, DivisionByZero, AssertionError):
        return False
    if ok:
        for st in probe.steps:
            chain.apply(st)
    return ok


def prove_zero(chain, caps):
    """Drive the presentation to the empty sum; True on success."""
    rounds = 0
    while not chain.current.is_zero():
        rounds += 1
        if rounds > caps.max_rounds or len(chain.current.terms) > caps.max_terms:
            return False
        progressed = False
        for sym, coeff in list(chain.current.terms):
            # collapse multi-unit coefficients into a single Witt multiple
            if coeff > 1:
                emit_collapse_units(chain, sym.witt, sym.slots, coeff)
                progressed = True
                break
        if progressed:
            continue
        for sym, coeff in list(chain.current.terms):
            if _try_kill(chain, sym, caps):
                progressed = True
                break
        if not progressed:
            # pairwise merges: same slot (witt sum) or same witt (slot product)
            terms = [s for s, c in chain.current.terms]
            merged = False
            for i in range(len(terms)):
                for j in range(i + 1, len(terms)):
                    a, b2 = terms[i], terms[j]
                    if a.slots == b2.slots:
                        chain.apply(WittAddStep(a.witt, b2.witt, a.slots, "merge"))
                        merged = True
                        break
                    if a.witt == b2.witt and len(a.slots) == 1:
                        chain.apply(
                            SlotMulStep(
                                a.witt,
                                0,
                                a.slots[0],
                                b2.slots[0],
                                [a.slots[0] * b2.slots[0]],
                                "merge",
                            )
                        )
                        merged = True
                        break
                if merged:
                    break
            if not merged:
                return False
    return True


def prove_equal(start, end, caps):
    """Certificate start -> end by reduction to a common normal form."""
    fwd = Chain(start)
    bwd = Chain(end)
    _reduce_best_effort(fwd, caps)
    _reduce_best_effort(bwd, caps)
    if fwd.current != bwd.current:
        return None
    fwd.extend_inverted(bwd)
    return fwd.certificate(end)


def _reduce_best_effort(chain, caps):
    """Normalize: collapse coefficients, kill killable terms, merge same-slot
    pairs. Stops when no rule applies."""
    rounds = 0
    while rounds < caps.max_rounds:
        rounds += 1
        progressed = False
        for sym, coeff in list(chain.current.terms):
            if coeff > 1:
                emit_collapse_units(chain, sym.witt, sym.slots, coeff)
                progressed = True
                break
        if progressed:
            continue
        for sym, coeff in list(chain.current.terms):
            if _try_kill(chain, sym, caps):
                progressed = True
                break
        if progressed:
            continue
        for sym, coeff in list(chain.current.terms):
            if coeff == 1 and emit_frobenius_reduce(chain, sym.witt, sym.slots):
                progressed = True
                break
        if progressed:
            continue
        terms = [s for s, c in chain.current.terms]
        for i in range(len(terms)):
            for j in range(i + 1, len(terms)):
                a, b2 = terms[i], terms[j]
                if a.slots == b2.slots:
                    chain.apply(WittAddStep(a.witt, b2.witt, a.slots, "merge"))
                    progressed = True
                    break
            if progressed:
                break
        if not progressed:
            break
