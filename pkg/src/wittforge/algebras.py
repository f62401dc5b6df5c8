"""Symbol algebras as explicit structure-constant algebras.

The degree-p^m algebra attached to (omega, beta) is generated by Witt-type
generators t_1..t_m and y with the defining relations: the componentwise
p-th power vector of (t_1..t_m) equals omega plus (t_1..t_m) in the Witt
ring, y^(p^m) = beta, and conjugation by y adds the Witt unit vector.
Power-reduction and conjugation rules are derived mechanically from the
universal Witt sum polynomials rather than hand-coded per (p, m).
"""

from __future__ import annotations

import random

from . import unipoly
from .errors import (
    DescriptorMismatch,
    NotCentralSimple,
    SearchExhausted,
    UnsupportedParameters,
    WrongDescriptor,
)
from .fields import (
    FieldElement,
    FiniteField,
    PrimeField,
    RationalFunctionField,
    SimpleExtension,
    field_rank,
    least_irreducible_modulus,
)
from .witt import WittVector, witt_polynomials, witt_trace, witt_zmod_iso

_BUILD_P_CAP = (2, 3)
_BUILD_M_CAP = 2
_DIM_CAP = 81
_TENSOR_DIM_CAP = 4096


class SymbolAlgebraPresentation:
    """The datum (m, omega, beta) with beta a nonzero field element."""

    def __init__(self, m, omega, beta):
        if omega.length != m:
            raise UnsupportedParameters("Witt vector length must equal m")
        if beta.field != omega.field:
            raise DescriptorMismatch("beta must lie in the Witt coefficient field")
        if beta.is_zero():
            raise UnsupportedParameters("beta must be nonzero")
        self.m = m
        self.omega = omega
        self.beta = beta

    @property
    def field(self):
        return self.omega.field

    def __repr__(self):
        return f"[{self.omega},{self.beta})_{self.field.p}^{self.m}"

    def to_json(self):
        return {
            "m": self.m,
            "omega": [str(c) for c in self.omega.components],
            "beta": str(self.beta),
        }

    @classmethod
    def from_json(cls, field, obj):
        omega = WittVector(field, [field.parse(t) for t in obj["omega"]])
        return cls(obj["m"], omega, field.parse(obj["beta"]))


class StructureConstantAlgebra:
    """Finite-dimensional algebra given by basis labels and sparse constants."""

    def __init__(self, field, labels, table, one_index):
        self.field = field
        self.labels = list(labels)
        self.dim = len(labels)
        self.table = table  # dict[(i, j)] -> tuple of (k, coeff)
        self.one_index = one_index

    def zero_element(self):
        return AlgebraElement(self, tuple(self.field.zero() for _ in range(self.dim)))

    def one(self):
        coeffs = [self.field.zero()] * self.dim
        coeffs[self.one_index] = self.field.one()
        return AlgebraElement(self, tuple(coeffs))

    def basis_element(self, i):
        coeffs = [self.field.zero()] * self.dim
        coeffs[i] = self.field.one()
        return AlgebraElement(self, tuple(coeffs))

    def element(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != self.dim:
            raise UnsupportedParameters("coefficient vector has the wrong length")
        return AlgebraElement(self, coeffs)

    def scalar(self, c):
        coeffs = [self.field.zero()] * self.dim
        coeffs[self.one_index] = c
        return AlgebraElement(self, tuple(coeffs))

    def basis_product(self, i, j):
        return self.table.get((i, j), ())

    def left_mult_matrix(self, u):
        """Matrix of x -> u*x on the basis (columns are u*e_j)."""
        zero = self.field.zero()
        cols = []
        for j in range(self.dim):
            col = [zero] * self.dim
            for i, ci in enumerate(u.coeffs):
                if ci.is_zero():
                    continue
                for k, c in self.basis_product(i, j):
                    col[k] = col[k] + ci * c
            cols.append(col)
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def to_json(self):
        entries = []
        for (i, j), row in sorted(self.table.items()):
            for k, c in row:
                entries.append([i, j, k, str(c)])
        return {
            "field": self.field.to_json(),
            "labels": self.labels,
            "one": self.one_index,
            "constants": entries,
        }

    def __repr__(self):
        return f"<{self.dim}-dim algebra over {self.field}>"


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    def __add__(self, other):
        return AlgebraElement(
            self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return AlgebraElement(self.algebra, tuple(a * other for a in self.coeffs))
        alg = self.algebra
        out = [alg.field.zero()] * alg.dim
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                ab = a * b
                for k, c in alg.basis_product(i, j):
                    out[k] = out[k] + ab * c
        return AlgebraElement(alg, tuple(out))

    def __pow__(self, n):
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra is self.algebra
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        alg = self.algebra
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                cs = str(c)
                if "+" in cs or "-" in cs or "/" in cs:
                    cs = f"({cs})"
                terms.append(f"{cs}*{alg.labels[i]}" if cs != "1" else alg.labels[i])
        return " + ".join(terms) if terms else "0"


# -- theta-polynomial helpers used by the builder -----------------------------


def _tp_add(a, b, field):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, field.zero()) + c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _tp_mul(a, b, field):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e, field.zero()) + c1 * c2
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
    return out


def _tp_scale(a, c, field):
    if c.is_zero():
        return {}
    return {e: v * c for e, v in a.items()}


def _tp_reduce(a, rules, p, field):
    """Rewrite until every exponent is < p, using t_k^p -> rules[k]."""
    work = dict(a)
    changed = True
    while changed:
        changed = False
        for e in list(work.keys()):
            k = next((i for i, x in enumerate(e) if x >= p), None)
            if k is None:
                continue
            c = work.pop(e)
            rest = list(e)
            rest[k] -= p
            term = _tp_mul({tuple(rest): c}, rules[k], field)
            work = _tp_add(work, term, field)
            changed = True
            break
    return work


def build_symbol_algebra(pres):
    """Structure constants for the algebra attached to (omega, beta)."""
    p = pres.field.p
    m = pres.m
    if p not in _BUILD_P_CAP or m > _BUILD_M_CAP:
        raise UnsupportedParameters(
            f"symbol algebra builder supports p in {_BUILD_P_CAP}, m <= {_BUILD_M_CAP}"
        )
    field = pres.field
    d = p ** (2 * m)
    if d > _DIM_CAP:
        raise UnsupportedParameters("algebra dimension exceeds the cap")
    table_polys = witt_polynomials(p, m)

    def eval_sum_mixed(scalars, thetas):
        """Witt sum polynomials at (scalar vector, theta-polynomial vector)."""
        out = []
        zero_e = (0,) * m
        for poly in table_polys._sum_mod:
            acc = {}
            for coeff, exps in poly:
                term = {zero_e: field.from_int(coeff)}
                ok = True
                for i, k in enumerate(exps):
                    if not k:
                        continue
                    if i < m:
                        s = scalars[i] ** k
                        if s.is_zero():
                            ok = False
                            break
                        term = _tp_scale(term, s, field)
                    else:
                        theta_pow = {zero_e: field.one()}
                        for _ in range(k):
                            theta_pow = _tp_mul(theta_pow, thetas[i - m], field)
                        term = _tp_mul(term, theta_pow, field)
                if ok and term:
                    acc = _tp_add(acc, term, field)
            out.append(acc)
        return out

    theta_vars = []
    for i in range(m):
        e = [0] * m
        e[i] = 1
        theta_vars.append({tuple(e): field.one()})

    # power rules: componentwise p-th powers equal omega (+) theta
    raw_rules = eval_sum_mixed(list(pres.omega.components), theta_vars)
    rules = [dict(r) for r in raw_rules]
    for k in range(m):
        rules[k] = _tp_reduce(rules[k], rules, p, field)

    # conjugation by y: theta (+) unit vector
    unit = [field.one()] + [field.zero()] * (m - 1)
    conj_gens = eval_sum_mixed(unit, theta_vars)
    conj_gens = [_tp_reduce(g, rules, p, field) for g in conj_gens]

    def conj_of_poly(tp):
        out = {}
        zero_e = (0,) * m
        for e, c in tp.items():
            term = {zero_e: c}
            for i, k in enumerate(e):
                for _ in range(k):
                    term = _tp_mul(term, conj_gens[i], field)
            out = _tp_add(out, term, field)
        return _tp_reduce(out, rules, p, field)

    # iterated conjugations of each theta monomial basis element
    import itertools as _it

    theta_exps = list(_it.product(range(p), repeat=m))
    q = p ** m
    conj_table = []  # conj_table[j][I] = theta-poly for y^j theta^I y^-j
    current = {e: {e: field.one()} for e in theta_exps}
    for j in range(q):
        conj_table.append({e: dict(v) for e, v in current.items()})
        if j < q - 1:
            current = {e: conj_of_poly(v) for e, v in current.items()}

    labels = []
    index = {}
    for e in theta_exps:
        for j in range(q):
            parts = []
            for i, k in enumerate(e):
                if k == 1:
                    parts.append(f"t{i + 1}")
                elif k > 1:
                    parts.append(f"t{i + 1}^{k}")
            if j == 1:
                parts.append("y")
            elif j > 1:
                parts.append(f"y^{j}")
            label = "*".join(parts) if parts else "1"
            index[(e, j)] = len(labels)
            labels.append(label)

    table = {}
    for (e1, j1) in index:
        i1 = index[(e1, j1)]
        for (e2, j2) in index:
            i2 = index[(e2, j2)]
            # theta^e1 y^j1 theta^e2 y^j2 = theta^e1 conj^j1(theta^e2) y^(j1+j2)
            tp = _tp_mul({e1: field.one()}, conj_table[j1][e2], field)
            tp = _tp_reduce(tp, rules, p, field)
            jj = j1 + j2
            scalar = field.one()
            if jj >= q:
                scalar = pres.beta
                jj -= q
            row = []
            for e, c in sorted(tp.items()):
                val = c * scalar
                if not val.is_zero():
                    row.append((index[(e, jj)], val))
            if row:
                table[(i1, i2)] = tuple(row)
    return StructureConstantAlgebra(field, labels, table, index[((0,) * m, 0)])


def check_associativity(algebra):
    """(e_i e_j) e_k == e_i (e_j e_k) on all basis triples.

    Returns (True, None) or (False, first violating triple).
    """
    d = algebra.dim
    if d > _DIM_CAP:
        raise UnsupportedParameters("associativity check capped at dimension 81")
    zero = algebra.field.zero()
    for i in range(d):
        for j in range(d):
            row_ij = algebra.basis_product(i, j)
            for k in range(d):
                left = {}
                for t, c in row_ij:
                    for s, c2 in algebra.basis_product(t, k):
                        left[s] = left.get(s, zero) + c * c2
                right = {}
                for t, c in algebra.basis_product(j, k):
                    for s, c2 in algebra.basis_product(i, t):
                        right[s] = right.get(s, zero) + c * c2
                keys = set(left) | set(right)
                for s in keys:
                    if left.get(s, zero) != right.get(s, zero):
                        return False, (i, j, k)
    return True, None


def _gf2_rank(rows, width):
    rank = 0
    rows = [r for r in rows if r]
    for bit in range(width):
        mask = 1 << bit
        pivot = None
        for idx in range(rank, len(rows)):
            if rows[idx] & mask:
                pivot = idx
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for idx in range(len(rows)):
            if idx != rank and rows[idx] & mask:
                rows[idx] ^= rows[rank]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _fp_matrix_rank(p, rows):
    if p == 2:
        width = len(rows[0]) if rows else 0
        packed = []
        for r in rows:
            v = 0
            for i, x in enumerate(r):
                if x % 2:
                    v |= 1 << i
            packed.append(v)
        return _gf2_rank(packed, width)
    m = len(rows)
    n = len(rows[0]) if m else 0
    mat = [list(r) for r in rows]
    rank = 0
    for c in range(n):
        pivot = None
        for i in range(rank, m):
            if mat[i][c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][c], -1, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for i in range(m):
            if i != rank and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def _sandwich_matrix_rows(algebra):
    """Rows of the map a(x)b -> (x -> a x b) on basis pairs, entries in field."""
    d = algebra.dim
    rows = []
    zero = algebra.field.zero()
    # precompute basis triple products e_i e_k e_j
    for i in range(d):
        for j in range(d):
            row = [zero] * (d * d)
            for k in range(d):
                for t, c in algebra.basis_product(i, k):
                    for s, c2 in algebra.basis_product(t, j):
                        row[k * d + s] = row[k * d + s] + c * c2
            rows.append(row)
    return rows


def _rank_over_prime(field, rows):
    """F_p-rank of a matrix over a finite field via the regular representation.

    Each entry alpha becomes the k x k block of multiplication by alpha on
    the power basis, so the F_p-rank is k times the F_q-rank.
    """
    p = field.p
    if isinstance(field, PrimeField):
        return _fp_matrix_rank(p, [[c.payload for c in r] for r in rows]), 1
    k = field.k
    basis = [
        FieldElement(field, field.coeff_payload([1 if idx == t else 0 for idx in range(k)]))
        for t in range(k)
    ]
    rows_out = []
    for r in rows:
        shifted = [[field.coeffs_of((c * basis[t]).payload) for t in range(k)] for c in r]
        for rr in range(k):
            out = []
            for blocks in shifted:
                for t in range(k):
                    out.append(blocks[t][rr])
            rows_out.append(out)
    return _fp_matrix_rank(p, rows_out), k


def is_central_simple(algebra, seed=0):
    """True iff a(x)b -> axb from A (x) A^op to End(A) is bijective."""
    d = algebra.dim
    if d > _DIM_CAP:
        raise UnsupportedParameters("central-simplicity check capped at dimension 81")
    field = algebra.field
    rows = _sandwich_matrix_rows(algebra)
    if field.is_finite():
        rank, blowup = _rank_over_prime(field, rows)
        return rank == blowup * d * d
    if isinstance(field, RationalFunctionField):
        # full rank at any specialization certifies full generic rank
        rng = random.Random(seed)
        probe = FiniteField(field.p, 4)
        for _ in range(8):
            values = [probe.random_element(rng) for _ in field.vars]
            spec_rows = []
            ok = True
            for r in rows:
                out = []
                for c in r:
                    num, den = c.payload
                    dv = den.eval_in_field(probe, values)
                    if dv.is_zero():
                        ok = False
                        break
                    out.append(num.eval_in_field(probe, values) / dv)
                if not ok:
                    break
                spec_rows.append(out)
            if not ok:
                continue
            rank, blowup = _rank_over_prime(probe, spec_rows)
            if rank == blowup * d * d:
                return True
        # exact fallback (slow; reached only when every sample was deficient)
        return field_rank(field, rows) == d * d
    return field_rank(field, rows) == d * d


def tensor_or_opposite(mode, a, b=None):
    """mode 'tensor': Kronecker structure constants; mode 'opposite': reverse."""
    if mode == "opposite":
        table = {}
        for (i, j), row in a.table.items():
            table[(j, i)] = row
        return StructureConstantAlgebra(a.field, list(a.labels), table, a.one_index)
    if mode != "tensor":
        raise UnsupportedParameters(f"unknown mode {mode!r}")
    if b is None or b.field != a.field:
        raise DescriptorMismatch("tensor factors must share one base field")
    dim = a.dim * b.dim
    if dim > _TENSOR_DIM_CAP:
        raise UnsupportedParameters("tensor dimension exceeds the cap")
    labels = [f"{la}(x){lb}" for la in a.labels for lb in b.labels]
    table = {}
    for (i1, j1), row1 in a.table.items():
        for (i2, j2), row2 in b.table.items():
            entries = []
            for k1, c1 in row1:
                for k2, c2 in row2:
                    c = c1 * c2
                    if not c.is_zero():
                        entries.append((k1 * b.dim + k2, c))
            if entries:
                table[(i1 * b.dim + i2, j1 * b.dim + j2)] = tuple(entries)
    return StructureConstantAlgebra(
        a.field, labels, table, a.one_index * b.dim + b.one_index
    )


def _min_poly_in_algebra(algebra, u):
    """Monic minimal polynomial of u over the base field (coefficient list)."""
    from .fields import field_solve

    field = algebra.field
    d = algebra.dim
    powers = [algebra.one()]
    for _ in range(d):
        powers.append(powers[-1] * u)
    for k in range(1, d + 1):
        matrix = [[powers[j].coeffs[i] for j in range(k)] for i in range(d)]
        rhs = [(-powers[k]).coeffs[i] for i in range(d)]
        sol = field_solve(field, matrix, rhs)
        if sol is not None:
            return sol + [field.one()]
    raise AssertionError("element has no minimal polynomial within dim")


def _eval_poly_in_algebra(algebra, coeffs, u):
    acc = algebra.zero_element()
    for c in reversed(coeffs):
        acc = acc * u + algebra.scalar(c)
    return acc


def find_zero_divisor(algebra, seed=0, tries=200):
    """A pair (u, v) of nonzero elements with u*v = 0, over a finite base.

    Randomized: a reducible minimal polynomial factors into a zero-divisor
    pair; a deterministic low-weight sweep backs the random stage.
    """
    field = algebra.field
    if not field.is_finite():
        raise WrongDescriptor("zero-divisor search runs over finite base fields")
    if algebra.dim > _DIM_CAP:
        raise UnsupportedParameters("zero-divisor search capped at dimension 81")
    rng = random.Random(seed)
    order = field.order if not isinstance(field, PrimeField) else field.p

    def try_element(u):
        if u.is_zero():
            return None
        mp = _min_poly_in_algebra(algebra, u)
        if unipoly.deg(mp) == 1:
            return None
        piece = unipoly.find_factor(mp, field, order, rng)
        if piece is None:
            return None
        cofactor, rem = unipoly.divmod_poly(mp, piece, field)
        assert not rem
        a = _eval_poly_in_algebra(algebra, piece, u)
        b = _eval_poly_in_algebra(algebra, cofactor, u)
        if a.is_zero() or b.is_zero():
            return None
        assert (a * b).is_zero()
        return a, b

    for _ in range(tries):
        u = algebra.element(
            [field.random_element(rng) for _ in range(algebra.dim)]
        )
        got = try_element(u)
        if got:
            return got
    # deterministic fallback: low-weight sums of basis elements
    for i in range(algebra.dim):
        for j in range(i, algebra.dim):
            u = algebra.basis_element(i) + algebra.basis_element(j)
            got = try_element(u)
            if got:
                return got
    raise SearchExhausted("no zero divisor found within the caps")


def _hessenberg_charpoly(field, matrix):
    """Characteristic polynomial det(tI - M), monic coefficient list."""
    n = len(matrix)
    h = [list(r) for r in matrix]
    for c in range(n - 2):
        pivot = None
        for r in range(c + 1, n):
            if not h[r][c].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != c + 1:
            h[c + 1], h[pivot] = h[pivot], h[c + 1]
            for r in range(n):
                h[r][c + 1], h[r][pivot] = h[r][pivot], h[r][c + 1]
        inv = h[c + 1][c].inv()
        for r in range(c + 2, n):
            if not h[r][c].is_zero():
                t = h[r][c] * inv
                for k in range(n):
                    h[r][k] = h[r][k] - t * h[c + 1][k]
                for k in range(n):
                    h[k][c + 1] = h[k][c + 1] + t * h[k][r]
    # charpoly recurrence on the Hessenberg form
    polys = [[field.one()]]
    for k in range(1, n + 1):
        # p_k = (t - h[k-1][k-1]) p_{k-1} - sum beta * p_i
        term = unipoly.mul(polys[k - 1], [-h[k - 1][k - 1], field.one()], field)
        beta = field.one()
        for i in range(k - 1, 0, -1):
            beta = beta * h[i][i - 1]
            if h[i - 1][k - 1].is_zero() or beta.is_zero():
                if beta.is_zero():
                    break
                continue
            coeff = h[i - 1][k - 1] * beta
            term = unipoly.sub(term, unipoly.scale(polys[i - 1], coeff))
        polys.append(term)
    return polys[n]


def reduced_norm(algebra, u, degree=None):
    """Reduced norm over a finite base field, via the left-multiplication
    characteristic polynomial and p^m-th root extraction."""
    field = algebra.field
    if not field.is_finite():
        raise WrongDescriptor("reduced norms are computed over finite base fields")
    d = algebra.dim
    if degree is None:
        root = round(d ** 0.5)
        if root * root != d:
            raise NotCentralSimple("algebra dimension is not a perfect square")
        degree = root
    if degree > 9:
        raise UnsupportedParameters("reduced norm capped at degree 9")
    if d != degree * degree:
        raise NotCentralSimple("dimension does not match the stated degree")
    if not is_central_simple(algebra):
        raise NotCentralSimple("algebra is not central simple")
    char = _hessenberg_charpoly(field, algebra.left_mult_matrix(u))
    # char = (reduced char poly)^degree with degree a power of p: coefficients
    # survive only at indices divisible by degree
    m = 0
    dd = degree
    while dd % field.p == 0:
        dd //= field.p
        m += 1
    if dd != 1:
        raise NotCentralSimple("degree must be a power of p")
    reduced = []
    for idx, c in enumerate(char):
        if idx % degree == 0:
            r = c
            for _ in range(m):
                rr = r.pth_root()
                assert rr is not None
                r = rr
            reduced.append(r)
        elif not c.is_zero():
            raise NotCentralSimple(
                "left-multiplication characteristic polynomial is not a p^m-th power"
            )
    sign = field.from_int(-1) ** degree
    return sign * reduced[0]


def norm_split_check(omega, c):
    """Whether c is a norm from the cyclic extension attached to omega.

    Over finite fields the norm is surjective, so the value is in the
    witness: an element of the degree-p^j extension with norm c, where p^j
    is the order of omega's class.
    """
    field = omega.field
    if not field.is_finite():
        raise WrongDescriptor("norm_split_check runs over finite fields")
    if c.is_zero():
        raise UnsupportedParameters("c must be nonzero")
    m = omega.length
    trace = witt_trace(omega)
    r = witt_zmod_iso("to", trace)
    p = field.p
    pm = p ** m
    # degree of the attached extension: the order of the class, i.e. the
    # smallest p-power e with e*r = 0 mod p^m
    e = 1
    while (r * e) % pm != 0:
        e *= p
    if e == 1:
        return True, c  # trivial extension: the norm is the identity
    ext = cyclic_extension_of_degree(field, e)
    q = field.order if not isinstance(field, PrimeField) else field.p
    exponent = (q ** e - 1) // (q - 1)
    target = c
    for u in ext.iter_elements():
        if u.is_zero():
            continue
        nrm = u ** exponent
        if nrm == ext.from_base(target):
            # norm of a power-basis element equals the product of conjugates
            return True, u
    raise SearchExhausted("norm witness search failed (norms are surjective: bug)")


def cyclic_extension_of_degree(field, degree):
    """The (unique) extension of a finite field of the given degree."""
    order = field.order if not isinstance(field, PrimeField) else field.p
    import itertools as _it

    for high in _it.product(range(order), repeat=degree):
        coeffs = []
        ok = True
        for idx in reversed(high):
            coeffs.append(_int_to_field(field, idx))
        poly = coeffs + [field.one()]
        if unipoly.is_irreducible(poly, field, order):
            return SimpleExtension(field, "u", coeffs, "separable")
    raise SearchExhausted("no irreducible polynomial found (impossible)")


def _int_to_field(field, idx):
    if isinstance(field, PrimeField):
        return field.from_int(idx)
    return FieldElement(field, idx)
