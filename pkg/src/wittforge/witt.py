"""Truncated Witt vectors W_m(F) for char-p fields.

The ring structure is evaluated through universal integer polynomials
generated once per (p, m) by the ghost-component recursion and cached.
Component maps (Frobenius, shift, truncation) follow the componentwise
definitions; over imperfect fields the componentwise p-th power map used
here can differ from the abstract ring Frobenius, and it is the
componentwise version that the rest of the library relies on.
"""

from __future__ import annotations

import threading

from .errors import (
    BadLength,
    DescriptorMismatch,
    LengthMismatch,
    UnsupportedParameters,
    WrongDescriptor,
)
from .fields import FieldElement, PrimeField

_POLY_P_CAP = (2, 3, 5)
_POLY_M_CAP = 3


class IntPoly:
    """Integer-coefficient polynomial on exponent-tuple keys (exact)."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    self.coeffs[tuple(e)] = c

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            r = out.get(e, 0) + c
            if r:
                out[e] = r
            elif e in out:
                del out[e]
        res = IntPoly(self.nvars)
        res.coeffs = out
        return res

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        res = IntPoly(self.nvars)
        if k:
            res.coeffs = {e: c * k for e, c in self.coeffs.items()}
        return res

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                r = out.get(e, 0) + c1 * c2
                if r:
                    out[e] = r
                elif e in out:
                    del out[e]
        res = IntPoly(self.nvars)
        res.coeffs = out
        return res

    def __pow__(self, n):
        result = IntPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divide_exact_int(self, k):
        res = IntPoly(self.nvars)
        for e, c in self.coeffs.items():
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(
                    "ghost recursion produced a non-integral coefficient"
                )
            res.coeffs[e] = q
        return res

    def is_zero(self):
        return not self.coeffs

    def reduce_mod(self, p):
        """List of (coeff, exps) with coeff in [1, p)."""
        out = []
        for e, c in sorted(self.coeffs.items()):
            r = c % p
            if r:
                out.append((r, e))
        return out


def ghost(vars_list, n, p):
    """w_n = sum_{i<=n} p^{i-1} z_i^{p^(n-i)} over the given variables."""
    nvars = vars_list[0].nvars
    acc = IntPoly(nvars)
    for i in range(1, n + 1):
        acc = acc + (vars_list[i - 1] ** (p ** (n - i))).scale(p ** (i - 1))
    return acc


class WittPolynomialTable:
    """Universal sum/product/negation polynomials for W_m over char p."""

    def __init__(self, p, m):
        if p not in _POLY_P_CAP or m > _POLY_M_CAP or m < 1:
            raise UnsupportedParameters(
                f"Witt polynomial tables support p in {_POLY_P_CAP} and m <= {_POLY_M_CAP}"
            )
        self.p = p
        self.m = m
        nv = 2 * m
        xs = [IntPoly.var(nv, i) for i in range(m)]
        ys = [IntPoly.var(nv, m + i) for i in range(m)]
        self.sum_polys = []
        self.prod_polys = []
        for n in range(1, m + 1):
            target = ghost(xs, n, p) + ghost(ys, n, p)
            for i in range(1, n):
                target = target - (self.sum_polys[i - 1] ** (p ** (n - i))).scale(
                    p ** (i - 1)
                )
            self.sum_polys.append(target.divide_exact_int(p ** (n - 1)))
            target = ghost(xs, n, p) * ghost(ys, n, p)
            for i in range(1, n):
                target = target - (self.prod_polys[i - 1] ** (p ** (n - i))).scale(
                    p ** (i - 1)
                )
            self.prod_polys.append(target.divide_exact_int(p ** (n - 1)))
        nxs = [IntPoly.var(m, i) for i in range(m)]
        self.neg_polys = []
        for n in range(1, m + 1):
            target = ghost(nxs, n, p).scale(-1)
            for i in range(1, n):
                target = target - (self.neg_polys[i - 1] ** (p ** (n - i))).scale(
                    p ** (i - 1)
                )
            self.neg_polys.append(target.divide_exact_int(p ** (n - 1)))
        self._sum_mod = [poly.reduce_mod(p) for poly in self.sum_polys]
        self._prod_mod = [poly.reduce_mod(p) for poly in self.prod_polys]
        self._neg_mod = [poly.reduce_mod(p) for poly in self.neg_polys]

    def ghost_identities_hold(self):
        """Symbolic check of all three families of ghost identities."""
        p, m = self.p, self.m
        nv = 2 * m
        xs = [IntPoly.var(nv, i) for i in range(m)]
        ys = [IntPoly.var(nv, m + i) for i in range(m)]
        nxs = [IntPoly.var(m, i) for i in range(m)]
        for n in range(1, m + 1):
            lhs = ghost(self.sum_polys, n, p)
            if not (lhs - ghost(xs, n, p) - ghost(ys, n, p)).is_zero():
                return False
            lhs = ghost(self.prod_polys, n, p)
            if not (lhs - ghost(xs, n, p) * ghost(ys, n, p)).is_zero():
                return False
            lhs = ghost(self.neg_polys, n, p)
            if not (lhs + ghost(nxs, n, p)).is_zero():
                return False
        return True


_tables = {}
_tables_lock = threading.Lock()


def witt_polynomials(p, m):
    """The cached universal polynomial table for (p, m)."""
    key = (p, m)
    with _tables_lock:
        table = _tables.get(key)
        if table is None:
            table = WittPolynomialTable(p, m)
            _tables[key] = table
    return table


def _eval_reduced(poly_mod, field, values):
    total = field.zero()
    cache = [dict() for _ in values]

    def power(i, k):
        d = cache[i]
        got = d.get(k)
        if got is None:
            got = values[i] ** k
            d[k] = got
        return got

    for c, exps in poly_mod:
        term = None
        for i, k in enumerate(exps):
            if k:
                factor = power(i, k)
                term = factor if term is None else term * factor
        if term is None:
            term = field.one()
        if c != 1:
            term = term * c
        total = total + term
    return total


class WittVector:
    """Length-m vector over a field with Witt ring arithmetic."""

    __slots__ = ("field", "components")

    def __init__(self, field, components):
        components = tuple(components)
        if not components:
            raise LengthMismatch("Witt vectors must have length >= 1")
        for c in components:
            if not isinstance(c, FieldElement) or c.field != field:
                raise DescriptorMismatch("components must lie in the given field")
        self.field = field
        self.components = components

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(i) for i in ints])

    @classmethod
    def zero(cls, field, m):
        return cls(field, [field.zero() for _ in range(m)])

    @property
    def length(self):
        return len(self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def _check(self, other):
        if other.field != self.field:
            raise DescriptorMismatch("Witt vectors over different fields")
        if other.length != self.length:
            raise LengthMismatch(
                f"Witt vector lengths differ: {self.length} vs {other.length}"
            )

    def __add__(self, other):
        self._check(other)
        table = witt_polynomials(self.field.p, self.length)
        values = list(self.components) + list(other.components)
        return WittVector(
            self.field,
            [_eval_reduced(tp, self.field, values) for tp in table._sum_mod],
        )

    def __neg__(self):
        table = witt_polynomials(self.field.p, self.length)
        values = list(self.components)
        return WittVector(
            self.field,
            [_eval_reduced(tp, self.field, values) for tp in table._neg_mod],
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        table = witt_polynomials(self.field.p, self.length)
        values = list(self.components) + list(other.components)
        return WittVector(
            self.field,
            [_eval_reduced(tp, self.field, values) for tp in table._prod_mod],
        )

    def int_multiple(self, n):
        """n-fold Witt sum of self (n >= 0)."""
        acc = WittVector.zero(self.field, self.length)
        add = self
        while n:
            if n & 1:
                acc = acc + add
            add = add + add
            n >>= 1
        return acc

    def frobenius(self, e=1):
        """Componentwise p^e-th powers."""
        return WittVector(self.field, [c.frobenius(e) for c in self.components])

    def wp(self):
        """The additive map u -> u^p (componentwise) minus u in the Witt ring."""
        return self.frobenius() - self

    def shift(self, ell):
        """Prepend ell zeros (lands in length m + ell)."""
        if ell < 1:
            raise BadLength("shift amount must be >= 1")
        zeros = [self.field.zero()] * ell
        return WittVector(self.field, zeros + list(self.components))

    def truncate(self, keep):
        """Keep the first `keep` components."""
        if not 1 <= keep <= self.length:
            raise BadLength(f"cannot truncate length {self.length} to {keep}")
        return WittVector(self.field, self.components[:keep])

    def __eq__(self, other):
        return (
            isinstance(other, WittVector)
            and other.field == self.field
            and other.components == self.components
        )

    def __hash__(self):
        return hash((self.field, self.components))

    def sort_key(self):
        return tuple(c.sort_key() for c in self.components)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"WittVector{self}"

    def to_json(self):
        return {
            "length": self.length,
            "components": [str(c) for c in self.components],
        }

    @classmethod
    def from_json(cls, field, obj):
        return cls(field, [field.parse(t) for t in obj["components"]])


def witt_arith(op, u, v=None):
    """Dispatcher used by the CLI: op in {add|sub|neg|mul}."""
    if op == "neg":
        return -u
    if v is None:
        raise BadLength("binary Witt operation needs two operands")
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    raise UnsupportedParameters(f"unknown Witt operation {op!r}")


def witt_shift_trunc(mode, u, ell):
    """`shift` prepends ell zeros; `truncate` keeps the first length-ell."""
    if mode == "shift":
        return u.shift(ell)
    if mode == "truncate":
        return u.truncate(u.length - ell)
    raise UnsupportedParameters(f"unknown mode {mode!r}")


def _one_vector(field, m):
    return WittVector(field, [field.one()] + [field.zero()] * (m - 1))


def witt_zmod_iso(direction, value, field=None, m=None):
    """The unique ring isomorphism W_m(F_p) <-> Z/p^m, by enumeration."""
    if direction == "to":
        u = value
        if not isinstance(u.field, PrimeField):
            raise WrongDescriptor("the Z/p^m oracle needs the prime field")
        p, mm = u.field.p, u.length
        acc = WittVector.zero(u.field, mm)
        one = _one_vector(u.field, mm)
        for r in range(p ** mm):
            if acc == u:
                return r
            acc = acc + one
        raise AssertionError("enumeration failed to find the vector")
    if direction == "from":
        if not isinstance(field, PrimeField):
            raise WrongDescriptor("the Z/p^m oracle needs the prime field")
        r = value % (field.p ** m)
        return _one_vector(field, m).int_multiple(r)
    raise UnsupportedParameters(f"unknown direction {direction!r}")


def witt_trace(u):
    """Witt-ring trace down to W_m(F_p) for finite coefficient fields."""
    field = u.field
    if isinstance(field, PrimeField):
        return u
    if not field.is_finite() or field.kind != "finite":
        raise WrongDescriptor("witt_trace needs a finite coefficient field")
    total = u
    acc = u
    for _ in range(field.k - 1):
        acc = acc.frobenius()
        total = total + acc
    fp = PrimeField(field.p)
    comps = []
    for c in total.components:
        digits = field.coeffs_of(c.payload)
        if any(d != 0 for d in digits[1:]):
            raise AssertionError("trace component landed outside the prime field")
        comps.append(fp.from_int(digits[0]))
    return WittVector(fp, comps)
