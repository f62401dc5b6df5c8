"""Exact arithmetic in the supported base fields and simple extensions.

Supported descriptors: the prime field F_p, finite fields F_{p^k} with an
explicit irreducible modulus, rational function fields F_p(x_1..x_n) with
reduced fractions (monic denominator under graded-lex), and simple
extension towers of depth at most two above a rational or finite base.

Everything is immutable and structural: two elements are equal exactly
when their canonical payloads coincide.
"""

from __future__ import annotations

import itertools

from . import unipoly
from ._poly import FpPoly, poly_gcd
from .errors import (
    BadParameters,
    DescriptorMismatch,
    DivisionByZero,
    Undecided,
    UnsupportedParameters,
    WrongDescriptor,
)

_TABLE_ORDER_CAP = 300  # finite fields up to this order get full op tables
_TOWER_DEPTH_CAP = 2
_PRIMES = (2, 3, 5, 7, 11, 13)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldElement:
    """An element of some field descriptor, in canonical reduced form."""

    __slots__ = ("field", "payload")

    def __init__(self, field, payload):
        self.field = field
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise DescriptorMismatch(
                f"elements of {self.field} and {other.field} cannot be combined"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_p(self.payload, other.payload))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_p(self.payload))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_p(self.payload, other.payload))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise DivisionByZero(f"inverse of zero in {self.field}")
        return FieldElement(self.field, self.field.inv_p(self.payload))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self, iterations=1):
        """p^iterations-th power, via the descriptor's fast path."""
        if iterations < 0:
            raise BadParameters("frobenius iteration count must be nonnegative")
        return FieldElement(self.field, self.field.frobenius_p(self.payload, iterations))

    def pth_root(self):
        """Unique p-th root when one exists in this field, else None."""
        payload = self.field.pth_root_p(self.payload)
        if payload is None:
            return None
        return FieldElement(self.field, payload)

    def is_zero(self):
        return self.payload == self.field.zero_payload()

    def is_one(self):
        return self.payload == self.field.one_payload()

    def sort_key(self):
        return self.field.payload_key(self.payload)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.payload == other.payload
        )

    def __hash__(self):
        return hash((self.field, self.field.payload_key(self.payload)))

    def __str__(self):
        return self.field.format_payload(self.payload)

    def __repr__(self):
        return f"<{self} in {self.field}>"

    def to_json(self):
        return str(self)


class Field:
    """Base class for field descriptors."""

    kind = None
    p = None

    def zero(self):
        return FieldElement(self, self.zero_payload())

    def one(self):
        return FieldElement(self, self.one_payload())

    # aliases used by the generic univariate-polynomial helpers
    def zero_elem(self):
        return self.zero()

    def one_elem(self):
        return self.one()

    def from_int(self, n):
        return FieldElement(self, self.from_int_payload(n))

    def element(self, payload):
        return FieldElement(self, payload)

    def pth_root_elem(self, elem):
        return elem.pth_root()

    def random_element(self, rng, degree=2):
        return FieldElement(self, self.random_payload(rng, degree))

    def parse(self, text):
        from . import parsing

        return parsing.parse_element(self, text)

    def __ne__(self, other):
        return not self.__eq__(other)

    def is_finite(self):
        return False

    def __repr__(self):
        return str(self)


class PrimeField(Field):
    """F_p for a prime p; payloads are residues in [0, p)."""

    kind = "prime"

    def __init__(self, p):
        if not _is_prime(p):
            raise UnsupportedParameters(f"{p} is not prime")
        self.p = p

    def zero_payload(self):
        return 0

    def one_payload(self):
        return 1

    def from_int_payload(self, n):
        return n % self.p

    def add_p(self, a, b):
        return (a + b) % self.p

    def neg_p(self, a):
        return (-a) % self.p

    def mul_p(self, a, b):
        return (a * b) % self.p

    def inv_p(self, a):
        return pow(a, -1, self.p)

    def frobenius_p(self, a, e):
        return a

    def pth_root_p(self, a):
        return a

    def payload_key(self, a):
        return ("p", a)

    def format_payload(self, a):
        return str(a)

    def random_payload(self, rng, degree=2):
        return rng.randrange(self.p)

    def iter_elements(self):
        for v in range(self.p):
            yield FieldElement(self, v)

    @property
    def order(self):
        return self.p

    def is_finite(self):
        return True

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __str__(self):
        return f"F_{self.p}"

    def to_json(self):
        return {"kind": "prime", "p": self.p}


def _poly_tuple_mul(a, b, modulus, p):
    """Multiply coefficient tuples mod (p, modulus); modulus has leading 1."""
    k = len(modulus)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for top in range(2 * k - 2, k - 1, -1):
        c = prod[top]
        if c:
            prod[top] = 0
            for j in range(k):
                prod[top - k + j] = (prod[top - k + j] - c * modulus[j]) % p
    return tuple(prod[:k])


def least_irreducible_modulus(p, k):
    """Coefficients (c_0..c_{k-1}) of the least monic irreducible of degree k.

    Candidates are ordered by the coefficient vector read from the highest
    degree downwards, so the choice is reproducible.
    """
    fp = PrimeField(p)
    for high in itertools.product(range(p), repeat=k):
        coeffs = tuple(reversed(high))  # c_0 .. c_{k-1}
        poly = [fp.from_int(c) for c in coeffs] + [fp.one()]
        if unipoly.is_irreducible(poly, fp, p):
            return coeffs
    raise UnsupportedParameters(f"no irreducible of degree {k} over F_{p}")


class FiniteField(Field):
    """F_{p^k} presented as F_p[l]/(modulus); payloads are ints in [0, p^k).

    The payload integer's base-p digits are the coefficients of the
    canonical polynomial representative, lowest degree first. `w` denotes
    the residue class of the modulus variable.
    """

    kind = "finite"

    def __init__(self, p, k, modulus=None):
        if not _is_prime(p):
            raise UnsupportedParameters(f"{p} is not prime")
        if k < 1:
            raise UnsupportedParameters("extension degree must be >= 1")
        self.p = p
        self.k = k
        if modulus is None:
            modulus = least_irreducible_modulus(p, k)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k:
                raise UnsupportedParameters("modulus must have degree k")
            fp = PrimeField(p)
            poly = [fp.from_int(c) for c in modulus] + [fp.one()]
            if not unipoly.is_irreducible(poly, fp, p):
                raise UnsupportedParameters("modulus is not irreducible over F_p")
        self.modulus = modulus
        self.order = p ** k
        self._tables = None

    # payload <-> coefficient tuple
    def _digits(self, n):
        out = []
        for _ in range(self.k):
            out.append(n % self.p)
            n //= self.p
        return tuple(out)

    def _undigits(self, t):
        n = 0
        for c in reversed(t):
            n = n * self.p + c
        return n

    def _ensure_tables(self):
        if self._tables is not None or self.order > _TABLE_ORDER_CAP:
            return
        q, p = self.order, self.p
        tuples = [self._digits(i) for i in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for i in range(q):
            for j in range(i, q):
                s = self._undigits(
                    tuple((a + b) % p for a, b in zip(tuples[i], tuples[j]))
                )
                add[i][j] = add[j][i] = s
                m = self._undigits(_poly_tuple_mul(tuples[i], tuples[j], self.modulus, p))
                mul[i][j] = mul[j][i] = m
        inv = [0] * q
        for i in range(1, q):
            if inv[i]:
                continue
            j = 1
            while mul[i][j] != 1:
                j += 1
            inv[i], inv[j] = j, i
        frob = [self._pow_notable(i, p) for i in range(q)]
        self._tables = (add, mul, inv, frob)

    def _pow_notable(self, a, n):
        result = 1
        base = a
        while n:
            if n & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            n >>= 1
        return result

    def _mul_raw(self, a, b):
        return self._undigits(
            _poly_tuple_mul(self._digits(a), self._digits(b), self.modulus, self.p)
        )

    # -- Field interface -------------------------------------------------

    def zero_payload(self):
        return 0

    def one_payload(self):
        return 1

    def from_int_payload(self, n):
        return n % self.p

    def coeff_payload(self, coeffs):
        return self._undigits(tuple(c % self.p for c in coeffs))

    def coeffs_of(self, payload):
        return self._digits(payload)

    def add_p(self, a, b):
        self._ensure_tables()
        if self._tables:
            return self._tables[0][a][b]
        return self._undigits(
            tuple((x + y) % self.p for x, y in zip(self._digits(a), self._digits(b)))
        )

    def neg_p(self, a):
        return self._undigits(tuple((-x) % self.p for x in self._digits(a)))

    def mul_p(self, a, b):
        self._ensure_tables()
        if self._tables:
            return self._tables[1][a][b]
        return self._mul_raw(a, b)

    def inv_p(self, a):
        self._ensure_tables()
        if self._tables:
            return self._tables[2][a]
        # a^(q-2)
        return self._pow_notable(a, self.order - 2)

    def frobenius_p(self, a, e):
        self._ensure_tables()
        e %= self.k  # Frobenius has order k
        if self._tables:
            for _ in range(e):
                a = self._tables[3][a]
            return a
        for _ in range(e):
            a = self._pow_notable(a, self.p)
        return a

    def pth_root_p(self, a):
        return self.frobenius_p(a, self.k - 1)

    def payload_key(self, a):
        return ("f", a)

    def format_payload(self, a):
        digits = self._digits(a)
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = digits[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "w" if i == 1 else f"w^{i}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return "+".join(terms) if terms else "0"

    def random_payload(self, rng, degree=2):
        return rng.randrange(self.order)

    def iter_elements(self):
        for v in range(self.order):
            yield FieldElement(self, v)

    def is_finite(self):
        return True

    def generator(self):
        """The residue class of the modulus variable (printed as w)."""
        return FieldElement(self, self.p if self.k > 1 else 0)

    def trace_to_prime(self, elem):
        """Trace to F_p, as an element of PrimeField(p)."""
        acc = elem
        total = elem
        for _ in range(self.k - 1):
            acc = acc.frobenius()
            total = total + acc
        digits = self._digits(total.payload)
        assert all(c == 0 for c in digits[1:]), "trace landed outside F_p"
        return PrimeField(self.p).from_int(digits[0])

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and other.p == self.p
            and other.k == self.k
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("finite", self.p, self.k, self.modulus))

    def __str__(self):
        return f"F_{self.order}"

    def to_json(self):
        fp = PrimeField(self.p)
        terms = []
        for i in range(self.k, -1, -1):
            c = 1 if i == self.k else self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("l" if c == 1 else f"{c}*l")
            else:
                terms.append(f"l^{i}" if c == 1 else f"{c}*l^{i}")
        return {"kind": "finite", "p": self.p, "k": self.k, "modulus": "+".join(terms)}


class RationalFunctionField(Field):
    """F_p(x_1..x_n): reduced fractions with monic denominator."""

    kind = "rational_function"

    def __init__(self, p, variables):
        if not _is_prime(p):
            raise UnsupportedParameters(f"{p} is not prime")
        variables = tuple(variables)
        if not variables or len(set(variables)) != len(variables):
            raise UnsupportedParameters("variable names must be distinct and nonempty")
        self.p = p
        self.vars = variables
        self.nvars = len(variables)

    def _reduce(self, num, den):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            return (FpPoly(self.p, self.nvars), FpPoly.const(self.p, self.nvars, 1))
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.divide_exact(g)
            den = den.divide_exact(g)
        lc_inv = pow(den.leading_coeff(), -1, self.p)
        return (num.scale(lc_inv), den.scale(lc_inv))

    def from_polys(self, num, den=None):
        if den is None:
            den = FpPoly.const(self.p, self.nvars, 1)
        return FieldElement(self, self._reduce(num, den))

    def var(self, name):
        i = self.vars.index(name)
        return self.from_polys(FpPoly.var(self.p, self.nvars, i))

    def zero_payload(self):
        return (FpPoly(self.p, self.nvars), FpPoly.const(self.p, self.nvars, 1))

    def one_payload(self):
        one = FpPoly.const(self.p, self.nvars, 1)
        return (one, one)

    def from_int_payload(self, n):
        return (
            FpPoly.const(self.p, self.nvars, n),
            FpPoly.const(self.p, self.nvars, 1),
        )

    def add_p(self, a, b):
        n1, d1 = a
        n2, d2 = b
        return self._reduce(n1 * d2 + n2 * d1, d1 * d2)

    def neg_p(self, a):
        return (-a[0], a[1])

    def mul_p(self, a, b):
        n1, d1 = a
        n2, d2 = b
        return self._reduce(n1 * n2, d1 * d2)

    def inv_p(self, a):
        return self._reduce(a[1], a[0])

    def frobenius_p(self, a, e):
        num, den = a
        for _ in range(e):
            num = num.power_p()
            den = den.power_p()
        return (num, den)  # already reduced: p-th powers of coprimes are coprime

    def pth_root_p(self, a):
        num, den = a
        if not num.is_pth_power() or not den.is_pth_power():
            return None
        return (num.pth_root(), den.pth_root())

    def payload_key(self, a):
        def poly_key(poly):
            return tuple(sorted(poly.coeffs.items()))

        return ("r", poly_key(a[0]), poly_key(a[1]))

    def format_payload(self, a):
        num, den = a
        num_s = self._format_poly(num)
        if den.is_constant() and den.constant_value() == 1:
            return num_s
        den_s = self._format_poly(den)
        if "+" in num_s or "-" in num_s:
            num_s = f"({num_s})"
        if "+" in den_s or "-" in den_s or "*" in den_s or "^" in den_s:
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def _format_poly(self, poly):
        if poly.is_zero():
            return "0"
        items = sorted(poly.coeffs.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
        terms = []
        for exps, c in items:
            parts = []
            for name, e in zip(self.vars, exps):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            if not parts:
                terms.append(str(c))
            elif c == 1:
                terms.append("*".join(parts))
            else:
                terms.append(f"{c}*" + "*".join(parts))
        return "+".join(terms)

    def random_payload(self, rng, degree=2):
        num = self._random_poly(rng, degree)
        den = self._random_poly(rng, degree)
        while den.is_zero():
            den = self._random_poly(rng, degree)
        return self._reduce(num, den)

    def random_poly_element(self, rng, degree=2):
        return self.from_polys(self._random_poly(rng, degree))

    def _random_poly(self, rng, degree):
        poly = FpPoly(self.p, self.nvars)
        for exps in itertools.product(range(degree + 1), repeat=self.nvars):
            if sum(exps) > degree:
                continue
            c = rng.randrange(self.p)
            if c:
                poly.coeffs[exps] = c
        return poly

    def numerator_den(self, elem):
        return elem.payload

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and other.p == self.p
            and other.vars == self.vars
        )

    def __hash__(self):
        return hash(("rational", self.p, self.vars))

    def __str__(self):
        return f"F_{self.p}({','.join(self.vars)})"

    def to_json(self):
        return {"kind": "rational_function", "p": self.p, "vars": list(self.vars)}


class SimpleExtension(Field):
    """base(gen) with gen a root of a monic minimal polynomial over base.

    Payloads are tuples of base elements (c_0..c_{d-1}) representing
    c_0 + c_1*gen + ... + c_{d-1}*gen^{d-1}.
    """

    kind = "simple_extension"

    def __init__(self, base, gen_name, minpoly_coeffs, ext_kind, _trusted=False):
        if not isinstance(base, Field):
            raise UnsupportedParameters("base must be a field descriptor")
        depth = 1
        b = base
        while isinstance(b, SimpleExtension):
            depth += 1
            b = b.base
        if not isinstance(b, (RationalFunctionField, FiniteField, PrimeField)):
            raise UnsupportedParameters("unsupported tower base")
        if depth > _TOWER_DEPTH_CAP:
            raise UnsupportedParameters(
                f"tower depth {depth} exceeds the cap of {_TOWER_DEPTH_CAP}"
            )
        self.base = base
        self.p = base.p
        self.gen_name = gen_name
        coeffs = tuple(minpoly_coeffs)
        if len(coeffs) < 1:
            raise UnsupportedParameters("minimal polynomial must have degree >= 1")
        self.degree = len(coeffs)
        if self.degree > self.p ** 4:
            raise UnsupportedParameters("extension degree exceeds the p^4 cap")
        for c in coeffs:
            if not isinstance(c, FieldElement) or c.field != base:
                raise UnsupportedParameters("minimal polynomial coefficients must lie in base")
        self.minpoly = coeffs  # c_0..c_{d-1}; leading coefficient 1 implicit
        if ext_kind not in ("separable", "purely_inseparable"):
            raise UnsupportedParameters(f"unknown extension kind {ext_kind!r}")
        self.ext_kind = ext_kind
        if not _trusted:
            self._validate()
        self._gen_p = None  # cached gen^p payload for the Frobenius fast path

    def _minpoly_list(self):
        return list(self.minpoly) + [self.base.one()]

    def _validate(self):
        base, d, p = self.base, self.degree, self.p
        if self.ext_kind == "purely_inseparable":
            r = 0
            dd = d
            while dd % p == 0:
                dd //= p
                r += 1
            if dd != 1 or r == 0:
                raise UnsupportedParameters(
                    "purely inseparable degree must be a power of p"
                )
            if any(not c.is_zero() for c in self.minpoly[1:]):
                raise UnsupportedParameters(
                    "purely inseparable minimal polynomial must be gen^(p^r) - c"
                )
            c = -self.minpoly[0]
            probe = c
            for _ in range(r):
                root = probe.pth_root()
                if root is None:
                    return  # no p-th root at some level: genuinely inseparable
                probe = root
            raise UnsupportedParameters(
                "constant of a purely inseparable extension is a p^r-th power in base"
            )
        # separable: check irreducibility where we can decide it
        if base.is_finite():
            poly = self._minpoly_list()
            order = base.order if isinstance(base, FiniteField) else base.p
            if not unipoly.is_irreducible(poly, base, order):
                raise UnsupportedParameters("minimal polynomial is reducible over base")
            return
        if d == p and self._is_artin_schreier_shape():
            c = -self.minpoly[0]
            try:
                sol = artin_schreier_solve(c)
            except Undecided:
                return
            if sol is not None:
                raise UnsupportedParameters(
                    "Artin-Schreier minimal polynomial splits over base"
                )
            return
        if d == 2:
            a, b = self.minpoly[1], self.minpoly[0]
            if p == 2:
                if a.is_zero():
                    if (-b).pth_root() is not None:
                        raise UnsupportedParameters("degree-2 minimal polynomial has a root")
                else:
                    try:
                        sol = artin_schreier_solve(b / (a * a))
                    except Undecided:
                        return
                    if sol is not None:
                        raise UnsupportedParameters("degree-2 minimal polynomial has a root")
        # other shapes over infinite bases are accepted as stated

    def _is_artin_schreier_shape(self):
        if self.degree != self.p:
            return False
        if not (self.minpoly[1] + self.base.one()).is_zero():
            return False
        return all(self.minpoly[i].is_zero() for i in range(2, self.degree))

    def generator(self):
        payload = tuple(
            self.base.one() if i == 1 else self.base.zero() for i in range(self.degree)
        )
        if self.degree == 1:
            payload = (-self.minpoly[0],)
        return FieldElement(self, payload)

    def from_base(self, elem):
        if elem.field != self.base:
            raise DescriptorMismatch("element does not lie in the tower base")
        payload = (elem,) + tuple(self.base.zero() for _ in range(self.degree - 1))
        return FieldElement(self, payload)

    def coords(self, elem):
        return elem.payload

    def zero_payload(self):
        return tuple(self.base.zero() for _ in range(self.degree))

    def one_payload(self):
        return (self.base.one(),) + tuple(self.base.zero() for _ in range(self.degree - 1))

    def from_int_payload(self, n):
        return (self.base.from_int(n),) + tuple(
            self.base.zero() for _ in range(self.degree - 1)
        )

    def add_p(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg_p(self, a):
        return tuple(-x for x in a)

    def _to_list(self, a):
        return unipoly.trim(list(a))

    def _from_list(self, lst):
        lst = list(lst) + [self.base.zero()] * (self.degree - len(lst))
        return tuple(lst[: self.degree])

    def mul_p(self, a, b):
        prod = unipoly.mul(self._to_list(a), self._to_list(b), self.base)
        rem = unipoly.mod(prod, self._minpoly_list(), self.base)
        return self._from_list(rem)

    def inv_p(self, a):
        d, u, _ = unipoly.xgcd(self._to_list(a), self._minpoly_list(), self.base)
        if unipoly.deg(d) != 0:
            raise DivisionByZero(
                "element shares a factor with the minimal polynomial"
            )
        u = unipoly.scale(u, d[0].inv())
        return self._from_list(u)

    def frobenius_p(self, a, e):
        if e == 0:
            return a
        if self._gen_p is None:
            gen = [self.base.zero(), self.base.one()]
            self._gen_p = unipoly.powmod(gen, self.p, self._minpoly_list(), self.base)
        out = a
        for _ in range(e):
            coeffs = [c.frobenius() for c in self._to_list(out)]
            acc = []
            power = [self.base.one()]
            for c in coeffs:
                acc = unipoly.add(acc, unipoly.scale(power, c))
                power = unipoly.mod(
                    unipoly.mul(power, self._gen_p, self.base),
                    self._minpoly_list(),
                    self.base,
                )
            out = self._from_list(acc)
        return out

    def pth_root_p(self, a):
        # solve a = sum_i w_i * (gen^p)^i with w_i in base, then take roots
        d = self.degree
        cols = []
        gen_p = FieldElement(self, self.frobenius_p(self.generator().payload, 1))
        acc = self.one()
        for _ in range(d):
            cols.append(acc.payload)
            acc = acc * gen_p
        matrix = [[cols[j][i] for j in range(d)] for i in range(d)]
        sol = field_solve(self.base, matrix, list(a))
        if sol is None:
            return None
        roots = []
        for w in sol:
            r = w.pth_root()
            if r is None:
                return None
            roots.append(r)
        candidate = self._from_list(roots)
        if self.frobenius_p(candidate, 1) != a:
            return None
        return candidate

    def payload_key(self, a):
        return ("t",) + tuple(c.sort_key() for c in a)

    def format_payload(self, a):
        terms = []
        for i in range(self.degree - 1, -1, -1):
            c = a[i]
            if c.is_zero():
                continue
            var = "" if i == 0 else (self.gen_name if i == 1 else f"{self.gen_name}^{i}")
            cs = str(c)
            if i == 0:
                terms.append(cs)
            elif c.is_one():
                terms.append(var)
            else:
                if "+" in cs or "-" in cs or "/" in cs:
                    cs = f"({cs})"
                terms.append(f"{cs}*{var}")
        return "+".join(terms) if terms else "0"

    def random_payload(self, rng, degree=2):
        return tuple(
            self.base.random_element(rng, degree) for _ in range(self.degree)
        )

    def is_finite(self):
        return self.base.is_finite()

    @property
    def order(self):
        return self.base.order ** self.degree

    def iter_elements(self):
        for combo in itertools.product(list(self.base.iter_elements()), repeat=self.degree):
            yield FieldElement(self, tuple(combo))

    def __eq__(self, other):
        return (
            isinstance(other, SimpleExtension)
            and other.base == self.base
            and other.gen_name == self.gen_name
            and other.minpoly == self.minpoly
            and other.ext_kind == self.ext_kind
        )

    def __hash__(self):
        return hash(
            (
                "ext",
                self.base,
                self.gen_name,
                tuple(c.sort_key() for c in self.minpoly),
                self.ext_kind,
            )
        )

    def __str__(self):
        return f"{self.base}({self.gen_name})"

    def to_json(self):
        terms = []
        for i in range(self.degree, -1, -1):
            if i == self.degree:
                terms.append(
                    self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                )
                continue
            c = self.minpoly[i]
            if c.is_zero():
                continue
            cs = str(c)
            if i == 0:
                terms.append(cs if "+" not in cs and "/" not in cs else f"({cs})")
            else:
                var = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                if c.is_one():
                    terms.append(var)
                else:
                    if "+" in cs or "-" in cs or "/" in cs:
                        cs = f"({cs})"
                    terms.append(f"{cs}*{var}")
        return {
            "kind": "simple_extension",
            "base": self.base.to_json(),
            "generator": self.gen_name,
            "min_poly": "+".join(terms),
            "ext_kind": self.ext_kind,
        }


# -- linear algebra over an arbitrary exact field ----------------------------


def field_solve(field, matrix, rhs):
    """One solution of matrix*x = rhs over `field`, or None; frees -> zero."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if not rows[i][n].is_zero():
            return None
    solution = [field.zero() for _ in range(n)]
    for i, c in enumerate(pivots):
        solution[c] = rows[i][n]
    # rows below pivots may still witness inconsistency when r == m
    for i in range(m):
        acc = field.zero()
        for j in range(n):
            acc = acc + matrix[i][j] * solution[j]
        if acc != rhs[i]:
            return None
    return solution


def field_rank(field, matrix):
    m = len(matrix)
    if not m:
        return 0
    n = len(matrix[0])
    rows = [list(row) for row in matrix]
    rank = 0
    for c in range(n):
        pivot = None
        for i in range(rank, m):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][c].inv()
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(rank + 1, m):
            if not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def field_det(field, matrix):
    n = len(matrix)
    rows = [list(row) for row in matrix]
    det = field.one()
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            return field.zero()
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inv()
        rows[c] = [v * inv for v in rows[c]]
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[c])]
    return det


def fp_solve(p, matrix, rhs):
    """Solve matrix*x = rhs over F_p (ints); returns list or None."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows = [[v % p for v in row] + [rhs[i] % p] for i, row in enumerate(matrix)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if rows[i][n]:
            return None
    solution = [0] * n
    for i, c in enumerate(pivots):
        solution[c] = rows[i][n]
    return solution


# -- spec operations ----------------------------------------------------------


def field_arith(op, a, b):
    """Dispatcher for {add|sub|mul|div|pow} on elements (b may be an int)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if isinstance(b, FieldElement) and b.is_zero():
            raise DivisionByZero("division by zero")
        if isinstance(b, int) and a.field.from_int(b).is_zero():
            raise DivisionByZero("division by zero")
        return a / b
    if op == "pow":
        if not isinstance(b, int):
            raise BadParameters("pow exponent must be an integer")
        return a ** b
    raise BadParameters(f"unknown arithmetic op {op!r}")


def frobenius(a, iterations=1):
    return a.frobenius(iterations)


def wp(a):
    """The additive map x -> x^p - x."""
    return a.frobenius() - a


def _as_solve_finite(field, c):
    if isinstance(field, PrimeField):
        return field.zero() if c.is_zero() else None
    k = field.k
    basis = [FieldElement(field, field.coeff_payload([1 if j == i else 0 for j in range(k)])) for i in range(k)]
    cols = [wp(b) for b in basis]
    matrix = [[field.coeffs_of(cols[j].payload)[i] for j in range(k)] for i in range(k)]
    rhs = list(field.coeffs_of(c.payload))
    sol = fp_solve(field.p, matrix, rhs)
    if sol is None:
        return None
    acc = field.zero()
    for coeff, b in zip(sol, basis):
        acc = acc + b * coeff
    return acc


def _as_solve_poly_multivar(field, c):
    """Peel leading terms of a polynomial c; None when an exponent obstructs."""
    num, den = c.payload
    assert den.is_constant()
    num = num.scale(pow(den.constant_value(), -1, field.p))
    p = field.p
    acc = FpPoly(p, field.nvars)
    while not num.is_constant():
        lm = num.leading_monomial()
        if any(e % p for e in lm):
            return None
        coeff = num.coeffs[lm]  # p-th root in F_p is the residue itself
        root_m = tuple(e // p for e in lm)
        term = FpPoly(p, field.nvars, {root_m: coeff})
        acc = acc + term
        num = num - (term.power_p() - term)
    if num.constant_value() != 0:
        return None
    return field.from_polys(acc)


def _as_solve_rational_univar(field, c):
    """Full decision over F_p(x) by pole clearing plus degree descent."""
    p = field.p
    fp = PrimeField(p)
    import random as _random

    rng = _random.Random(0x5EED)
    num, den = c.payload

    def to_unilist(poly):
        out = [fp.from_int(0)] * (poly.degree_in(0) + 1)
        for e, v in poly.coeffs.items():
            out[e[0]] = fp.from_int(v)
        return unipoly.trim(out)

    def from_unilist(lst):
        return FpPoly(p, 1, {(i,): int(c0.payload) for i, c0 in enumerate(lst) if not c0.is_zero()})

    acc = field.zero()
    current = c
    # clear finite poles one irreducible at a time
    while True:
        num, den = current.payload
        if den.is_constant():
            break
        _, factors = unipoly.factor(to_unilist(den), fp, p, rng)
        q_list, e = None, 0
        for fac, mult in factors:
            if mult > e:
                q_list, e = fac, mult
        if e % p:
            return None
        q_poly = from_unilist(q_list)
        # residue of current against q^e
        cofactor = den.divide_exact(q_poly ** e)
        # a = num * cofactor^{-1} mod q
        inv = unipoly.xgcd(to_unilist(cofactor), q_list, fp)
        assert unipoly.deg(inv[0]) == 0
        inv_cof = unipoly.scale(inv[1], inv[0][0].inv())
        a_list = unipoly.mod(
            unipoly.mul(to_unilist(num), inv_cof, fp), q_list, fp
        )
        # b with b^p = a mod q: p-th root in F_p[x]/(q)
        d = unipoly.deg(q_list)
        order = p ** d
        b_list = unipoly.powmod(a_list, order // p, q_list, fp)
        b_poly = from_unilist(b_list)
        step = field.from_polys(b_poly, q_poly ** (e // p))
        current = current - wp(step)
        acc = acc + step
        new_den = current.payload[1]
        if new_den.degree_in(0) >= den.degree_in(0) and new_den == den:
            raise AssertionError("pole clearing failed to make progress")
    # polynomial part
    poly_sol = _as_solve_poly_multivar(field, current)
    if poly_sol is None:
        return None
    return acc + poly_sol


def artin_schreier_solve(c):
    """Some x with x^p - x = c, or None when c is not in the image of x^p - x.

    Raises Undecided for descriptor shapes outside the decidable fragment
    (towers, multivariate rational functions with true denominators).
    """
    field = c.field
    if isinstance(field, PrimeField):
        return _as_solve_finite(field, c)
    if isinstance(field, FiniteField):
        return _as_solve_finite(field, c)
    if isinstance(field, RationalFunctionField):
        num, den = c.payload
        if field.nvars == 1:
            return _as_solve_rational_univar(field, c)
        if den.is_constant():
            return _as_solve_poly_multivar(field, c)
        raise Undecided(
            "Artin-Schreier membership for multivariate fractions is not decided"
        )
    raise Undecided(f"Artin-Schreier solving unsupported over {field}")


def _fp_coordinate_rows(elems):
    """Rows of F_p-coordinates (shared basis) for a list of field elements."""
    field = elems[0].field
    p = field.p
    if isinstance(field, PrimeField):
        return [[e.payload] for e in elems]
    if isinstance(field, FiniteField):
        return [list(field.coeffs_of(e.payload)) for e in elems]
    if isinstance(field, RationalFunctionField):
        dens = [e.payload[1] for e in elems]
        common = FpPoly.const(p, field.nvars, 1)
        for d in dens:
            g = poly_gcd(common, d)
            common = common * d.divide_exact(g)
        nums = [e.payload[0] * common.divide_exact(e.payload[1]) for e in elems]
        monomials = sorted({m for nm in nums for m in nm.coeffs})
        return [[nm.coeffs.get(m, 0) for m in monomials] for nm in nums]
    if isinstance(field, SimpleExtension):
        rows_per_pos = []
        for pos in range(field.degree):
            col = [e.payload[pos] for e in elems]
            rows_per_pos.append(_fp_coordinate_rows_allow_zero(col, field.base))
        return [sum((rows_per_pos[pos][i] for pos in range(field.degree)), []) for i in range(len(elems))]
    raise Undecided(f"no F_p coordinate model for {field}")


def _fp_coordinate_rows_allow_zero(elems, field):
    if all(e.is_zero() for e in elems):
        return [[0] for _ in elems]
    return _fp_coordinate_rows([FieldElement(field, e.payload) for e in elems])


def fp_independent(elems):
    """True when no nontrivial F_p-linear combination of elems vanishes."""
    if not elems:
        raise BadParameters("fp_independent requires a nonempty list")
    field = elems[0].field
    for e in elems:
        if e.field != field:
            raise DescriptorMismatch("elements lie in different descriptors")
    p = field.p
    n = len(elems)
    if p ** n <= 10 ** 6:
        zero = field.zero()
        for combo in itertools.product(range(p), repeat=n):
            if not any(combo):
                continue
            acc = zero
            for c, e in zip(combo, elems):
                if c:
                    acc = acc + e * c
            if acc.is_zero():
                return False
        return True
    rows = _fp_coordinate_rows(elems)
    width = len(rows[0])
    matrix = [[rows[i][j] for j in range(width)] for i in range(n)]
    # rank over F_p equals n iff independent
    rank = 0
    m = len(matrix)
    cols = width
    r = 0
    for cidx in range(cols):
        pivot = None
        for i in range(r, m):
            if matrix[i][cidx] % p:
                pivot = i
                break
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = pow(matrix[r][cidx] % p, -1, p)
        matrix[r] = [(v * inv) % p for v in matrix[r]]
        for i in range(m):
            if i != r and matrix[i][cidx] % p:
                f = matrix[i][cidx]
                matrix[i] = [(a - f * b) % p for a, b in zip(matrix[i], matrix[r])]
        r += 1
    rank = r
    return rank == n


def multiplication_matrix(tower, v):
    """Matrix of multiplication by v on the power basis, over tower.base."""
    if not isinstance(tower, SimpleExtension):
        raise WrongDescriptor("norms are defined for simple extensions")
    d = tower.degree
    cols = []
    basis_elem = tower.one()
    gen = tower.generator()
    for i in range(d):
        prod = basis_elem * v
        cols.append(list(prod.payload))
        basis_elem = basis_elem * gen
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def ext_norm(tower, v):
    """Norm to the immediate base: det of the multiplication-by-v matrix."""
    if v.field != tower:
        raise DescriptorMismatch("element does not lie in the given tower")
    return field_det(tower.base, multiplication_matrix(tower, v))


def minimal_polynomial(tower, z):
    """Monic minimal polynomial of z over tower.base (coefficient list)."""
    if z.field != tower:
        raise DescriptorMismatch("element does not lie in the given tower")
    d = tower.degree
    base = tower.base
    powers = [tower.one()]
    for _ in range(d):
        powers.append(powers[-1] * z)
    for k in range(1, d + 1):
        matrix = [[powers[j].payload[i] for j in range(k)] for i in range(d)]
        rhs = [(-powers[k]).payload[i] for i in range(d)]
        sol = field_solve(base, matrix, rhs)
        if sol is not None:
            return sol + [base.one()]
    raise AssertionError("no minimal polynomial found within the tower degree")


def generates_extension(tower, z):
    """True iff z has full degree over tower.base."""
    return len(minimal_polynomial(tower, z)) - 1 == tower.degree


def field_from_json(obj):
    kind = obj["kind"]
    if kind == "prime":
        return PrimeField(obj["p"])
    if kind == "finite":
        p, k = obj["p"], obj["k"]
        modulus = obj.get("modulus")
        if modulus is None:
            return FiniteField(p, k)
        from . import parsing

        coeffs = parsing.parse_prime_poly(p, modulus, "l")
        if len(coeffs) != k + 1 or coeffs[-1] != 1:
            raise UnsupportedParameters("modulus must be monic of degree k")
        return FiniteField(p, k, coeffs[:-1])
    if kind == "rational_function":
        return RationalFunctionField(obj["p"], obj["vars"])
    if kind == "simple_extension":
        from . import parsing

        base = field_from_json(obj["base"])
        gen = obj["generator"]
        coeffs = parsing.parse_extension_poly(base, gen, obj["min_poly"])
        return SimpleExtension(base, gen, coeffs, obj.get("ext_kind", "separable"))
    raise UnsupportedParameters(f"unknown descriptor kind {kind!r}")
