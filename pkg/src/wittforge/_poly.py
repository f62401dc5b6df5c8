"""Sparse multivariate polynomial arithmetic over the prime field F_p.

Polynomials are dicts mapping exponent tuples to nonzero residues mod p.
Monomials are compared in graded lexicographic order, which fixes leading
terms, monic normalization, and the canonical printing order used by the
field layer. GCDs use the primitive PRS in a chosen main variable, which
is entirely adequate at the degrees this library works with.
"""

from __future__ import annotations


def _grlex_key(exps):
    return (sum(exps), exps)


class FpPoly:
    """Polynomial in ``nvars`` variables with coefficients mod the prime p."""

    __slots__ = ("p", "nvars", "coeffs")

    def __init__(self, p, nvars, coeffs=None):
        self.p = p
        self.nvars = nvars
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                c %= p
                if c:
                    self.coeffs[tuple(e)] = c

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, p, nvars, c):
        poly = cls(p, nvars)
        c %= p
        if c:
            poly.coeffs[(0,) * nvars] = c
        return poly

    @classmethod
    def var(cls, p, nvars, i, exp=1):
        e = [0] * nvars
        e[i] = exp
        return cls(p, nvars, {tuple(e): 1})

    def copy(self):
        poly = FpPoly(self.p, self.nvars)
        poly.coeffs = dict(self.coeffs)
        return poly

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return all(all(x == 0 for x in e) for e in self.coeffs)

    def constant_value(self):
        return self.coeffs.get((0,) * self.nvars, 0)

    def __eq__(self, other):
        return (
            isinstance(other, FpPoly)
            and self.p == other.p
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.nvars, frozenset(self.coeffs.items())))

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        out = dict(self.coeffs)
        p = self.p
        for e, c in other.coeffs.items():
            r = (out.get(e, 0) + c) % p
            if r:
                out[e] = r
            elif e in out:
                del out[e]
        res = FpPoly(p, self.nvars)
        res.coeffs = out
        return res

    def __neg__(self):
        p = self.p
        res = FpPoly(p, self.nvars)
        res.coeffs = {e: p - c for e, c in self.coeffs.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        p = self.p
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                r = (out.get(e, 0) + c1 * c2) % p
                if r:
                    out[e] = r
                elif e in out:
                    del out[e]
        res = FpPoly(p, self.nvars)
        res.coeffs = out
        return res

    def scale(self, c):
        c %= self.p
        res = FpPoly(self.p, self.nvars)
        if c:
            res.coeffs = {e: (v * c) % self.p for e, v in self.coeffs.items()}
        return res

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent on a polynomial")
        p = self.p
        # a^p = a with exponents scaled by p over F_p, so peel off the
        # base-p digits of n cheaply before square-and-multiply.
        result = FpPoly.const(p, self.nvars, 1)
        base = self
        while n:
            if n % p == 0:
                base = base.power_p()
                n //= p
                continue
            result = result * base
            n -= 1
        return result

    def power_p(self):
        """Frobenius: multiply every exponent by p (coefficients are fixed)."""
        res = FpPoly(self.p, self.nvars)
        res.coeffs = {
            tuple(x * self.p for x in e): c for e, c in self.coeffs.items()
        }
        return res

    # -- order, leading data ----------------------------------------------

    def leading_monomial(self):
        return max(self.coeffs, key=_grlex_key)

    def leading_coeff(self):
        return self.coeffs[self.leading_monomial()]

    def total_degree(self):
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def degree_in(self, v):
        if not self.coeffs:
            return -1
        return max(e[v] for e in self.coeffs)

    def monic(self):
        """Scale so the graded-lex leading coefficient is 1."""
        if self.is_zero():
            return self
        lc = self.leading_coeff()
        return self.scale(pow(lc, -1, self.p))

    # -- division ---------------------------------------------------------

    def divide_exact(self, other):
        """Exact quotient self/other; raises ValueError if not divisible."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return FpPoly(self.p, self.nvars)
        p = self.p
        rem = self.copy()
        quot = FpPoly(p, self.nvars)
        lm = other.leading_monomial()
        lc_inv = pow(other.coeffs[lm], -1, p)
        while not rem.is_zero():
            rlm = rem.leading_monomial()
            diff = tuple(a - b for a, b in zip(rlm, lm))
            if any(d < 0 for d in diff):
                raise ValueError("polynomial division is not exact")
            c = (rem.coeffs[rlm] * lc_inv) % p
            term = FpPoly(p, self.nvars, {diff: c})
            quot = quot + term
            rem = rem - term * other
        return quot

    def divides(self, other):
        try:
            other.divide_exact(self)
            return True
        except ValueError:
            return False

    # -- univariate view in a main variable --------------------------------

    def coeffs_in(self, v):
        """List of coefficient polynomials (v-free) indexed by v-degree."""
        d = self.degree_in(v)
        out = [FpPoly(self.p, self.nvars) for _ in range(d + 1)]
        for e, c in self.coeffs.items():
            e2 = list(e)
            k = e2[v]
            e2[v] = 0
            out[k].coeffs[tuple(e2)] = c
        return out

    @staticmethod
    def from_coeffs_in(p, nvars, v, coeff_list):
        res = FpPoly(p, nvars)
        for k, poly in enumerate(coeff_list):
            for e, c in poly.coeffs.items():
                e2 = list(e)
                e2[v] += k
                r = (res.coeffs.get(tuple(e2), 0) + c) % p
                if r:
                    res.coeffs[tuple(e2)] = r
                elif tuple(e2) in res.coeffs:
                    del res.coeffs[tuple(e2)]
        return res

    def deriv(self, v):
        res = FpPoly(self.p, self.nvars)
        for e, c in self.coeffs.items():
            if e[v]:
                r = (c * e[v]) % self.p
                if r:
                    e2 = list(e)
                    e2[v] -= 1
                    res.coeffs[tuple(e2)] = r
        return res

    # -- p-th powers -------------------------------------------------------

    def is_pth_power(self):
        return all(all(x % self.p == 0 for x in e) for e in self.coeffs)

    def pth_root(self):
        """Inverse of power_p; valid only when is_pth_power() holds."""
        if not self.is_pth_power():
            raise ValueError("not a p-th power")
        res = FpPoly(self.p, self.nvars)
        res.coeffs = {
            tuple(x // self.p for x in e): c for e, c in self.coeffs.items()
        }
        return res

    # -- evaluation ---------------------------------------------------------

    def eval_in_field(self, field, values):
        """Evaluate at field elements, via the field's own arithmetic."""
        total = field.zero()
        pows = [{} for _ in range(self.nvars)]

        def power(i, k):
            cache = pows[i]
            if k not in cache:
                cache[k] = values[i] ** k
            return cache[k]

        for e, c in self.coeffs.items():
            term = field.from_int(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def __repr__(self):
        return f"FpPoly(p={self.p}, {self.coeffs!r})"


# -- gcd machinery -----------------------------------------------------------


def _poly_content_in(f, v):
    """GCD of the v-coefficients of f (a v-free polynomial)."""
    coeffs = [c for c in f.coeffs_in(v) if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    return g.monic()


def _prem(f, g, v):
    """Pseudo-remainder of f by g with respect to variable v."""
    df, dg = f.degree_in(v), g.degree_in(v)
    if df < dg:
        return f
    gc = g.coeffs_in(v)
    lcg = gc[dg]
    rem = f
    n = df - dg + 1
    while not rem.is_zero() and rem.degree_in(v) >= dg:
        dr = rem.degree_in(v)
        rc = rem.coeffs_in(v)[dr]
        shift = FpPoly.var(f.p, f.nvars, v, dr - dg)
        rem = lcg * rem - rc * shift * g
        n -= 1
    if n > 0:
        rem = rem * lcg ** n
    return rem


def poly_gcd(f, g):
    """Monic GCD in F_p[x_1..x_n] via the primitive PRS."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return FpPoly.const(f.p, f.nvars, 1)
    # main variable: one in which both have positive degree if possible
    v = None
    for i in range(f.nvars):
        if f.degree_in(i) > 0 and g.degree_in(i) > 0:
            v = i
            break
    if v is None:
        # no shared variable: gcd divides both contents in any variable
        for i in range(f.nvars):
            if f.degree_in(i) > 0:
                return poly_gcd(_poly_content_in(f, i), g)
        return poly_gcd(f, _poly_content_in(g, 0))

    cf = _poly_content_in(f, v)
    cg = _poly_content_in(g, v)
    c = poly_gcd(cf, cg)
    fp = f.divide_exact(cf)
    gp = g.divide_exact(cg)
    if fp.degree_in(v) < gp.degree_in(v):
        fp, gp = gp, fp
    while not gp.is_zero():
        rem = _prem(fp, gp, v)
        fp = gp
        if rem.is_zero():
            gp = rem
        else:
            gp = rem.divide_exact(_poly_content_in(rem, v))
    if fp.degree_in(v) > 0:
        fp = fp.divide_exact(_poly_content_in(fp, v))
    else:
        fp = FpPoly.const(f.p, f.nvars, 1)
    return (c * fp).monic()


def squarefree_decomposition(f):
    """Write f (monic) as a product of squarefree pairwise-coprime powers.

    Returns a list of (g, e) with f = lc * prod g^e; handles the
    characteristic-p collapse where a factor's partials all vanish.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    lc = f.leading_coeff()
    f = f.monic()
    if f.is_constant():
        return lc, []
    parts = []
    derivs = [f.deriv(i) for i in range(f.nvars)]
    nonzero = [d for d in derivs if not d.is_zero()]
    if not nonzero:
        root = f.pth_root()
        lc2, sub = squarefree_decomposition(root)
        return lc, [(g, e * f.p) for g, e in sub]
    c = f
    for d in nonzero:
        c = poly_gcd(c, d)
        if c.is_constant():
            break
    w = f.divide_exact(c)
    i = 1
    while not w.is_constant():
        y = poly_gcd(w, c)
        z = w.divide_exact(y)
        if not z.is_constant():
            parts.append((z.monic(), i))
        w = y
        if not y.is_constant():
            c = c.divide_exact(y)
        i += 1
    if not c.is_constant():
        lc2, sub = squarefree_decomposition(c)
        merged = dict((g, e) for g, e in parts)
        for g, e in sub:
            # multiplicities of the p-power part add to any matching factor
            found = None
            for h in merged:
                if h == g:
                    found = h
                    break
            if found is not None:
                merged[found] += e * f.p
            else:
                merged[g] = e * f.p
        parts = sorted(merged.items(), key=lambda t: _grlex_key(t[0].leading_monomial()))
    return lc, parts


def square_part(f):
    """Split f = u * h**2 with h of maximal degree; returns (u, h)."""
    lc, parts = squarefree_decomposition(f)
    p = f.p
    u = FpPoly.const(p, f.nvars, lc)
    h = FpPoly.const(p, f.nvars, 1)
    for g, e in parts:
        if e // 2:
            h = h * g ** (e // 2)
        if e % 2:
            u = u * g
    return u, h
