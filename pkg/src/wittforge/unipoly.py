"""Univariate polynomial helpers over an arbitrary exact field.

Polynomials are lists of FieldElement coefficients, index = degree,
trimmed so the last entry is nonzero ([] is the zero polynomial).
These routines back extension-tower arithmetic, minimal polynomials,
irreducibility tests, and factor splitting over finite fields.
"""

from __future__ import annotations

from .errors import DivisionByZero


def trim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def deg(c):
    return len(c) - 1


def add(f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else None
        b = g[i] if i < len(g) else None
        if a is None:
            out.append(b)
        elif b is None:
            out.append(a)
        else:
            out.append(a + b)
    return trim(out)


def neg(f):
    return [-a for a in f]


def sub(f, g):
    return add(f, neg(g))


def scale(f, c):
    if c.is_zero():
        return []
    return trim([a * c for a in f])


def mul(f, g, field):
    if not f or not g:
        return []
    out = [field.zero_elem() for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if a.is_zero():
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(f, g, field):
    if not g:
        raise DivisionByZero("polynomial division by zero polynomial")
    f = list(f)
    q = [field.zero_elem() for _ in range(max(0, len(f) - len(g) + 1))]
    inv_lead = g[-1].inv()
    while len(f) >= len(g):
        c = f[-1] * inv_lead
        k = len(f) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = f[k + i] - c * b
        trim(f)
        if not f:
            break
    return trim(q), f


def mod(f, g, field):
    return divmod_poly(f, g, field)[1]


def monic(f):
    if not f:
        return f
    return scale(f, f[-1].inv())


def gcd(f, g, field):
    while g:
        f, g = g, mod(f, g, field)
    return monic(f)


def xgcd(f, g, field):
    """Returns (d, u, v) with u*f + v*g = d, d monic."""
    r0, r1 = list(f), list(g)
    s0, s1 = [field.one_elem()], []
    t0, t1 = [], [field.one_elem()]
    while r1:
        q, r = divmod_poly(r0, r1, field)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, field))
        t0, t1 = t1, sub(t0, mul(q, t1, field))
    if not r0:
        return [], s0, t0
    lc_inv = r0[-1].inv()
    return scale(r0, lc_inv), scale(s0, lc_inv), scale(t0, lc_inv)


def eval_at(f, x, field):
    acc = field.zero_elem()
    for c in reversed(f):
        acc = acc * x + c
    return acc


def powmod(f, n, modulus, field):
    result = [field.one_elem()]
    base = mod(f, modulus, field)
    while n:
        if n & 1:
            result = mod(mul(result, base, field), modulus, field)
        base = mod(mul(base, base, field), modulus, field)
        n >>= 1
    return result


def x_poly(field):
    return [field.zero_elem(), field.one_elem()]


def is_irreducible(f, field, order):
    """Rabin test: f monic over a finite field with `order` elements."""
    n = deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    x = x_poly(field)
    xq = powmod(x, order ** n, f, field)
    if trim(sub(xq, x)) != []:
        return False
    primes = set()
    k = n
    d = 2
    while d * d <= k:
        if k % d == 0:
            primes.add(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        primes.add(k)
    for ell in primes:
        xq = powmod(x, order ** (n // ell), f, field)
        if gcd(trim(sub(xq, x)), f, field) != [field.one_elem()]:
            return False
    return True


def derivative(f, field):
    out = []
    for i in range(1, len(f)):
        out.append(f[i] * field.from_int(i))
    return trim(out)


def pth_power_coeff_root(f, field):
    """For f(X) = g(X)**p, recover g; returns None when f is not of that form."""
    p = field.p
    if not f:
        return []
    if (len(f) - 1) % p != 0:
        return None
    out = []
    for i, c in enumerate(f):
        if i % p == 0:
            r = field.pth_root_elem(c)
            if r is None:
                return None
            out.append(r)
        elif not c.is_zero():
            return None
    return trim(out)


def find_factor(f, field, order, rng):
    """A monic nontrivial factor of monic f over a finite field, or None.

    None means f is irreducible. Uses squarefree/distinct-degree splitting
    plus Cantor-Zassenhaus style equal-degree splitting; `order` is the
    field size and `rng` drives the randomized stage deterministically.
    """
    n = deg(f)
    if n <= 1:
        return None
    fp = derivative(f, field)
    if not fp:
        # f = g(X)^p with recoverable coefficients
        g = pth_power_coeff_root(f, field)
        return monic(g)
    d = gcd(f, fp, field)
    if 0 < deg(d) < n:
        return d
    # f squarefree here: distinct-degree stage
    x = x_poly(field)
    h = list(x)
    for i in range(1, n // 2 + 1):
        h = powmod(h, order, f, field)
        g = gcd(trim(sub(h, x)), f, field)
        if 0 < deg(g) < n:
            if deg(g) == i:
                return g
            split = _equal_degree_split(g, i, field, order, rng)
            return split if split is not None else g
        if deg(g) == n:
            # every irreducible factor has degree i < n
            return _equal_degree_split(f, i, field, order, rng)
    return None


def _equal_degree_split(f, d, field, order, rng):
    """Splits monic squarefree f whose irreducible factors all have degree d."""
    n = deg(f)
    if n == d:
        return None
    one = [field.one_elem()]
    for _ in range(64):
        r = [field.random_element(rng) for _ in range(n)]
        r = trim(r)
        if deg(r) < 1:
            continue
        g = gcd(r, f, field)
        if 0 < deg(g) < n:
            return g
        if field.p == 2:
            # trace map over the degree-d factor fields
            t = list(r)
            acc = list(r)
            bits = (order ** d).bit_length() - 1
            for _ in range(bits - 1):
                t = powmod(t, 2, f, field)
                acc = add(acc, t)
            g = gcd(trim(acc), f, field)
        else:
            e = (order ** d - 1) // 2
            h = powmod(r, e, f, field)
            g = gcd(trim(sub(h, one)), f, field)
        if 0 < deg(g) < n:
            return monic(g)
    return None


def factor(f, field, order, rng):
    """Full monic factorization over a finite field: (lc, [(factor, mult)])."""
    lc = f[-1]
    factors = {}
    stack = [monic(f)]
    while stack:
        g = stack.pop()
        if deg(g) <= 0:
            continue
        if deg(g) == 1:
            key = tuple(g)
            factors[key] = factors.get(key, 0) + 1
            continue
        piece = find_factor(g, field, order, rng)
        if piece is None:
            key = tuple(g)
            factors[key] = factors.get(key, 0) + 1
        else:
            q, r = divmod_poly(g, piece, field)
            assert not r, "reported factor does not divide"
            stack.append(monic(piece))
            stack.append(monic(q))
    return lc, [(list(k), e) for k, e in sorted(factors.items(), key=_factor_key)]


def _factor_key(item):
    key = item[0]
    return (len(key), [c.sort_key() for c in key])
