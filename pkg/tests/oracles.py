"""Independent reference implementations used only by the tests.

Nothing here calls the package's arithmetic: primality is trial division,
valuations are repeated division, square roots mod p^k are found digit by
digit, and archimedean values come from numeric embeddings in mpmath.
"""

from fractions import Fraction
from math import gcd

import mpmath


def is_prime_trial(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def vp_int(n, p):
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(x, p):
    x = Fraction(x)
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def roots_mod(a, m):
    return [r for r in range(m) if (r * r - a) % m == 0]


def padic_root(d, p, k, seed):
    """sqrt(d) mod p^k lifting one digit at a time by exhaustive search.

    For p = 2 the seed is the residue mod 4; r_j mod 2^j is kept with
    r_j^2 = d mod 2^(j+1), and exactly one of r_j, r_j + 2^j lifts.
    """
    if p == 2:
        r, j = seed % 4, 2
        assert (r * r - d) % 8 == 0
        while j < k:
            r = next(c for c in (r, r + 2**j) if (c * c - d) % 2 ** (j + 2) == 0)
            j += 1
        return r % 2**k
    r, m = seed % p, p
    while m < p**k:
        nm = m * p
        r = next(c for c in (r + t * m for t in range(p)) if (c * c - d) % nm == 0)
        m = nm
    return r


def quad_val(a, b, d, kind, p, seed=None):
    """Normalized valuation of a + b sqrt(d) at a place over p, via independent formulas."""
    a, b = Fraction(a), Fraction(b)
    if kind == "split":
        # clear denominators, substitute a p-adic root of enough precision
        den = a.denominator * b.denominator
        A, B = int(a * den), int(b * den)
        n = A * A - d * B * B
        k = vp_int(n, p) + 3 if n else 60
        r = padic_root(d, p, k, seed)
        x = (A + B * r) % p**k
        assert x, "precision too small"
        return Fraction(vp_int(x, p) - vp_int(den, p))
    if p != 2 and kind == "inert":
        return Fraction(min(vp(a, p) if a else 10**9, vp(b, p) if b else 10**9))
    if p != 2 and kind == "ramified":
        return Fraction(min(2 * vp(a, p) if a else 10**9, 2 * vp(b, p) + 1 if b else 10**9), 2)
    # p = 2, non-split: the unique extension of v_2, read off the norm
    return Fraction(vp(a * a - d * b * b, 2), 2)


def embed(z, d, kind):
    """Numeric image (200-bit) of a rational or (a, b) pair under the archimedean embedding ``kind``."""
    with mpmath.workprec(200):
        return _embed(z, d, kind)


def _embed(z, d, kind):
    if isinstance(z, tuple):
        a, b = z
        if kind == "real+":
            return mpmath.mpf(a.numerator) / a.denominator + mpmath.mpf(b.numerator) / b.denominator * mpmath.sqrt(d)
        if kind == "real-":
            return mpmath.mpf(a.numerator) / a.denominator - mpmath.mpf(b.numerator) / b.denominator * mpmath.sqrt(d)
        return (mpmath.mpf(a.numerator) / a.denominator
                + mpmath.mpf(b.numerator) / b.denominator * mpmath.sqrt(mpmath.mpf(-d)) * 1j)
    z = Fraction(z)
    return mpmath.mpf(z.numerator) / z.denominator


def eval_terms(terms, values):
    """Evaluate a {exponent: coeff} dict on numeric values (mpmath)."""
    total = 0
    for e, c in terms.items():
        t = mpmath.mpf(c.numerator) / c.denominator
        for v, k in zip(values, e):
            if k:
                t *= v**k
        total += t
    return total


def eval_terms_exact(terms, values):
    total = Fraction(0)
    for e, c in terms.items():
        t = Fraction(c)
        for v, k in zip(values, e):
            if k:
                t *= Fraction(v) ** k
        total += t
    return total


def arch_local_height(D, values):
    """log max_j min_k |s_j|/(|s_D||t_k|) on numeric coordinates; +inf when s_D vanishes."""
    with mpmath.workprec(200):
        sD = abs(eval_terms(D.s_D.terms, values))
        if sD == 0:
            return mpmath.inf
        ts = [abs(eval_terms(t.terms, values)) for t in D.M_sections]
        tmax = max(ts)
        smax = max(abs(eval_terms(s.terms, values)) for s in D.L_sections)
        return mpmath.log(smax / (sD * tmax))


def padic_local_height(D, values, p):
    """Exact lambda at a p-adic place of Q for rational coordinates: log p times a rational."""
    def v(poly):
        z = eval_terms_exact(poly.terms, values)
        return None if z == 0 else vp(z, p)

    vD = v(D.s_D)
    if vD is None:
        return None
    vt = min(x for x in (v(t) for t in D.M_sections) if x is not None)
    vs = min(x for x in (v(s) for s in D.L_sections) if x is not None)
    return -(vs - vD - vt)  # coefficient of log p


def max_coprime(coords):
    """max |n_i| over the coprime integer representative of a rational point."""
    den = 1
    for c in coords:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in coords]
    g = 0
    for n in ints:
        g = gcd(g, n)
    return max(abs(n) // g for n in ints)
