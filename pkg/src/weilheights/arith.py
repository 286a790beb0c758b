"""Integer and rational helpers: primality, valuations, factorization, square roots mod p^k."""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import factorint

from .errors import InfiniteValuation, InvalidPlace, NotSplit, UnsupportedHensel

# Deterministic Miller-Rabin witnesses for n < 3.3e24, which covers 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
PRIME_LIMIT = 2**64


@lru_cache(maxsize=65536)
def is_prime(n):
    """Deterministic primality test for ``n < 2**64``."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= PRIME_LIMIT:
        raise InvalidPlace(f"primes >= 2^64 are not supported: {n}")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p):
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise InvalidPlace(f"not a prime: {p!r}")
    return p


def primes_up_to(n):
    return [p for p in range(2, n + 1) if is_prime(p)]


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def int_valuation(n, p):
    """v_p of a nonzero integer."""
    if n == 0:
        raise InfiniteValuation("valuation of 0")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation(x, p):
    """p-adic valuation of a nonzero rational."""
    check_prime(p)
    x = as_fraction(x)
    if x == 0:
        raise InfiniteValuation("valuation of 0")
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


@lru_cache(maxsize=4096)
def _factor_int(n):
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def factor(n):
    """Prime factorization of a nonzero integer as a sorted tuple of (p, e)."""
    n = abs(n)
    if n == 0:
        raise InfiniteValuation("cannot factor 0")
    if n == 1:
        return ()
    return _factor_int(n)


def factor_rational(x):
    """Map p -> v_p(x) for a nonzero rational, omitting zero exponents."""
    x = as_fraction(x)
    if x == 0:
        raise InfiniteValuation("cannot factor 0")
    out = dict(factor(x.numerator))
    for p, e in factor(x.denominator):
        out[p] = out.get(p, 0) - e
    return out


def prime_divisors(n):
    return {p for p, _ in factor(n)}


def support(values):
    """Primes p with |x|_p != 1 for some x in ``values``."""
    primes = set()
    for x in values:
        x = as_fraction(x)
        if x == 0:
            raise InfiniteValuation("support of 0 is undefined")
        primes |= prime_divisors(x.numerator) | prime_divisors(x.denominator)
    return primes


def lcm(a, b):
    return a // gcd(a, b) * b


def is_squarefree(n):
    return all(e == 1 for _, e in factor(n))


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_prime(a, p):
    """Both square roots of a nonzero residue ``a`` mod an odd prime, smaller first."""
    a %= p
    if legendre(a, p) != 1:
        raise NotSplit(f"{a} is not a nonzero square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        r = pow(a, (p + 1) // 4, p)
    else:
        z = 2
        while legendre(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 1, t * t % p
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return tuple(sorted((r, p - r)))


def hensel_sqrt(d, p, k, seed=None):
    """Square root of ``d`` modulo ``p**k`` lifting a mod-p root.

    ``seed`` selects the mod-p root; by default the smaller of the two.
    """
    check_prime(p)
    if k < 1:
        raise ValueError("precision exponent must be >= 1")
    if p == 2:
        raise UnsupportedHensel("2-adic square roots are not lifted by hensel_sqrt")
    if d % p == 0:
        raise UnsupportedHensel(f"{p} divides {d}")
    roots = sqrt_mod_prime(d, p)
    r = roots[0] if seed is None else seed % p
    if r not in roots:
        raise NotSplit(f"{seed} is not a square root of {d} mod {p}")
    mod = p
    for _ in range(1, k):
        mod *= p
        # Newton step; 2r is a unit since p is odd and p does not divide d.
        r = (r - (r * r - d) * pow(2 * r, -1, mod)) % mod
    return r


def sqrt_2adic(d, k, seed):
    """A 2-adic square root of ``d`` (d = 1 mod 8) correct modulo ``2**k``.

    The two roots are told apart by their residue mod 4, given as ``seed``.
    """
    if d % 8 != 1:
        raise NotSplit(f"{d} is not a 2-adic square")
    if seed % 4 not in (1, 3):
        raise ValueError("2-adic root seed must be 1 or 3 mod 4")
    # r^2 = d mod 2^j determines r only modulo 2^(j-1); lift one step further.
    r, j = 1, 3
    while j < k + 1:
        if (r * r - d) % (1 << (j + 1)):
            r += 1 << (j - 1)
        j += 1
    if r % 4 != seed % 4:
        r = -r
    return r % (1 << k)
