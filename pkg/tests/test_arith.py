from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import is_prime_trial, padic_root, roots_mod, vp
from weilheights.arith import (factor_rational, hensel_sqrt, is_prime, is_squarefree, sqrt_2adic,
                               sqrt_mod_prime, support, valuation)
from weilheights.errors import InfiniteValuation, InvalidPlace, NotSplit, UnsupportedHensel

nonzero_rationals = st.builds(Fraction, st.integers(-10**9, 10**9).filter(bool), st.integers(1, 10**9))
small_primes = st.sampled_from([p for p in range(2, 200) if is_prime_trial(p)])


def test_is_prime_matches_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if is_prime_trial(n)]


@pytest.mark.parametrize("n,expected", [(2**61 - 1, True), (2**62 + 1, False), (18446744073709551557, True),
                                        (3215031751, False), (341550071728321, False)])
def test_is_prime_large(n, expected):
    assert is_prime(n) is expected


def test_is_prime_rejects_beyond_64_bits():
    with pytest.raises(InvalidPlace):
        is_prime(2**64 + 13)


@pytest.mark.parametrize("x,p,v", [(Fraction(12, 5), 2, 2), (Fraction(12, 5), 5, -1), (Fraction(7, 9), 3, -2)])
def test_valuation_examples(x, p, v):
    assert valuation(x, p) == v


def test_valuation_errors():
    with pytest.raises(InfiniteValuation):
        valuation(0, 3)
    with pytest.raises(InvalidPlace):
        valuation(5, 4)


@given(nonzero_rationals, small_primes)
def test_valuation_oracle(x, p):
    assert valuation(x, p) == vp(x, p)


@given(nonzero_rationals, nonzero_rationals, small_primes)
def test_valuation_multiplicative(x, y, p):
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


@given(nonzero_rationals)
def test_factor_rational_reconstructs(x):
    prod = Fraction(1)
    for p, e in factor_rational(x).items():
        prod *= Fraction(p) ** e
    assert prod == abs(x)


def test_support_examples():
    assert support([Fraction(12, 5)]) == {2, 3, 5}
    assert support([1]) == set()
    assert support([Fraction(7, 9), 2]) == {2, 3, 7}
    with pytest.raises(InfiniteValuation):
        support([0])


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 97, 101, 113, 257])
def test_sqrt_mod_prime_brute_force(p):
    for a in range(1, p):
        roots = roots_mod(a, p)
        if roots:
            assert sqrt_mod_prime(a, p) == tuple(roots)
        else:
            with pytest.raises(NotSplit):
                sqrt_mod_prime(a, p)


def test_hensel_examples():
    assert hensel_sqrt(2, 7, 1) == 3
    assert hensel_sqrt(2, 7, 2) == 10
    with pytest.raises(NotSplit):
        hensel_sqrt(3, 5, 1)
    with pytest.raises(UnsupportedHensel):
        hensel_sqrt(17, 2, 3)
    with pytest.raises(UnsupportedHensel):
        hensel_sqrt(14, 7, 3)


@settings(max_examples=200)
@given(st.integers(-500, 500), st.sampled_from([3, 5, 7, 11, 13, 23]), st.integers(2, 12))
def test_hensel_coherence_and_oracle(d, p, k):
    if d % p == 0 or not roots_mod(d, p):
        return
    r = hensel_sqrt(d, p, k)
    assert (r * r - d) % p**k == 0
    assert r % p**(k - 1) == hensel_sqrt(d, p, k - 1)
    assert r == padic_root(d, p, k, min(roots_mod(d, p)))


@given(st.integers(-10**6, 10**6).map(lambda n: 8 * n + 1), st.sampled_from([1, 3]), st.integers(3, 40))
def test_sqrt_2adic_oracle(d, seed, k):
    r = sqrt_2adic(d, k, seed)
    assert r % 4 == seed
    assert r % 2**k == padic_root(d, 2, k, seed)


def test_squarefree():
    assert is_squarefree(10) and is_squarefree(-7) and not is_squarefree(12)
