from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weilheights.errors import InfiniteValuation, MixedPlaceComparison
from weilheights.logvalue import LogValue, Magnitude, lv_max, lv_min, parse_logvalue

pos_rationals = st.builds(Fraction, st.integers(1, 10**6), st.integers(1, 10**6))
coeffs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
primes = st.sampled_from([2, 3, 5, 7, 11, 13])
finite_lv = st.dictionaries(primes, coeffs, max_size=4).map(LogValue)
quad_mag = st.builds(lambda a, b, d: Magnitude.of_real_quadratic(a, b, d),
                     st.integers(-30, 30), st.integers(-30, 30), st.sampled_from([2, 3, 5]))


def mp(v, bits=200):
    return v.to_mpf(bits)


def test_add_and_min_examples():
    assert LogValue.log_prime(2, 2) + LogValue.log_prime(2, 3) == LogValue.log_prime(2, 5)
    assert lv_min([LogValue.log_prime(3), LogValue.log_prime(3, 2)]) == LogValue.log_prime(3)
    assert lv_max([LogValue.log_prime(3), LogValue.infinity()]).is_infinite


def test_to_float_log_three_halves():
    v = LogValue.log_rational(Fraction(3, 2))
    assert abs(v.to_float(53) - 0.4054651081081644) < 1e-15


def test_min_rejects_mixed_places():
    with pytest.raises(MixedPlaceComparison):
        lv_min([LogValue.log_prime(2), LogValue.log_prime(3)])
    with pytest.raises(MixedPlaceComparison):
        lv_min([LogValue.log_prime(2), LogValue.log_magnitude(Magnitude.of_rational(5))])


def test_log_zero_signals():
    with pytest.raises(InfiniteValuation):
        LogValue.log_rational(0)


def test_infinity_conventions():
    inf = LogValue.infinity()
    assert LogValue.log_prime(2, 10**6) < inf
    assert (inf + LogValue.log_prime(2)).is_infinite
    assert inf.render() == "inf"


@given(finite_lv, finite_lv)
def test_sign_agrees_with_high_precision(a, b):
    s = (a - b).sign()
    with mpmath.workprec(300):
        f = mp(a, 300) - mp(b, 300)
    assert s == (0 if abs(f) < mpmath.mpf(2) ** -250 else (1 if f > 0 else -1))


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30),
       st.sampled_from([2, 3, 5]))
def test_magnitude_order_matches_floats(a1, b1, a2, b2, d):
    m1, m2 = Magnitude.of_real_quadratic(a1, b1, d), Magnitude.of_real_quadratic(a2, b2, d)
    c = m1.compare(m2)
    with mpmath.workprec(300):
        f = m1.to_mpf(300) - m2.to_mpf(300)
        exp = 0 if abs(f) < mpmath.mpf(2) ** -250 else (1 if f > 0 else -1)
    assert c == exp


@given(quad_mag, st.integers(1, 4), finite_lv)
def test_arch_log_sign(m, w, fin):
    if m.is_zero():
        return
    v = LogValue.log_magnitude(m, w) + fin
    with mpmath.workprec(300):
        f = v.to_mpf(300)
    exp = 0 if abs(f) < mpmath.mpf(2) ** -250 else (1 if f > 0 else -1)
    assert v.sign() == exp


@given(pos_rationals)
def test_canonical_rational_log(x):
    a = LogValue.log_magnitude(Magnitude.of_rational(x))
    b = LogValue.log_rational(x)
    assert a == b
    assert (a - b).canonical().is_structurally_zero()


@given(finite_lv, finite_lv, coeffs)
def test_float_is_additive_and_linear(a, b, q):
    assert abs((a + b).to_float() - (a.to_float() + b.to_float())) < 1e-9
    assert abs(a.scale(q).to_float() - float(q) * a.to_float()) < 1e-9


@given(finite_lv, quad_mag, coeffs)
def test_render_roundtrip(fin, m, w):
    v = fin
    if not m.is_zero():
        v = v + LogValue.log_magnitude(m, w)
    c = v.canonical()
    assert parse_logvalue(c.render()) == v


def test_render_examples():
    assert LogValue({2: Fraction(1, 2), 3: 1}).render() == "1/2*log(2) + log(3)"
    assert LogValue({2: 1, 3: 1}).render() == "log(6)"
    assert LogValue.log_magnitude(Magnitude.of_real_quadratic(1, 1, 2)).render() == "log(1+sqrt(2))"
    assert LogValue.zero().render() == "0"
    assert parse_logvalue("log(6)") == LogValue({2: 1, 3: 1})


def test_magnitude_examples():
    m = Magnitude.of_real_quadratic(1, -1, 2)
    assert str(m) == "-1+sqrt(2)"
    assert m * Magnitude.of_real_quadratic(1, 1, 2) == Magnitude.of_rational(1)
    assert str(Magnitude.sqrt_of(2)) == "sqrt(2)"
