from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import eval_terms_exact
from weilheights.errors import AmbientMismatch, DegreeMismatch, IndeterminacyPoint, InvalidPoint, NotHomogeneous, ParseError
from weilheights.geometry import (Ambient, Morphism, MultihomogPolynomial, ProjectivePoint, apply_morphism,
                                  evaluate, monomial_basis, normalize_point, parse_polynomial, points_equal)
from weilheights.quadratic import QuadraticField

P1 = Ambient((2,))
P2 = Ambient((3,))
P1P1 = Ambient((2, 2))
small = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 9))
nonzero = small.filter(bool)


@st.composite
def points(draw, amb=P1, field_=None):
    blocks = []
    for size in amb.blocks:
        blk = draw(st.lists(small, min_size=size, max_size=size))
        if not any(blk):
            blk[0] = Fraction(1)
        if field_ is not None:
            bs = draw(st.lists(small, min_size=size, max_size=size))
            blk = [field_(a, b) for a, b in zip(blk, bs)]
        blocks.append(blk)
    return ProjectivePoint(blocks, field_)


@st.composite
def polys(draw, amb=P2, max_deg=3):
    deg = tuple(draw(st.integers(0, max_deg)) for _ in amb.blocks)
    monos = amb.monomials(deg)
    cs = draw(st.lists(small, min_size=len(monos), max_size=len(monos)))
    return MultihomogPolynomial(amb, {m: c for m, c in zip(monos, cs) if c}, deg)


def test_ambient_basics():
    amb = Ambient((2, 3))
    assert amb.nvars == 5 and amb.nblocks == 2
    assert amb.var_name(0) == "x0" and amb.var_name(2) == "y0"
    assert Ambient((2, 2, 2, 2)).var_name(7) == "x3_1"
    assert len(monomial_basis(P1P1, (1, 1))) == 4
    assert len(monomial_basis(P2, (2,))) == 6


def test_parse_examples():
    f = parse_polynomial("x0*y1 - x1*y0", P1P1)
    assert f.multidegree == (1, 1)
    assert f.evaluate((1, 2, 1, 3)) == 1
    g = parse_polynomial("3/2*x0^2 + x1^2", P1)
    assert g.multidegree == (2,) and g.terms[(2, 0)] == Fraction(3, 2)
    with pytest.raises(NotHomogeneous) as exc:
        parse_polynomial("x0 + x0^2", P1)
    assert len(exc.value.terms) == 2


@pytest.mark.parametrize("text", ["x0 +", "2x0", "x5", "x0^", "(x0 + x1", "x0 * * x1", "1/0*x0", "w0", "y0_1"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_polynomial(text, P1)


def test_parse_canonical_names_and_parentheses():
    amb = Ambient((2, 2, 2, 2))
    f = parse_polynomial("x3_1 * (x0_0 + 2*x0_1)", amb)
    assert f.multidegree == (1, 0, 0, 1)
    assert parse_polynomial("x1_0", P1P1) == parse_polynomial("y0", P1P1)
    assert parse_polynomial("(x0 - x1) * (x0 + x1)", P1) == parse_polynomial("x0^2 - x1^2", P1)
    with pytest.raises(ParseError):
        parse_polynomial("(x0 - x1)^2", P1)  # exponents apply to variables only


@settings(max_examples=500)
@given(polys())
def test_format_roundtrip(f):
    g = parse_polynomial(str(f), P2)
    assert g.terms == f.terms


@given(polys(P1P1, 2), st.lists(small, min_size=4, max_size=4), nonzero, nonzero)
def test_evaluate_oracle_and_homogeneity(f, xs, c0, c1):
    assert f.evaluate(xs) == eval_terms_exact(f.terms, xs)
    scaled = [c0 * xs[0], c0 * xs[1], c1 * xs[2], c1 * xs[3]]
    d0, d1 = f.multidegree
    assert f.evaluate(scaled) == c0**d0 * c1**d1 * f.evaluate(xs)


def test_evaluate_examples():
    f = parse_polynomial("x0^2 + x1^2", P1)
    assert evaluate(f, ProjectivePoint([(3, 4)])) == 25


def test_normalize_examples():
    assert normalize_point(ProjectivePoint([(2, 6)])).coords == ((1, 3),)
    assert normalize_point(ProjectivePoint([(Fraction(1, 2), Fraction(3, 4))])).coords == ((2, 3),)
    assert normalize_point(ProjectivePoint([(-2, 4)])).coords == ((1, -2),)
    with pytest.raises(InvalidPoint):
        ProjectivePoint([(0, 0)])


def test_points_equal_examples():
    K = QuadraticField(2)
    assert points_equal(ProjectivePoint([(1, 3)]), ProjectivePoint([(2, 6)]))
    assert not points_equal(ProjectivePoint([(1, 3)]), ProjectivePoint([(1, 4)]))
    assert ProjectivePoint([(K(1, 1), K(1))], K) == ProjectivePoint([(K(-1), K(1, -1))], K)
    with pytest.raises(AmbientMismatch):
        points_equal(ProjectivePoint([(1, 3)]), ProjectivePoint([(1, 3, 1)]))


@given(points(P1P1))
def test_normalize_idempotent(x):
    n = normalize_point(x)
    assert normalize_point(n).coords == n.coords
    assert points_equal(n, x)
    for blk in n.coords:
        assert all(c.denominator == 1 for c in map(Fraction, blk))


@given(points(P2, QuadraticField(-3)))
def test_normalize_quadratic(x):
    n = normalize_point(x)
    assert points_equal(n, x)
    assert normalize_point(n).coords == n.coords


def test_apply_morphism_examples():
    sq = Morphism.from_strings(P1, P1, [["x0^2", "x1^2"]])
    assert apply_morphism(sq, ProjectivePoint([(1, 3)])) == ProjectivePoint([(1, 9)])
    segre = Morphism.from_strings(P1P1, Ambient((4,)), [["x0*y0", "x0*y1", "x1*y0", "x1*y1"]])
    assert segre(ProjectivePoint([(1, 2), (1, 3)])).coords == ((1, 3, 2, 6),)
    bad = Morphism.from_strings(P1, P1, [["x0*x1", "x1^2"]])
    with pytest.raises(IndeterminacyPoint):
        bad(ProjectivePoint([(1, 0)]))


def test_morphism_validation():
    with pytest.raises(DegreeMismatch):
        Morphism.from_strings(P1, P1, [["x0^2", "x1"]])
    with pytest.raises(DegreeMismatch):
        Morphism.from_strings(P1, P1, [["x0"]])


@given(points(P1P1), nonzero, nonzero)
def test_morphism_representative_invariance(x, c0, c1):
    segre = Morphism.from_strings(P1P1, Ambient((4,)), [["x0*y0", "x0*y1", "x1*y0", "x1*y1"]])
    try:
        a = segre(x)
    except IndeterminacyPoint:
        return
    assert points_equal(a, segre(x.scaled([c0, c1])))


def test_polynomial_algebra():
    x0 = MultihomogPolynomial.variable(P1, 0, 0)
    x1 = MultihomogPolynomial.variable(P1, 0, 1)
    assert (x0 + x1) * (x0 - x1) == parse_polynomial("x0^2 - x1^2", P1)
    assert (x0 + x1) ** 2 == parse_polynomial("x0^2 + 2*x0*x1 + x1^2", P1)
    with pytest.raises(DegreeMismatch):
        x0 + x0 * x1
