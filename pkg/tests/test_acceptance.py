"""Acceptance criteria, each at its stated size and tolerance.

Every test prints one "PASS criterion N: ..." or "FAIL criterion N: ..." line
straight to the terminal, so the summary survives pytest's output capture.
"""

import math
import random
from fractions import Fraction

import pytest

from oracles import max_coprime, quad_val
from weilheights.geometry import Ambient, ProjectivePoint
from weilheights.heights import arithmetic_distance_global, global_height, hyperplane
from weilheights.logvalue import LogValue
from weilheights.places import INF, Place
from weilheights.quadratic import QuadElement, QuadraticField, ext_valuation, places_above
from weilheights.verify import (BOUND_PASS, EXACT_PASS, SampleSpec, check_basic_properties, run_suite,
                                sample_points)


@pytest.fixture
def report(capsys):
    def emit(n, ok, text):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
        assert ok, text
    return emit


def test_criterion_1_product_formula(report):
    (rep,) = run_suite(["product-formula"], SampleSpec(1000, seed=1))
    report(1, rep.status == EXACT_PASS and rep.samples_used == 1000,
           f"product formula on {rep.samples_used} rationals (bound 1e6): {rep.status}")


def test_criterion_2_degree_formula(report):
    (rep,) = run_suite(["degree-formula"], SampleSpec(1))
    # 8 fields x (26 primes <= 101 + infinity)
    report(2, rep.status == EXACT_PASS and rep.samples_used == 8 * 27,
           f"sum of local degrees = 2 at {rep.samples_used} (d, v) pairs: {rep.status}")


def test_criterion_3_norm_formula(report):
    (rep,) = run_suite(["norm-formula"], SampleSpec(100, seed=3))
    err = rep.details["max_float_rel_err"]
    report(3, rep.status == EXACT_PASS and rep.samples_used == 800 and err <= 1e-12,
           f"norm formula on {rep.samples_used} elements: {rep.status}, max float rel err {err:.2e}")


@pytest.mark.parametrize("field_d,count", [(None, 200), (2, 50)])
def test_criterion_4_local_identities(report, field_d, count):
    spec = SampleSpec(count, seed=4, field=field_d)
    reports = run_suite(["sum-identity", "functoriality", "basic-properties"], spec)
    where = "Q" if field_d is None else f"Q(sqrt {field_d})"
    ok = all(r.status == EXACT_PASS and r.samples_used == count for r in reports)
    report(4, ok, f"over {where}: " + ", ".join(f"{r.check_name} {r.status} ({r.samples_used})" for r in reports))


def test_criterion_4_basic_properties_on_product(report):
    # the same identities on P^1 x P^1, where blocks are normalized separately
    from weilheights.geometry import parse_polynomial
    from weilheights.presentations import subscheme_presentation

    amb = Ambient((2, 2))
    Y = subscheme_presentation([parse_polynomial("x0*y1 - x1*y0", amb)], "graph")
    W = subscheme_presentation([parse_polynomial("x0", amb), parse_polynomial("y0", amb)], "corner")
    rep = check_basic_properties(Y, W, SampleSpec(200, seed=44))
    report(4, rep.status == EXACT_PASS, f"basic properties on P^1 x P^1: {rep.status} ({rep.samples_used})")


@pytest.mark.parametrize("N", [1, 2])
def test_criterion_5_weil_height(report, N):
    amb = Ambient((N + 1,))
    H = hyperplane(amb)
    pts = sample_points(amb, SampleSpec(500, seed=5, coordinate_height_bound=10**4), avoid=[H], salt="weil")
    bad = [x for x in pts if global_height(H, x).value != LogValue.log_rational(max_coprime(x.coords[0]))]
    h13 = global_height(hyperplane(Ambient((2,))), ProjectivePoint([(1, 3)])).value
    ok = not bad and h13 == LogValue.log_prime(3)
    report(5, ok, f"h = log max|n_i| on {len(pts) - len(bad)}/{len(pts)} points of P^{N}; "
                  f"h(1:3) = {h13.canonical().render()}")


def test_criterion_6_field_independence(report):
    (rep,) = run_suite(["field-independence"], SampleSpec(100, seed=6))
    report(6, rep.status == EXACT_PASS and rep.samples_used == 300,
           f"Q-sum = Q(sqrt d)-sum for d in 2,-1,5 on {rep.samples_used} (point, d) pairs: {rep.status}")


def test_criterion_7_independence(report):
    shifted, twisted = run_suite(["independence"], SampleSpec(1000, seed=7))
    prof = shifted.profile
    finite_zero = all(v == 0 for pl, v in prof.per_place.items() if not pl.is_archimedean)
    arch = prof.as_float(INF)
    ok = (shifted.status == BOUND_PASS and twisted.status == BOUND_PASS and finite_zero
          and arch <= math.log(2) + 1e-12 and twisted.profile.is_zero())
    report(7, ok, f"{{x0,x1}} vs {{x0,x0+x1}}: finite profile zero={finite_zero}, arch {arch:.15f} "
                  f"(log 2 = {math.log(2):.15f}); O(2)/O(1) profile zero={twisted.profile.is_zero()}")


def test_criterion_8_distance(report):
    reps = run_suite(["distance"], SampleSpec(500, seed=8))
    lines = []
    ok = True
    for rep in reps:
        d = rep.details
        finite = {k: v for k, v in d["empirical_gamma"].items() if k != "inf"}
        ok &= (d["symmetry"] == EXACT_PASS and d["triangle_I"] == BOUND_PASS and not finite
               and rep.status == BOUND_PASS and rep.samples_used >= 495)
        lines.append(f"{rep.check_name}: symmetry {d['symmetry']}, triangle I {d['triangle_I']} "
                     f"on {rep.samples_used} triples, empirical gamma(inf) {d['empirical_gamma']['inf']:.4f} "
                     f"<= {float(rep.profile[INF]):.4f}")
    x, y = ProjectivePoint([(1, 2)]), ProjectivePoint([(1, 3)])
    delta = arithmetic_distance_global(x, y).value
    ok &= delta == LogValue.log_rational(6)
    report(8, ok, "; ".join(lines) + f"; delta((1:2),(1:3)) = {delta.canonical().render()}")


def test_criterion_9_conventions(report):
    (rep,) = run_suite(["conventions"], SampleSpec(50, seed=9))
    report(9, rep.status == EXACT_PASS and rep.samples_used == 50,
           f"delta(x,x) = lambda_Y(on Y) = +inf on {rep.samples_used} on-locus points: {rep.status}")


def test_criterion_10_hensel(report):
    (rep,) = run_suite(["hensel"], SampleSpec(50, seed=10))
    # independent digit-by-digit oracle for each split place
    K = QuadraticField(2)
    rng = random.Random(10)
    mismatches = 0
    for _ in range(50):
        a, b = rng.randint(-10**4, 10**4) * 7 ** rng.randint(0, 3), rng.randint(-10**4, 10**4)
        if a == b == 0:
            continue
        alpha = QuadElement(a, b, K)
        for w in places_above(Place(7), K):
            mismatches += ext_valuation(alpha, w) != quad_val(Fraction(a), Fraction(b), 2, "split", 7, w.seed)
    report(10, rep.status == EXACT_PASS and mismatches == 0,
           f"pair-sum identity on {rep.samples_used} elements: {rep.status}; oracle mismatches {mismatches}")
