"""Executable checks of the height identities and bounded-difference statements.

Exact identities are decided by exact comparison of :class:`LogValue`s.
Statements that only hold up to an M_Q-constant are checked against a
caller-supplied bound profile over seeded samples; a BOUND-PASS is evidence,
not a proof.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import primes_up_to, valuation
from .errors import IndeterminacyPoint, SamplingError, UnknownSuite
from .geometry import (Ambient, Morphism, MultihomogPolynomial, ProjectivePoint, apply_morphism, monomial_basis,
                       parse_polynomial)
from .heights import (_diagonal, arithmetic_distance_local, candidate_primes, global_height, hyperplane,
                      local_height, on_subscheme, places_for, presentation_differences)
from .logvalue import LogValue, lv_min
from .places import INF, BoundProfile, Place, log_abs_sum, prime_support
from .presentations import (DivisorPresentation, add_subschemes, as_subscheme, hypersurface_presentation,
                            intersect, pullback, subscheme_presentation, sum_divisors)
from .quadratic import (QuadElement, QuadraticField, check_degree_formula, check_norm_formula,
                        ext_valuation, places_above)

EXACT_PASS = "EXACT-PASS"
EXACT_FAIL = "EXACT-FAIL"
BOUND_PASS = "BOUND-PASS"
BOUND_VIOLATION = "BOUND-VIOLATION"


@dataclass
class SampleSpec:
    count: int = 100
    seed: int = 0
    coordinate_height_bound: int = 20
    field: QuadraticField | None = None

    def __post_init__(self):
        if self.count < 1 or self.coordinate_height_bound < 1:
            raise ValueError("count and coordinate_height_bound must be positive")
        if isinstance(self.field, int):
            self.field = QuadraticField(self.field)

    def rng(self, salt=""):
        return random.Random(f"{self.seed}:{salt}")

    def with_count(self, count):
        return SampleSpec(count, self.seed, self.coordinate_height_bound, self.field)


@dataclass
class Witness:
    point: object
    place: object
    values: dict

    def to_json(self):
        return {"point": None if self.point is None else repr(self.point), "place": str(self.place),
                **{k: (v.canonical().render() if isinstance(v, LogValue) else str(v))
                   for k, v in self.values.items()}}


@dataclass
class CheckReport:
    check_name: str
    status: str
    samples_used: int = 0
    witnesses: list = field(default_factory=list)
    profile: BoundProfile | None = None
    notes: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status in (EXACT_PASS, BOUND_PASS)

    def to_json(self):
        out = {"check": self.check_name, "status": self.status, "samples": self.samples_used,
               "witnesses": [w.to_json() for w in self.witnesses[:5]], "notes": self.notes}
        if self.profile is not None:
            out["profile"] = self.profile.to_json()
        if self.details:
            out["details"] = {k: v if isinstance(v, (int, float, str, bool, list, dict)) or v is None
                              else str(v) for k, v in self.details.items()}
        return out

    def line(self):
        return f"{self.check_name}: {self.status} ({self.samples_used} samples)"


def _exact_report(name, witnesses, samples, notes=(), details=None):
    return CheckReport(name, EXACT_FAIL if witnesses else EXACT_PASS, samples, list(witnesses),
                       notes=list(notes), details=details or {})


# -- sampling ------------------------------------------------------------------------


def random_rational(rng, bound):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_element(rng, bound, field_=None):
    if field_ is None:
        return random_rational(rng, bound)
    return QuadElement(random_rational(rng, bound), random_rational(rng, bound), field_)


def random_point(rng, ambient, bound, field_=None):
    blocks = []
    for size in ambient.blocks:
        while True:
            blk = [random_element(rng, bound, field_) for _ in range(size)]
            if any(blk):
                break
        blocks.append(blk)
    return ProjectivePoint(blocks, field_)


def sample_points(ambient, spec, avoid=(), salt="points", count=None):
    """Seeded points of ``ambient`` off every presentation in ``avoid`` (rejection sampling)."""
    count = spec.count if count is None else count
    rng = spec.rng(salt)
    avoid = [as_subscheme(P) for P in avoid]
    out, tries = [], 0
    while len(out) < count:
        tries += 1
        if tries > 100 * count:
            raise SamplingError(f"could not find {count} points off the given loci in {100 * count} tries")
        x = random_point(rng, ambient, spec.coordinate_height_bound, spec.field)
        if any(on_subscheme(P, x) for P in avoid):
            continue
        out.append(x)
    return out


def _off_all_divisors(P, x):
    return all(D.s_D.evaluate(x.flat) for D in as_subscheme(P).divisors)


def _places(presentations, x):
    primes = set()
    for P in presentations:
        primes |= candidate_primes(P, x)
    return places_for(primes, x.field)


# -- exact identities -----------------------------------------------------------------


def check_sum_identity(D, E, spec, combined=None):
    """lambda_{D+E} = lambda_D + lambda_E off D u E.  ``combined`` overrides D+E (for negative tests)."""
    S = combined if combined is not None else sum_divisors(D, E)
    rng = spec.rng("sum-identity")
    witnesses, used, tries = [], 0, 0
    while used < spec.count:
        tries += 1
        if tries > 100 * spec.count:
            raise SamplingError("rejection sampling cap exceeded")
        x = random_point(rng, D.ambient, spec.coordinate_height_bound, spec.field)
        if not (_off_all_divisors(D, x) and _off_all_divisors(E, x)):
            continue
        used += 1
        for w in _places([D, E, S], x):
            lhs = local_height(S, x, w).value
            rhs = local_height(D, x, w).value + local_height(E, x, w).value
            if lhs != rhs:
                witnesses.append(Witness(x, w, {"lambda_sum": lhs, "lambda_D+lambda_E": rhs}))
    return _exact_report("sum-identity", witnesses, used)


def _sample_source(phi, spec, avoid_target, salt):
    """Points x of the source with phi defined at x and phi(x) off ``avoid_target``."""
    rng = spec.rng(salt)
    out, notes, tries = [], [], 0
    while len(out) < spec.count:
        tries += 1
        if tries > 100 * spec.count:
            raise SamplingError("rejection sampling cap exceeded")
        x = random_point(rng, phi.source, spec.coordinate_height_bound, spec.field)
        try:
            fx = apply_morphism(phi, x)
        except IndeterminacyPoint:
            notes.append(f"skipped indeterminacy point {x!r}")
            continue
        if any(on_subscheme(P, fx) for P in avoid_target):
            continue
        out.append((x, fx))
    return out, notes


def check_functoriality(phi, D, spec, pulled=None):
    """lambda_{phi^* D}(x) = lambda_D(phi(x)) at every sampled point and place."""
    Y = as_subscheme(D)
    Q = pulled if pulled is not None else pullback(phi, Y)
    pairs, notes = _sample_source(phi, spec, [Y], "functoriality")
    witnesses = []
    for x, fx in pairs:
        places = {str(w): w for w in _places([Q], x)}
        for w in _places([Y], fx):
            places.setdefault(str(w), w)
        for w in places.values():
            lhs = local_height(Q, x, w).value
            rhs = local_height(Y, fx, w).value
            if lhs != rhs:
                witnesses.append(Witness(x, w, {"lambda_pullback": lhs, "lambda_at_image": rhs}))
    return _exact_report("functoriality", witnesses, len(pairs), notes[:10])


def check_basic_properties(Y, W, spec, phi=None, intersection=None, addition=None):
    """min under intersection, sum under addition, and (when ``phi`` is given) pullback."""
    Y, W = as_subscheme(Y), as_subscheme(W)
    I = intersection if intersection is not None else intersect(Y, W)
    A = addition if addition is not None else add_subschemes(Y, W)
    pts = sample_points(Y.ambient, spec, avoid=[Y, W], salt="basic-properties")
    witnesses = []
    for x in pts:
        for w in _places([Y, W, I, A], x):
            ly, lw = local_height(Y, x, w).value, local_height(W, x, w).value
            li, la = local_height(I, x, w).value, local_height(A, x, w).value
            if li != lv_min([ly, lw]):
                witnesses.append(Witness(x, w, {"part": "min", "lambda_cap": li, "lambda_Y": ly, "lambda_W": lw}))
            if la != ly + lw:
                witnesses.append(Witness(x, w, {"part": "sum", "lambda_plus": la, "lambda_Y": ly, "lambda_W": lw}))
    notes = []
    if phi is not None:
        for P, tag in ((Y, "Y"), (W, "W")):
            rep = check_functoriality(phi, P, spec)
            for wt in rep.witnesses:
                wt.values["part"] = f"pullback-{tag}"
            witnesses.extend(rep.witnesses)
            notes.extend(rep.notes)
    return _exact_report("basic-properties", witnesses, len(pts), notes[:10])


# -- bounded differences ---------------------------------------------------------------


def _exceeds(diff, bound):
    """|diff| > bound, exactly when ``bound`` is a LogValue or zero."""
    if isinstance(bound, LogValue):
        return diff > bound or -diff > bound
    if float(bound) == 0:
        return diff.sign() != 0
    import mpmath

    with mpmath.workprec(120):
        return abs(diff.to_mpf(100)) > mpmath.mpf(float(bound))


def check_independence(Y1, Y2, spec, claimed_profile=None):
    """Empirical check that lambda_{Y1} - lambda_{Y2} is bounded by an M_Q-constant."""
    Y1, Y2 = as_subscheme(Y1), as_subscheme(Y2)
    pts = sample_points(Y1.ambient, spec, avoid=[Y1, Y2], salt="independence")
    per = {INF: 0.0}
    witnesses = []
    for x, w, a, b in presentation_differences(Y1, Y2, pts):
        diff = a - b
        base = getattr(w, "base", w)
        gap = 0.0 if diff.sign() == 0 else abs(diff.to_float())
        per[base] = max(per.get(base, 0.0), gap)
        if claimed_profile is not None and _exceeds(diff, claimed_profile[base]):
            witnesses.append(Witness(x, w, {"lambda_1": a, "lambda_2": b, "claimed": claimed_profile[base]}))
    profile = BoundProfile(per)
    status = BOUND_VIOLATION if witnesses else BOUND_PASS
    return CheckReport("independence", status, len(pts), witnesses, profile)


def check_distance_properties(spec, gamma, N=1, subscheme=None, gamma2=None):
    """Symmetry (exact) and both triangle inequalities (against ``gamma``) on sampled triples."""
    amb = Ambient((N + 1,))
    pts = sample_points(amb, spec.with_count(3 * spec.count), salt=f"distance-P{N}")
    triples = [tuple(pts[3 * i:3 * i + 3]) for i in range(spec.count)]
    diag = _diagonal(N)
    gamma2 = gamma if gamma2 is None else gamma2
    sym_w, tri_w, tri2_w, notes = [], [], [], []
    empirical = {}
    used = 0

    def record(place, excess):
        base = getattr(place, "base", place)
        empirical[base] = max(empirical.get(base, 0.0), excess)

    for x, y, z in triples:
        if x == y or y == z or x == z:
            notes.append(f"skipped degenerate triple {x!r}, {y!r}, {z!r}")
            continue
        used += 1
        pairs = [x.pair(y), y.pair(z), x.pair(z)]
        places = {str(w): w for P in pairs for w in _places([diag], P)}
        if subscheme is not None:
            for pt in (x, y):
                if not on_subscheme(subscheme, pt):
                    for w in _places([subscheme], pt):
                        places.setdefault(str(w), w)
        for w in places.values():
            dxy = arithmetic_distance_local(x, y, w).value
            dyx = arithmetic_distance_local(y, x, w).value
            dyz = arithmetic_distance_local(y, z, w).value
            dxz = arithmetic_distance_local(x, z, w).value
            if dxy != dyx:
                sym_w.append(Witness(x, w, {"y": y, "delta_xy": dxy, "delta_yx": dyx}))
            lhs = lv_min([dxy, dyz])
            excess = lhs - dxz
            record(w, max(0.0, excess.to_float()))
            if excess.sign() > 0 and _exceeds(excess, gamma[w]):
                tri_w.append(Witness(x, w, {"y": y, "z": z, "min(delta_xy,delta_yz)": lhs, "delta_xz": dxz}))
            if subscheme is not None:
                ly = local_height(subscheme, y, w).value
                lx = local_height(subscheme, x, w).value
                if ly.is_infinite:
                    continue
                lhs2 = lv_min([lx, dxy])
                if lhs2.is_infinite:
                    tri2_w.append(Witness(x, w, {"y": y, "min(lambda_x,delta_xy)": lhs2, "lambda_y": ly}))
                    continue
                ex2 = lhs2 - ly
                if ex2.sign() > 0 and _exceeds(ex2, gamma2[w]):
                    tri2_w.append(Witness(x, w, {"y": y, "min(lambda_x,delta_xy)": lhs2, "lambda_y": ly}))
    details = {
        "symmetry": EXACT_FAIL if sym_w else EXACT_PASS,
        "triangle_I": BOUND_VIOLATION if tri_w else BOUND_PASS,
        "empirical_gamma": {str(k): v for k, v in sorted(empirical.items(), key=lambda kv: kv[0].sort_key())
                            if v or k.is_archimedean},
    }
    if subscheme is not None:
        details["triangle_II"] = BOUND_VIOLATION if tri2_w else BOUND_PASS
    witnesses = sym_w + tri_w + tri2_w
    if sym_w:
        status = EXACT_FAIL
    elif witnesses:
        status = BOUND_VIOLATION
    else:
        status = BOUND_PASS
    return CheckReport("distance-properties", status, used, witnesses, gamma, notes[:10], details)


def minimal_gamma(spec, N=1, place=INF):
    """sup over sampled triples of min(delta_xy, delta_yz) - delta_xz at one place of Q (float)."""
    rep = check_distance_properties(spec, BoundProfile({place: 1e300}), N)
    return rep.details["empirical_gamma"].get(str(place), 0.0)


def support_constant(Y, W, spec):
    """Empirical smallest C with lambda_Y <= C * lambda_W at the sampled points (float, not a proof).

    Only pairs with lambda_W > 0 constrain C; the O(1) term is not separated out.
    Returns (C, number of constraining samples).
    """
    Y, W = as_subscheme(Y), as_subscheme(W)
    pts = sample_points(Y.ambient, spec, avoid=[Y, W], salt="support-constant")
    best, n = 0.0, 0
    for x in pts:
        for w in _places([Y, W], x):
            ly, lw = local_height(Y, x, w).value, local_height(W, x, w).value
            if lw.sign() > 0 and ly.sign() > 0:
                n += 1
                best = max(best, ly.to_float() / lw.to_float())
    return best, n


# -- global heights ---------------------------------------------------------------------


def check_global_properties(Y, W, phi, spec):
    """h_{Y+W} = h_Y + h_W, and h_Y(phi(x)) = h_{phi^* Y}(x), as exact equalities."""
    Y, W = as_subscheme(Y), as_subscheme(W)
    A = add_subschemes(Y, W)
    witnesses = []
    pts = sample_points(Y.ambient, spec, avoid=[Y, W], salt="global-additivity")
    for x in pts:
        lhs = global_height(A, x).value
        rhs = global_height(Y, x).value + global_height(W, x).value
        if lhs != rhs:
            witnesses.append(Witness(x, "global", {"part": "additivity", "h_sum": lhs, "h_Y+h_W": rhs}))
    details = {"additivity": EXACT_FAIL if witnesses else EXACT_PASS}
    if phi is not None:
        Q = pullback(phi, Y)
        pairs, notes = _sample_source(phi, spec, [Y], "global-functoriality")
        bad = []
        for x, fx in pairs:
            lhs, rhs = global_height(Y, fx).value, global_height(Q, x).value
            if lhs != rhs:
                bad.append(Witness(x, "global", {"part": "functoriality", "h_Y(phi(x))": lhs, "h_pullback(x)": rhs}))
        details["functoriality"] = EXACT_FAIL if bad else EXACT_PASS
        witnesses += bad
    return _exact_report("global-properties", witnesses, len(pts), details=details)


def check_field_independence(Y, x, d):
    """The global height of a rational point computed over Q and over Q(sqrt d) agree exactly."""
    K = d if isinstance(d, QuadraticField) else QuadraticField(d)
    hq = global_height(Y, x)
    hk = global_height(Y, x, K)
    witnesses = [] if hq == hk else [Witness(x, str(K), {"h_Q": hq.value, "h_K": hk.value})]
    return _exact_report("field-independence", witnesses, 1,
                         details={"h_Q": str(hq), "h_K": str(hk), "d": K.d})


# -- suite -------------------------------------------------------------------------------

DEGREE_SET = (-7, -3, -2, -1, 2, 3, 5, 10)


def _product_formula(spec):
    rng = spec.rng("product-formula")
    bound = 10**6
    witnesses = []
    for _ in range(spec.count):
        x = Fraction(0)
        while x == 0:
            x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        lv = log_abs_sum(x).canonical()
        if not lv.is_structurally_zero():
            witnesses.append(Witness(x, "all", {"canonical": lv}))
    return _exact_report("product-formula", witnesses, spec.count)


def _degree_formula(spec):
    bad = []
    n = 0
    for d in DEGREE_SET:
        K = QuadraticField(d)
        for v in [INF] + [Place(p) for p in primes_up_to(101)]:
            n += 1
            rep = check_degree_formula(K, v)
            if not rep.ok:
                bad.append(Witness(None, v, {"d": d, **rep.details}))
    return _exact_report("degree-formula", bad, n)


def _norm_formula(spec):
    rng = spec.rng("norm-formula")
    bad = []
    worst = 0.0
    n = 0
    for d in DEGREE_SET:
        K = QuadraticField(d)
        for _ in range(spec.count):
            alpha = QuadElement(0, 0, K)
            while not alpha:
                alpha = random_element(rng, spec.coordinate_height_bound, K)
            n += 1
            primes = set(primes_up_to(101)) | set(prime_support([alpha.norm()]))
            for v in [INF] + [Place(p) for p in sorted(primes)]:
                rep = check_norm_formula(alpha, v, float_check_bits=64 if v.is_archimedean else None)
                worst = max(worst, rep.details.get("float_rel_err", 0.0))
                if not rep.ok:
                    bad.append(Witness(alpha, v, rep.details))
    return _exact_report("norm-formula", bad, n, details={"max_float_rel_err": worst})


def _p2():
    return Ambient((3,))


def _sum_identity(spec):
    amb = _p2()
    D = hyperplane(amb)
    E = hypersurface_presentation(parse_polynomial("x0*x2 - x1^2", amb))
    return check_sum_identity(D, E, spec)


def _square_map(amb):
    return Morphism.from_strings(amb, amb, [[f"x{j}^2" for j in range(amb.blocks[0])]])


def _functoriality(spec):
    P1 = Ambient((2,))
    return check_functoriality(_square_map(P1), hyperplane(P1), spec)


def _basic_properties(spec):
    amb = _p2()
    Y = subscheme_presentation([parse_polynomial("x0", amb), parse_polynomial("x1", amb)], "point")
    W = subscheme_presentation([parse_polynomial("x0*x2 - x1^2", amb)], "conic")
    return check_basic_properties(Y, W, spec, phi=_square_map(amb))


def independence_fixture():
    """The x0-hyperplane of P^1 with sections {x0, x1}, {x0, x0 + x1}, and an O(2)/O(1) form."""
    P1 = Ambient((2,))
    x0, x1 = (MultihomogPolynomial.variable(P1, 0, j) for j in range(2))
    std = hypersurface_presentation(x0, [x0, x1])
    shifted = hypersurface_presentation(x0, [x0, x0 + x1])
    twisted = DivisorPresentation(x0, (2,), tuple(monomial_basis(P1, (2,))), (1,), (x0, x1))
    return std, shifted, twisted


def _independence(spec):
    std, shifted, twisted = independence_fixture()
    claimed = BoundProfile({INF: LogValue.log_prime(2)})
    first = check_independence(std, shifted, spec, claimed)
    first.check_name = "independence-shifted"
    second = check_independence(std, twisted, spec, BoundProfile({INF: 0.0}))
    second.check_name = "independence-twisted"
    return [first, second]


def _distance(spec):
    reports = []
    for N in (1, 2):
        gamma = BoundProfile({INF: LogValue.log_rational(N + 1).scale(2)})
        amb = Ambient((N + 1,))
        rep = check_distance_properties(spec, gamma, N, subscheme=as_subscheme(hyperplane(amb)))
        rep.check_name = f"distance-properties-P{N}"
        reports.append(rep)
    return reports


def _global_properties(spec):
    P1 = Ambient((2,))
    Y = hyperplane(P1, 0, 0)
    W = hyperplane(P1, 0, 1)
    return check_global_properties(Y, W, _square_map(P1), spec)


def _field_independence(spec):
    P1 = Ambient((2,))
    Y = hyperplane(P1)
    pts = sample_points(P1, SampleSpec(spec.count, spec.seed, spec.coordinate_height_bound),
                        avoid=[Y], salt="field-independence")
    witnesses = []
    for d in (2, -1, 5):
        for x in pts:
            witnesses += check_field_independence(Y, x, d).witnesses
    return _exact_report("field-independence", witnesses, 3 * len(pts))


def _conventions(spec):
    rng = spec.rng("conventions")
    witnesses = []
    amb = _p2()
    Y = subscheme_presentation([parse_polynomial("x0", amb), parse_polynomial("x1", amb)], "point")
    n = 0
    for _ in range(spec.count):
        n += 1
        x = random_point(rng, Ambient((2,)), spec.coordinate_height_bound)
        xs = x.scaled([random_rational(rng, 5) or Fraction(1)])
        p = ProjectivePoint([(0, 0, rng.randint(1, 50))])
        for w in (INF, Place(2), Place(3)):
            dv = arithmetic_distance_local(x, xs, w).value
            lv = local_height(Y, p, w).value
            if not (dv.is_infinite and lv.is_infinite):
                witnesses.append(Witness(x, w, {"delta(x,x)": dv, "lambda_Y(on Y)": lv}))
    return _exact_report("conventions", witnesses, n)


def _hensel(spec):
    rng = spec.rng("hensel")
    K = QuadraticField(2)
    w1, w2 = places_above(Place(7), K)
    witnesses = []
    for _ in range(spec.count):
        alpha = QuadElement(0, 0, K)
        while not alpha:
            alpha = QuadElement(rng.randint(-10**4, 10**4) * 7 ** rng.randint(0, 3),
                                rng.randint(-10**4, 10**4), K)
        v1, v2 = ext_valuation(alpha, w1), ext_valuation(alpha, w2)
        if v1 != valuation(alpha.norm(), 7) - v2:
            witnesses.append(Witness(alpha, w1, {"v1": v1, "v2": v2}))
    return _exact_report("hensel", witnesses, spec.count)


SUITES = {
    "product-formula": _product_formula,
    "degree-formula": _degree_formula,
    "norm-formula": _norm_formula,
    "sum-identity": _sum_identity,
    "functoriality": _functoriality,
    "basic-properties": _basic_properties,
    "independence": _independence,
    "distance": _distance,
    "global-properties": _global_properties,
    "field-independence": _field_independence,
    "conventions": _conventions,
    "hensel": _hensel,
}


def run_suite(names, spec):
    names = list(names)
    if names == ["all"] or not names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UnknownSuite(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(SUITES)}")
    out = []
    for n in names:
        res = SUITES[n](spec)
        out.extend(res if isinstance(res, list) else [res])
    return out


def suite_passed(reports):
    return all(r.passed for r in reports)
