"""Presentations of Cartier divisors and closed subschemes of a multiprojective ambient.

A divisor presentation is ``(s_D; L, s_0..s_n; M, t_0..t_m)`` with line bundles
recorded by multidegree.  On a product of projective spaces the isomorphism
``L (x) M^-1 -> O(D)`` is determined up to a scalar by the degrees, so it is
kept implicit.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import AmbientMismatch, DegreeMismatch, PresentationError, PullbackNotDefined
from .geometry import Ambient, MultihomogPolynomial, ProjectivePoint, monomial_basis


def _deg_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class DivisorPresentation:
    s_D: MultihomogPolynomial
    L_degree: tuple
    L_sections: tuple
    M_degree: tuple
    M_sections: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "L_degree", tuple(self.L_degree))
        object.__setattr__(self, "M_degree", tuple(self.M_degree))
        object.__setattr__(self, "L_sections", tuple(self.L_sections))
        object.__setattr__(self, "M_sections", tuple(self.M_sections))
        if self.check:
            problems = self.degree_problems()
            if problems:
                raise DegreeMismatch("; ".join(problems))

    @property
    def ambient(self):
        return self.s_D.ambient

    def degree_problems(self):
        out = []
        amb = self.ambient
        if self.s_D.is_zero():
            out.append("s_D is zero")
        if not self.L_sections:
            out.append("no L sections")
        if not self.M_sections:
            out.append("no M sections")
        diff = _deg_sub(self.L_degree, self.M_degree)
        if any(x < 0 for x in diff):
            out.append(f"L degree {self.L_degree} minus M degree {self.M_degree} is negative")
        elif diff != self.s_D.multidegree:
            out.append(f"s_D has degree {self.s_D.multidegree}, expected L - M = {diff}")
        for name, secs, deg in (("L", self.L_sections, self.L_degree),
                                ("M", self.M_sections, self.M_degree)):
            for i, s in enumerate(secs):
                if s.ambient != amb:
                    out.append(f"{name} section {i} lives on another ambient")
                elif s.is_zero():
                    out.append(f"{name} section {i} is zero")
                elif s.multidegree != deg:
                    out.append(f"{name} section {i} has degree {s.multidegree}, expected {deg}")
        return out

    def all_polynomials(self):
        return (self.s_D,) + self.L_sections + self.M_sections

    def same_up_to_order(self, other):
        """Equal s_D and degrees, section lists equal as multisets."""
        def key(secs):
            return sorted(format(s) for s in secs)

        return (self.s_D == other.s_D and self.L_degree == other.L_degree
                and self.M_degree == other.M_degree
                and key(self.L_sections) == key(other.L_sections)
                and key(self.M_sections) == key(other.M_sections))

    def __str__(self):
        ls = ", ".join(map(str, self.L_sections))
        ms = ", ".join(map(str, self.M_sections))
        return f"({self.s_D}; O{self.L_degree}: {ls}; O{self.M_degree}: {ms})"


@dataclass(frozen=True)
class SubschemePresentation:
    divisors: tuple
    label: str | None = None

    def __post_init__(self):
        divs = tuple(self.divisors)
        if not divs:
            raise PresentationError("a subscheme presentation needs at least one divisor")
        amb = divs[0].ambient
        for D in divs[1:]:
            if D.ambient != amb:
                raise AmbientMismatch("divisor presentations on different ambients")
        object.__setattr__(self, "divisors", divs)

    @property
    def ambient(self):
        return self.divisors[0].ambient

    def __len__(self):
        return len(self.divisors)

    def __iter__(self):
        return iter(self.divisors)


def _one(ambient):
    return MultihomogPolynomial.constant(ambient)


def hypersurface_presentation(g, sections=None):
    """(g; O(deg g), sections; O(0), 1); sections default to the monomial basis."""
    if g.is_zero():
        raise PresentationError("cannot present the divisor of the zero polynomial")
    amb = g.ambient
    if sections is None:
        secs = monomial_basis(amb, g.multidegree)
    else:
        secs = list(sections)
        for s in secs:
            if s.ambient != amb:
                raise AmbientMismatch("section on a different ambient")
            if s.is_zero():
                raise PresentationError("zero section supplied")
            if s.multidegree != g.multidegree:
                raise DegreeMismatch(f"section {s} has degree {s.multidegree}, expected {g.multidegree}")
    zero = (0,) * amb.nblocks
    return DivisorPresentation(g, g.multidegree, tuple(secs), zero, (_one(amb),))


def subscheme_presentation(generators, label=None):
    gens = list(generators)
    if not gens:
        raise PresentationError("no generators")
    amb = gens[0].ambient
    for g in gens:
        if g.ambient != amb:
            raise AmbientMismatch("generators on different ambients")
    return SubschemePresentation(tuple(hypersurface_presentation(g) for g in gens), label)


def as_subscheme(P, label=None):
    if isinstance(P, SubschemePresentation):
        return P
    return SubschemePresentation((P,), label)


def sum_divisors(D, E):
    if D.ambient != E.ambient:
        raise AmbientMismatch("sum of presentations on different ambients")
    deg = lambda a, b: tuple(x + y for x, y in zip(a, b))  # noqa: E731
    return DivisorPresentation(
        D.s_D * E.s_D,
        deg(D.L_degree, E.L_degree),
        tuple(s * t for s in D.L_sections for t in E.L_sections),
        deg(D.M_degree, E.M_degree),
        tuple(s * t for s in D.M_sections for t in E.M_sections),
    )


def intersect(Y, W):
    if Y.ambient != W.ambient:
        raise AmbientMismatch("intersection of presentations on different ambients")
    return SubschemePresentation(Y.divisors + W.divisors)


def add_subschemes(Y, W):
    if Y.ambient != W.ambient:
        raise AmbientMismatch("sum of presentations on different ambients")
    return SubschemePresentation(tuple(sum_divisors(D, E) for D in Y.divisors for E in W.divisors))


def _pull_divisor(phi, D):
    if phi.target != D.ambient:
        raise AmbientMismatch("morphism target differs from the presentation's ambient")
    s = D.s_D.compose(phi)
    if s.is_zero():
        raise PullbackNotDefined("the image of the morphism lies inside the divisor")
    L = tuple(f.compose(phi) for f in D.L_sections)
    M = tuple(f.compose(phi) for f in D.M_sections)
    for name, secs in (("L", L), ("M", M)):
        for i, f in enumerate(secs):
            if f.is_zero():
                raise PullbackNotDefined(f"pulled-back {name} section {i} vanishes identically")
    return DivisorPresentation(s, L[0].multidegree, L, M[0].multidegree, M)


def pullback(phi, P):
    if isinstance(P, DivisorPresentation):
        return _pull_divisor(phi, P)
    return SubschemePresentation(tuple(_pull_divisor(phi, D) for D in P.divisors), P.label)


def diagonal_presentation(N):
    """The diagonal of P^N x P^N cut out by the 2x2 minors x_i y_j - x_j y_i."""
    if N < 1:
        raise PresentationError("the diagonal presentation needs N >= 1")
    amb = Ambient((N + 1, N + 1))
    x = [MultihomogPolynomial.variable(amb, 0, j) for j in range(N + 1)]
    y = [MultihomogPolynomial.variable(amb, 1, j) for j in range(N + 1)]
    divs = []
    for i in range(N + 1):
        for j in range(i + 1, N + 1):
            divs.append(hypersurface_presentation(x[i] * y[j] - x[j] * y[i]))
    return SubschemePresentation(tuple(divs), f"diagonal(P^{N})")


# -- validation ----------------------------------------------------------------

PROVEN_FAIL = "PROVEN-FAIL"
HEURISTIC_PASS = "HEURISTIC-PASS"
DEGREE_FAIL = "DEGREE-FAIL"


@dataclass
class ValidationReport:
    status: str
    degree_problems: list = field(default_factory=list)
    common_zeros: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return self.status == HEURISTIC_PASS


def _coordinate_points(ambient, limit=256):
    """Products of standard basis points e_j in each block, plus all-ones points."""
    choices = []
    for size in ambient.blocks:
        opts = []
        for j in range(size):
            opts.append(tuple(Fraction(int(i == j)) for i in range(size)))
        opts.append(tuple(Fraction(1) for _ in range(size)))
        choices.append(opts)
    out = []
    for combo in product(*choices):
        out.append(ProjectivePoint(list(combo)))
        if len(out) >= limit:
            break
    return out


def _modular_probe(secs, ambient, primes, trials, rng):
    """Count random F_p points at which every section vanishes (heuristic only)."""
    hits = 0
    for p in primes:
        for _ in range(trials):
            pt = []
            for size in ambient.blocks:
                blk = [rng.randrange(p) for _ in range(size)]
                if not any(blk):
                    blk[0] = 1
                pt.extend(blk)
            if all(_eval_mod(s, pt, p) == 0 for s in secs):
                hits += 1
    return hits


def _eval_mod(poly, pt, p):
    total = 0
    for e, c in poly.terms.items():
        term = c.numerator * pow(c.denominator, -1, p) if c.denominator % p else None
        if term is None:
            return None
        for x, k in zip(pt, e):
            if k:
                term = term * pow(x, k, p) % p
        total = (total + term) % p
    return total


def validate(Y, trial_points=None, seed=0, primes=(5, 7, 11, 13), trials=200):
    """Exact degree bookkeeping plus a heuristic search for common zeros of section families."""
    Y = as_subscheme(Y)
    report = ValidationReport(HEURISTIC_PASS)
    for i, D in enumerate(Y.divisors):
        report.degree_problems.extend(f"divisor {i}: {msg}" for msg in D.degree_problems())
    if report.degree_problems:
        report.status = DEGREE_FAIL
        return report
    pts = list(trial_points or []) + _coordinate_points(Y.ambient)
    rng = random.Random(seed)
    for i, D in enumerate(Y.divisors):
        for name, secs in (("L", D.L_sections), ("M", D.M_sections)):
            for pt in pts:
                if pt.ambient != Y.ambient:
                    raise AmbientMismatch("trial point on another ambient")
                if not any(s.evaluate(pt.flat) for s in secs):
                    report.common_zeros.append((i, name, pt))
            hits = _modular_probe(secs, Y.ambient, primes, trials, rng)
            if hits:
                report.notes.append(f"divisor {i}: {name} sections share {hits} zeros mod p "
                                    "(not a proof of a common zero over Q-bar)")
    if report.common_zeros:
        report.status = PROVEN_FAIL
    return report
