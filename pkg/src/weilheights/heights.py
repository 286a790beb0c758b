"""Local and global heights attached to presentations, and arithmetic distance.

For a divisor presentation D = (s_D; L, s_j; M, t_k) the local height at a
place v is

    lambda_D(x, v) = log max_j min_k |s_j(x) / (s_D(x) t_k(x))|_v

evaluated on one fixed coordinate representative of x (the ratio has degree
zero, so the choice does not matter).  A subscheme presentation takes the
minimum over its divisors.  At finite places everything is done with
valuations; at archimedean places with exact magnitudes.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import prime_divisors, valuation
from .errors import (AmbientMismatch, FieldMismatch, HeightError, IdenticalPoints, InvalidPlace,
                     OnSubscheme, PresentationError)
from .geometry import MultihomogPolynomial, ProjectivePoint, normalize_point, points_equal
from .logvalue import LogValue
from .places import INF, BoundProfile, Place, absolute_value
from .presentations import as_subscheme, diagonal_presentation, hypersurface_presentation
from .quadratic import (ExtPlace, QuadElement, QuadraticField, ext_absolute_value, ext_valuation,
                        places_above)


@dataclass
class LocalHeightResult:
    value: LogValue
    place: object
    witnesses: tuple | None = None

    @property
    def is_infinite(self):
        return self.value.is_infinite

    def __str__(self):
        return f"{self.value.canonical().render()} at {self.place}"


@dataclass
class HeightValue:
    value: LogValue
    field_used: QuadraticField | None = None

    def __eq__(self, other):
        if isinstance(other, HeightValue):
            return self.value == other.value
        if isinstance(other, LogValue):
            return self.value == other
        return NotImplemented

    def __add__(self, other):
        return HeightValue(self.value + other.value, self.field_used or other.field_used)

    def to_float(self, precision_bits=53):
        return self.value.to_float(precision_bits)

    def __float__(self):
        return self.to_float()

    def __str__(self):
        return self.value.canonical().render()


# -- per-place absolute values ---------------------------------------------------
#
# A "scale" turns field elements into totally ordered keys for |.|_v:
# at a finite place the key is e with |z| = p^e (so e = -val(z)); at an
# archimedean place it is the exact Magnitude.


class _FiniteScale:
    def __init__(self, w):
        self.w = w
        self.p = w.p

    def abs(self, z):
        if isinstance(self.w, ExtPlace):
            return -ext_valuation(z, self.w)
        return Fraction(-valuation(z, self.p))

    @staticmethod
    def ratio(a_s, a_D, a_t):
        return a_s - a_D - a_t

    def log(self, key):
        return LogValue({self.p: key})


class _ArchScale:
    def __init__(self, w):
        self.w = w

    def abs(self, z):
        if isinstance(self.w, ExtPlace):
            return ext_absolute_value(z, self.w)
        return absolute_value(z, INF)

    @staticmethod
    def ratio(a_s, a_D, a_t):
        return a_s / (a_D * a_t)

    @staticmethod
    def log(key):
        return LogValue.log_magnitude(key)


def _scale(w):
    return _ArchScale(w) if w.is_archimedean else _FiniteScale(w)


def _point_for_place(x, w):
    if isinstance(w, ExtPlace):
        if x.field is None:
            return x.lift(w.field)
        if x.field != w.field:
            raise FieldMismatch(f"point over {x.field}, place of {w.field}")
        return x
    if not isinstance(w, Place):
        raise InvalidPlace(f"not a place: {w!r}")
    if x.field is not None:
        raise FieldMismatch(f"point over {x.field} needs a place of that field, got {w}")
    return x


def _as_field_value(v):
    return Fraction(v) if isinstance(v, int) else v


def _evaluate_divisor(D, coords):
    sD = _as_field_value(D.s_D.evaluate(coords))
    svals = [_as_field_value(s.evaluate(coords)) for s in D.L_sections]
    tvals = [_as_field_value(t.evaluate(coords)) for t in D.M_sections]
    return sD, svals, tvals


def _divisor_key(D, coords, scale):
    """(key, j, k) of the max-min, or None when s_D(x) = 0 (value +infinity)."""
    sD, svals, tvals = _evaluate_divisor(D, coords)
    if not sD:
        return None
    a_D = scale.abs(sD)
    t_abs = [scale.abs(t) if t else None for t in tvals]
    if all(a is None for a in t_abs):
        raise PresentationError("the M sections vanish simultaneously at this point")
    best = None
    for j, s in enumerate(svals):
        if not s:
            continue
        a_s = scale.abs(s)
        inner = None
        for k, a_t in enumerate(t_abs):
            if a_t is None:
                continue
            r = scale.ratio(a_s, a_D, a_t)
            if inner is None or r < inner[0]:
                inner = (r, k)
        if best is None or inner[0] > best[0]:
            best = (inner[0], j, inner[1])
    if best is None:
        raise PresentationError("the L sections vanish simultaneously at this point")
    return best


def _check_ambient(P, x):
    if x.ambient != P.ambient:
        raise AmbientMismatch(f"point in {x.ambient.blocks}, presentation on {P.ambient.blocks}")


def local_height_divisor(D, x, w):
    _check_ambient(D, x)
    x = _point_for_place(x, w)
    best = _divisor_key(D, x.flat, _scale(w))
    if best is None:
        return LocalHeightResult(LogValue.infinity(), w, None)
    scale = _scale(w)
    return LocalHeightResult(scale.log(best[0]), w, (0, best[1], best[2]))


def local_height(Y, x, w):
    """min over the divisors of the presentation; +infinity iff x lies on every divisor."""
    Y = as_subscheme(Y)
    _check_ambient(Y, x)
    x = _point_for_place(x, w)
    scale = _scale(w)
    coords = x.flat
    best = None
    for i, D in enumerate(Y.divisors):
        key = _divisor_key(D, coords, scale)
        if key is None:
            continue
        if best is None or key[0] < best[0]:
            best = (key[0], i, key[1], key[2])
    if best is None:
        return LocalHeightResult(LogValue.infinity(), w, None)
    return LocalHeightResult(scale.log(best[0]), w, best[1:])


def replay_witness(Y, x, w, witnesses):
    """log |s_j / (s_D t_k)(x)|_w for the recorded (divisor, j, k)."""
    Y = as_subscheme(Y)
    i, j, k = witnesses
    D = Y.divisors[i]
    x = _point_for_place(x, w)
    sD, svals, tvals = _evaluate_divisor(D, x.flat)
    scale = _scale(w)
    return scale.log(scale.ratio(scale.abs(svals[j]), scale.abs(sD), scale.abs(tvals[k])))


# -- supports and global heights -----------------------------------------------------


def vanishing_divisors(Y, x):
    Y = as_subscheme(Y)
    return [i for i, D in enumerate(Y.divisors) if not D.s_D.evaluate(x.flat)]


def on_subscheme(Y, x):
    Y = as_subscheme(Y)
    return len(vanishing_divisors(Y, x)) == len(Y.divisors)


def _require_off(Y, x):
    if on_subscheme(Y, x):
        name = Y.label or "the subscheme"
        raise OnSubscheme(f"point {x!r} lies on {name}: every divisor vanishes",
                          vanishing_divisors(Y, x))


def _value_primes(z):
    if not z:
        return set()
    if isinstance(z, QuadElement):
        A, B, D = z.integral_parts()
        return prime_divisors(A * A - z.d * B * B) | prime_divisors(D)
    z = Fraction(z)
    return prime_divisors(z.numerator) | prime_divisors(z.denominator)


def candidate_primes(Y, x):
    """Primes dividing any evaluated quantity; lambda vanishes at every other finite place."""
    Y = as_subscheme(Y)
    coords = normalize_point(x).flat
    primes = set()
    for D in Y.divisors:
        sD, svals, tvals = _evaluate_divisor(D, coords)
        for z in [sD] + svals + tvals:
            primes |= _value_primes(z)
    return primes


def places_for(primes, field_=None):
    """Archimedean places followed by the places over ``primes``, over Q or Q(sqrt d)."""
    base = [INF] + [Place(p) for p in sorted(primes)]
    if field_ is None:
        return base
    return [w for v in base for w in places_above(v, field_)]


def local_height_support(Y, x, field_=None):
    """Places with nonzero local height; every omitted place contributes 0."""
    Y = as_subscheme(Y)
    _check_ambient(Y, x)
    _require_off(Y, x)
    f = field_ if field_ is not None else x.field
    out = {}
    for w in places_for(candidate_primes(Y, x), f):
        res = local_height(Y, x, w)
        if not res.value.is_structurally_zero() and res.value.sign() != 0:
            out[w] = res
    return out


def global_height(Y, x, field_=None):
    """(1/[L:Q]) sum_w [L_w:Q_v] lambda(x, w) over a field L containing the coordinates.

    ``field_`` (a QuadraticField or squarefree int) forces the sum over the
    places of Q(sqrt d) even for a rational point.
    """
    Y = as_subscheme(Y)
    if isinstance(field_, int):
        field_ = QuadraticField(field_)
    if x.field is not None and field_ is not None and x.field != field_:
        raise FieldMismatch(f"point over {x.field}, requested {field_}")
    f = field_ or x.field
    total = LogValue.zero()
    for w, res in local_height_support(Y, x, f).items():
        weight = Fraction(w.local_degree, 1 if f is None else 2)
        total = total + res.value.scale(weight)
    return HeightValue(total, f)


def hyperplane(ambient, block=0, j=0):
    return hypersurface_presentation(MultihomogPolynomial.variable(ambient, block, j))


def _naive_log_max(x):
    """(1/[L:Q]) sum_w [L_w:Q_v] log max_i |x_i|_w for a single-block point."""
    f = x.field
    coords = normalize_point(x).coords[0]
    primes = set()
    for z in coords:
        primes |= _value_primes(z)
    total = LogValue.zero()
    for w in places_for(primes, f):
        scale = _scale(w)
        key = max(scale.abs(z) for z in coords if z)
        weight = Fraction(w.local_degree, 1 if f is None else 2)
        total = total + scale.log(key).scale(weight)
    return total


def weil_height(x):
    """Absolute logarithmic Weil height of a point of P^N.

    Computed directly as log max |x_i| over all places and cross-checked
    against the global height of the hyperplane presentation of the first
    nonvanishing coordinate (the product formula makes them agree).
    """
    if x.ambient.nblocks != 1:
        raise AmbientMismatch("weil_height needs a point of a single projective space")
    if x.field is None:
        direct = LogValue.log_rational(max(abs(c) for c in normalize_point(x).coords[0]))
    else:
        direct = _naive_log_max(x)
    i = next(i for i, c in enumerate(x.coords[0]) if c)
    via_presentation = global_height(hyperplane(x.ambient, 0, i), x).value
    if direct != via_presentation:
        raise HeightError(f"internal inconsistency: {direct} != {via_presentation} at {x!r}")
    return HeightValue(direct, x.field)


# -- arithmetic distance -------------------------------------------------------------


@lru_cache(maxsize=16)
def _diagonal(N):
    return diagonal_presentation(N)


def _distance_pair(x, y):
    if x.ambient.nblocks != 1 or x.ambient != y.ambient:
        raise AmbientMismatch("arithmetic distance needs two points of the same P^N")
    if x.field != y.field:
        if x.field is not None and y.field is not None:
            raise FieldMismatch("points over different quadratic fields")
        f = x.field or y.field
        x, y = x.lift(f), y.lift(f)
    return x, y, x.ambient.blocks[0] - 1


def arithmetic_distance_local(x, y, w):
    x, y, N = _distance_pair(x, y)
    if points_equal(x, y):
        return LocalHeightResult(LogValue.infinity(), w, None)
    return local_height(_diagonal(N), x.pair(y), w)


def arithmetic_distance_global(x, y):
    x, y, N = _distance_pair(x, y)
    if points_equal(x, y):
        raise IdenticalPoints("the global arithmetic distance of a point to itself is +infinity")
    return global_height(_diagonal(N), x.pair(y))


# -- independence of presentations (empirical) ---------------------------------------


def presentation_differences(Y1, Y2, samples):
    """Yield (point, place, lambda_1 - lambda_2) over the joint support of each sample."""
    Y1, Y2 = as_subscheme(Y1), as_subscheme(Y2)
    for x in samples:
        _require_off(Y1, x)
        _require_off(Y2, x)
        primes = candidate_primes(Y1, x) | candidate_primes(Y2, x)
        for w in places_for(primes, x.field):
            a = local_height(Y1, x, w).value
            b = local_height(Y2, x, w).value
            yield x, w, a, b


def estimate_bound_profile(Y1, Y2, samples):
    """sup over samples of |lambda_1 - lambda_2| per place of Q (a float M_Q-constant estimate)."""
    per = {INF: 0.0}
    for _, w, a, b in presentation_differences(Y1, Y2, samples):
        diff = a - b
        gap = 0.0 if diff.sign() == 0 else abs(diff.to_float())
        base = w.base if isinstance(w, ExtPlace) else w
        if gap > per.get(base, 0.0):
            per[base] = gap
        else:
            per.setdefault(base, 0.0)
    return BoundProfile(per)
