"""The standard proper set of absolute values on Q: the archimedean place and one place per prime."""

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import as_fraction, check_prime, factor_rational, support, valuation
from .errors import InfiniteValuation
from .logvalue import LogValue, Magnitude


@dataclass(frozen=True)
class Place:
    """A place of Q. ``p is None`` means the archimedean place."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            check_prime(self.p)

    @classmethod
    def archimedean(cls):
        return cls(None)

    @classmethod
    def finite(cls, p):
        return cls(p)

    @property
    def is_archimedean(self):
        return self.p is None

    @property
    def epsilon(self):
        return 1 if self.p is None else 0

    @property
    def base(self):
        return self

    @property
    def local_degree(self):
        return 1

    def __str__(self):
        return "inf" if self.p is None else f"p={self.p}"

    def sort_key(self):
        return (0, 0) if self.p is None else (1, self.p)


INF = Place.archimedean()


def absolute_value(x, v):
    """|x|_v as an exact Magnitude; p-adic values are normalized as p^(-v_p(x))."""
    x = as_fraction(x)
    if x == 0:
        return Magnitude(Fraction(0))
    if v.is_archimedean:
        return Magnitude.of_rational(x)
    return Magnitude.of_rational(Fraction(v.p) ** -valuation(x, v.p))


def log_abs_sum(x):
    """The formal sum over all places of log|x|_v (not yet simplified).

    Finite places contribute -v_p(x) log p and the archimedean place log|x|;
    :meth:`LogValue.canonical` rewrites the latter over primes and the result
    collapses to zero.
    """
    x = as_fraction(x)
    if x == 0:
        raise InfiniteValuation("log|0| is -infinity")
    fin = {p: -e for p, e in factor_rational(x).items()}
    return LogValue(fin, ((1, Magnitude.of_rational(x)),))


def prime_support(values):
    return support(values)


@dataclass
class BoundProfile:
    """An M_Q-constant: nonnegative bound per place, zero off a finite set.

    Values are floats, or exact :class:`LogValue` instances when the bound is
    known exactly.
    """

    per_place: dict = field(default_factory=dict)

    def __post_init__(self):
        for place, val in self.per_place.items():
            if float(val) < 0:
                raise ValueError(f"negative bound at {place}")

    def __getitem__(self, place):
        return self.per_place.get(getattr(place, "base", place), 0.0)

    def as_float(self, place):
        return float(self[place])

    def support(self):
        return {pl for pl, val in self.per_place.items() if float(val) != 0}

    def is_zero(self):
        return not self.support()

    def to_json(self):
        return {str(pl): float(val) for pl, val in sorted(self.per_place.items(),
                                                          key=lambda kv: kv[0].sort_key())}
