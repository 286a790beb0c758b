"""Quadratic fields Q(sqrt d), their elements, and the places above each place of Q."""

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (as_fraction, check_prime, factor, hensel_sqrt, int_valuation,
                    is_squarefree, lcm, sqrt_2adic, sqrt_mod_prime, valuation)
from .errors import FieldMismatch, InfiniteValuation, InvalidField, InvalidPlace
from .logvalue import Magnitude
from .places import INF, Place

__all__ = [
    "QuadraticField", "QuadElement", "ExtPlace", "make_field", "norm", "trace",
    "conjugate", "places_above", "hensel_sqrt", "ext_valuation",
    "ext_absolute_value", "check_degree_formula", "check_norm_formula",
]


@dataclass(frozen=True)
class QuadraticField:
    d: int

    def __post_init__(self):
        d = self.d
        if not isinstance(d, int) or isinstance(d, bool) or d in (0, 1) or not is_squarefree(d):
            raise InvalidField(f"d must be a squarefree integer other than 0, 1; got {d!r}")

    @property
    def discriminant(self):
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def is_real(self):
        return self.d > 0

    @property
    def degree(self):
        return 2

    def __call__(self, a, b=0):
        return QuadElement(as_fraction(a), as_fraction(b), self)

    @property
    def sqrt_d(self):
        return self(0, 1)

    def __str__(self):
        return f"Q(sqrt({self.d}))"


def make_field(d):
    return QuadraticField(d)


class QuadElement:
    """a + b*sqrt(d) with rational a, b."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field):
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.field = field

    @property
    def d(self):
        return self.field.d

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(other, 0, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.d
        return QuadElement(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, self.field)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out, base = QuadElement(1, 0, self.field), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in a quadratic field")
        return QuadElement(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            return self.field == other.field and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self):
        return self.b == 0

    def norm(self):
        return self.a * self.a - self.d * self.b * self.b

    def trace(self):
        return 2 * self.a

    def conjugate(self):
        return QuadElement(self.a, -self.b, self.field)

    def integral_parts(self):
        """(A, B, D) with self = (A + B sqrt d) / D, A, B integers, D > 0 minimal."""
        D = lcm(self.a.denominator, self.b.denominator)
        return int(self.a * D), int(self.b * D), D

    def __repr__(self):
        return f"QuadElement({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.d})"
        bs = rad if abs(self.b) == 1 else f"{abs(self.b)}*{rad}"
        if self.a == 0:
            return bs if self.b > 0 else f"-{bs}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{bs}"


def norm(alpha):
    return alpha.norm()


def trace(alpha):
    return alpha.trace()


def conjugate(alpha):
    return alpha.conjugate()


_KINDS = ("real+", "real-", "complex", "split", "inert", "ramified")


@dataclass(frozen=True)
class ExtPlace:
    """A place w of Q(sqrt d) lying over the place ``base`` of Q.

    ``seed`` identifies a split place: the mod-p square root of d that sqrt d
    reduces to (for p = 2, its residue mod 4).
    """

    base: Place
    field: QuadraticField
    kind: str
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidPlace(f"unknown place kind {self.kind!r}")
        arch = self.kind in ("real+", "real-", "complex")
        if arch != self.base.is_archimedean:
            raise InvalidPlace(f"{self.kind} place cannot lie over {self.base}")
        if (self.kind == "split") != (self.seed is not None):
            raise InvalidPlace("exactly the split places carry a seed")

    @property
    def local_degree(self):
        return 1 if self.kind in ("real+", "real-", "split") else 2

    @property
    def is_archimedean(self):
        return self.base.is_archimedean

    @property
    def p(self):
        return self.base.p

    @property
    def epsilon(self):
        return self.base.epsilon

    def __str__(self):
        if self.is_archimedean:
            tag = {"real+": "+", "real-": "-", "complex": "complex"}[self.kind]
            return f"inf:{tag}"
        if self.kind == "split":
            return f"p={self.p}:split(seed={self.seed})"
        return f"p={self.p}:{'ram' if self.kind == 'ramified' else 'inert'}"

    def sort_key(self):
        return (self.base.sort_key(), _KINDS.index(self.kind), self.seed or 0)


def decomposition(field_, p):
    """'split', 'inert' or 'ramified' for a prime p in Q(sqrt d)."""
    d = field_.d
    if field_.discriminant % p == 0:
        return "ramified"
    if p == 2:
        return "split" if d % 8 == 1 else "inert"
    return "split" if pow(d % p, (p - 1) // 2, p) == 1 else "inert"


def places_above(v, field_):
    if v.is_archimedean:
        if field_.is_real:
            return [ExtPlace(v, field_, "real+"), ExtPlace(v, field_, "real-")]
        return [ExtPlace(v, field_, "complex")]
    kind = decomposition(field_, v.p)
    if kind != "split":
        return [ExtPlace(v, field_, kind)]
    seeds = (1, 3) if v.p == 2 else sqrt_mod_prime(field_.d, v.p)
    return [ExtPlace(v, field_, "split", s) for s in seeds]


def _as_element(alpha, field_):
    if isinstance(alpha, QuadElement):
        if alpha.field != field_:
            raise FieldMismatch(f"{alpha.field} vs {field_}")
        return alpha
    return QuadElement(as_fraction(alpha), 0, field_)


def _padic_root(w, k):
    if w.p == 2:
        return sqrt_2adic(w.field.d, k, w.seed)
    return hensel_sqrt(w.field.d, w.p, k, seed=w.seed)


def ext_valuation(alpha, w):
    """val_w(alpha), normalized so that |alpha|_w = p^(-val) extends |.|_p."""
    if w.is_archimedean:
        raise InvalidPlace("valuation at an archimedean place")
    alpha = _as_element(alpha, w.field)
    if not alpha:
        raise InfiniteValuation("valuation of 0")
    p = w.p
    if w.kind != "split":
        return Fraction(valuation(alpha.norm(), p), 2)
    A, B, D = alpha.integral_parts()
    # A + B*rho and A - B*rho are p-adic integers with product N, so each
    # valuation is at most v_p(N): precision v_p(N) + 1 decides it.
    k = int_valuation(A * A - w.field.d * B * B, p) + 1
    while True:
        mod = p**k
        t = (A + B * _padic_root(w, k)) % mod
        if t:
            return Fraction(int_valuation(t, p) - int_valuation(D, p))
        k += 1


def ext_absolute_value(alpha, w):
    alpha = _as_element(alpha, w.field)
    if not alpha:
        return Magnitude(Fraction(0))
    if w.kind == "real+":
        return Magnitude.of_real_quadratic(alpha.a, alpha.b, w.field.d)
    if w.kind == "real-":
        return Magnitude.of_real_quadratic(alpha.a, -alpha.b, w.field.d)
    if w.kind == "complex":
        return Magnitude.sqrt_of(alpha.norm())
    val = ext_valuation(alpha, w)
    return Magnitude.sqrt_of(Fraction(w.p) ** int(-2 * val))


@dataclass
class FormulaReport:
    name: str
    ok: bool
    field: QuadraticField
    place: Place
    details: dict = field(default_factory=dict)


def check_degree_formula(field_, v):
    above = places_above(v, field_)
    total = sum(w.local_degree for w in above)
    return FormulaReport(
        "degree-formula", total == field_.degree, field_, v,
        {"places": [str(w) for w in above], "degrees": [w.local_degree for w in above],
         "sum": total})


def check_norm_formula(alpha, v, float_check_bits=None):
    """prod_{w|v} |alpha|_w^[L_w:Q_v] = |N(alpha)|_v, decided exactly."""
    field_ = alpha.field
    if not alpha:
        raise InfiniteValuation("norm formula needs a nonzero element")
    n = alpha.norm()
    above = places_above(v, field_)
    details = {"norm": str(n), "places": [str(w) for w in above]}
    if v.is_archimedean:
        prod = Magnitude(Fraction(1))
        for w in above:
            m = ext_absolute_value(alpha, w)
            for _ in range(w.local_degree):
                prod = prod * m
        ok = prod == Magnitude.of_rational(n)
        details["product"] = str(prod)
        if float_check_bits is not None:
            import mpmath

            with mpmath.workprec(float_check_bits):
                lhs = mpmath.fprod([ext_absolute_value(alpha, w).to_mpf(float_check_bits) ** w.local_degree
                                    for w in above])
                rhs = abs(mpmath.mpf(n.numerator) / n.denominator)
                details["float_rel_err"] = float(abs(lhs - rhs) / rhs)
    else:
        vals = [ext_valuation(alpha, w) for w in above]
        lhs = sum(w.local_degree * val for w, val in zip(above, vals))
        ok = lhs == valuation(n, v.p)
        details.update({"valuations": [str(x) for x in vals], "v_p(norm)": valuation(n, v.p)})
    return FormulaReport("norm-formula", ok, field_, v, details)
