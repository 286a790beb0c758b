"""Exact logarithmic values.

A :class:`Magnitude` is the nonnegative square root of a nonnegative real
number ``beta`` lying in Q or in a real quadratic field Q(sqrt d) (embedded
with sqrt d > 0).  This covers |x| for rational x, |a + b sqrt d| under either
real embedding, complex moduli, and p^(-k/2).

A :class:`LogValue` is a formal sum ``sum_p c_p log p + sum_i w_i log m_i``
with rational ``c_p``, ``w_i`` and magnitudes ``m_i``, or +infinity.  Sign and
equality are decided exactly by raising to a common integer power.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .arith import as_fraction, check_prime, factor_rational, lcm
from .errors import InfiniteValuation, MixedPlaceComparison

# -- arithmetic on pairs (a, b) meaning a + b*sqrt(d) -----------------------


def _qmul(x, y, d):
    return (x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _qinv(x, d):
    n = x[0] * x[0] - d * x[1] * x[1]
    return (x[0] / n, -x[1] / n)


def _qpow(x, e, d):
    if e < 0:
        x, e = _qinv(x, d), -e
    out = (Fraction(1), Fraction(0))
    while e:
        if e & 1:
            out = _qmul(out, x, d)
        x = _qmul(x, x, d)
        e >>= 1
    return out


def quad_sign(a, b, d):
    """Sign of a + b*sqrt(d) for d > 0, sqrt(d) taken positive."""
    if b == 0 or d is None:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs: compare a^2 against d b^2
    diff = a * a - d * b * b
    if diff == 0:
        return 0
    return (1 if a > 0 else -1) if diff > 0 else (1 if b > 0 else -1)


def _rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None."""
    from math import isqrt

    n, m = q.numerator, q.denominator
    rn, rm = isqrt(n), isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


def quad_sqrt(a, b, d):
    """Return (u, v) with (u + v sqrt d)^2 = a + b sqrt d and u + v sqrt d > 0, or None."""
    if b == 0:
        r = _rational_sqrt(a) if a >= 0 else None
        if r is not None:
            return (r, Fraction(0))
        if a * d > 0:
            r = _rational_sqrt(a / d)
            if r is not None:
                return (Fraction(0), r)
        return None
    s = _rational_sqrt(a * a - d * b * b) if a * a - d * b * b >= 0 else None
    if s is None:
        return None
    for t in (s, -s):
        u2 = (a + t) / 2
        if u2 <= 0:
            continue
        u = _rational_sqrt(u2)
        if u is None:
            continue
        v = b / (2 * u)
        if quad_sign(u, v, d) < 0:
            u, v = -u, -v
        return (u, v)
    return None


@dataclass(frozen=True)
class Magnitude:
    """sqrt(a + b*sqrt(d)) as an exact nonnegative real number."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int | None = None

    def __post_init__(self):
        a, b = as_fraction(self.a), as_fraction(self.b)
        d = self.d if b != 0 else None
        if d is not None and d <= 1:
            raise ValueError("Magnitude radicand field must be real quadratic")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)
        if quad_sign(a, b, d) < 0:
            raise ValueError("Magnitude radicand must be nonnegative")

    @classmethod
    def of_rational(cls, x):
        x = as_fraction(x)
        return cls(x * x)

    @classmethod
    def sqrt_of(cls, q):
        return cls(as_fraction(q))

    @classmethod
    def of_real_quadratic(cls, a, b, d):
        """|a + b sqrt d| for d > 0."""
        a, b = as_fraction(a), as_fraction(b)
        return cls(a * a + d * b * b, 2 * a * b, d)

    @property
    def is_rational_square(self):
        return self.d is None

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def square(self):
        return (self.a, self.b, self.d)

    def _common(self, other):
        if self.d is not None and other.d is not None and self.d != other.d:
            raise MixedPlaceComparison(
                f"magnitudes from Q(sqrt {self.d}) and Q(sqrt {other.d})")
        return self.d if self.d is not None else other.d

    def __mul__(self, other):
        if not isinstance(other, Magnitude):
            return NotImplemented
        d = self._common(other)
        a, b = _qmul((self.a, self.b), (other.a, other.b), d or 0)
        return Magnitude(a, b, d)

    def __truediv__(self, other):
        if not isinstance(other, Magnitude):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero magnitude")
        d = self._common(other)
        a, b = _qmul((self.a, self.b), _qinv((other.a, other.b), d or 0), d or 0)
        return Magnitude(a, b, d)

    def compare(self, other):
        d = self._common(other)
        return quad_sign(self.a - other.a, self.b - other.b, d)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def to_mpf(self, prec=53):
        with mpmath.workprec(prec + 20):
            v = mpmath.mpf(self.a.numerator) / self.a.denominator
            if self.d is not None:
                v += mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(self.d)
            return mpmath.sqrt(v)

    def __float__(self):
        return float(self.to_mpf(60))

    def __str__(self):
        root = quad_sqrt(self.a, self.b, self.d) if self.d else quad_sqrt(self.a, Fraction(0), 1)
        if root is not None:
            return _format_quad(root[0], root[1], self.d)
        return f"sqrt({_format_quad(self.a, self.b, self.d)})"


def _format_quad(a, b, d):
    if b == 0 or d is None:
        return str(a)
    rad = f"sqrt({d})"
    bpart = rad if abs(b) == 1 else f"{abs(b)}*{rad}"
    if a == 0:
        return bpart if b > 0 else f"-{bpart}"
    return f"{a}{'+' if b > 0 else '-'}{bpart}"


class LogValue:
    """Exact real number sum_p c_p log p + sum_i w_i log m_i, or +infinity.

    Immutable.  ``finite`` maps primes to nonzero rational coefficients and
    ``arch`` is a tuple of (weight, Magnitude) pairs with nonzero weights and
    nonzero magnitudes.
    """

    __slots__ = ("_finite", "_arch", "_inf")

    def __init__(self, finite=None, arch=(), infinite=False):
        fin = {}
        arc = []
        if infinite:
            if finite or arch:
                raise ValueError("an infinite LogValue carries no finite data")
        else:
            for p, c in (finite or {}).items():
                c = as_fraction(c)
                if c:
                    fin[check_prime(p)] = c
            for w, m in arch:
                w = as_fraction(w)
                if m.is_zero():
                    raise ValueError("log of zero magnitude")
                if w and m != Magnitude(Fraction(1)):
                    arc.append((w, m))
        self._finite = dict(sorted(fin.items()))
        self._arch = tuple(arc)
        self._inf = bool(infinite)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def infinity(cls):
        return cls(infinite=True)

    @classmethod
    def log_prime(cls, p, coeff=1):
        return cls({p: coeff})

    @classmethod
    def log_magnitude(cls, m, weight=1):
        if m.is_zero():
            raise InfiniteValuation("log(0)")
        return cls(arch=((weight, m),))

    @classmethod
    def log_rational(cls, x):
        """log|x| written over primes (factorizes x)."""
        x = as_fraction(x)
        if x == 0:
            raise InfiniteValuation("log(0)")
        return cls(factor_rational(x))

    # -- accessors -------------------------------------------------------

    @property
    def finite_part(self):
        return dict(self._finite)

    @property
    def arch_part(self):
        return self._arch

    @property
    def is_infinite(self):
        return self._inf

    def is_structurally_zero(self):
        return not self._inf and not self._finite and not self._arch

    def place_signature(self):
        """'inf', a prime p, None (zero/infinite), or 'mixed'."""
        if self._inf or self.is_structurally_zero():
            return None
        if self._arch and not self._finite:
            return "inf"
        if not self._arch and len(self._finite) == 1:
            return next(iter(self._finite))
        return "mixed"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LogValue):
            return NotImplemented
        if self._inf or other._inf:
            return LogValue.infinity()
        fin = dict(self._finite)
        for p, c in other._finite.items():
            fin[p] = fin.get(p, 0) + c
        return LogValue(fin, self._arch + other._arch)

    def __neg__(self):
        if self._inf:
            raise ValueError("cannot negate +infinity")
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, LogValue):
            return NotImplemented
        if other._inf:
            raise ValueError("cannot subtract +infinity")
        return self + (-other)

    def scale(self, q):
        q = as_fraction(q)
        if self._inf:
            if q > 0:
                return self
            raise ValueError("cannot scale +infinity by a non-positive rational")
        return LogValue({p: q * c for p, c in self._finite.items()},
                        tuple((q * w, m) for w, m in self._arch))

    def __rmul__(self, q):
        return self.scale(q)

    # -- exact sign and comparison ---------------------------------------

    def _fields(self):
        return {m.d for _, m in self._arch if m.d is not None}

    def sign(self):
        """Exact sign in {-1, 0, 1}; +infinity has sign 1."""
        if self._inf:
            return 1
        if self.is_structurally_zero():
            return 0
        fields = self._fields()
        if len(fields) > 1:
            raise MixedPlaceComparison(f"values over several quadratic fields {sorted(fields)}")
        d = fields.pop() if fields else None
        # value = log R with R^T = prod p^(T c_p) * prod beta_i^(T w_i / 2)
        exps = [c for c in self._finite.values()] + [w / 2 for w, _ in self._arch]
        T = 1
        for e in exps:
            T = lcm(T, e.denominator)
        num, den = 1, 1
        for p, c in self._finite.items():
            e = int(c * T)
            if e > 0:
                num *= p**e
            else:
                den *= p ** (-e)
        acc = (Fraction(num, den), Fraction(0))
        for w, m in self._arch:
            acc = _qmul(acc, _qpow((m.a, m.b), int(w * T / 2), d or 0), d or 0)
        return quad_sign(acc[0] - 1, acc[1], d)

    def compare(self, other):
        if self._inf or other._inf:
            return (self._inf > other._inf) - (self._inf < other._inf)
        return (self - other).sign()

    def __eq__(self, other):
        if not isinstance(other, LogValue):
            return NotImplemented
        return self.compare(other) == 0

    __hash__ = None

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # -- canonical form --------------------------------------------------

    def canonical(self):
        """Rewrite rational magnitudes over primes and merge equal radicands.

        Irrational radicands are reduced to primitive integral form
        a + b sqrt d with gcd(a, b) = 1; the rational content moves to the
        prime part.
        """
        if self._inf:
            return self
        fin = dict(self._finite)

        def add_rational(q, w):
            for p, e in factor_rational(q).items():
                fin[p] = fin.get(p, 0) + w * e

        merged = {}
        for w, m in self._arch:
            if m.d is None:
                add_rational(m.a, w / 2)
                continue
            den = lcm(m.a.denominator, m.b.denominator)
            A, B = int(m.a * den), int(m.b * den)
            g = gcd(A, B)
            A, B = A // g, B // g
            add_rational(Fraction(g, den), w / 2)
            key = Magnitude(Fraction(A), Fraction(B), m.d)
            merged[key] = merged.get(key, 0) + w
        arch = tuple((w, m) for m, w in merged.items() if w)
        return LogValue(fin, arch)

    # -- floating point ------------------------------------------------------

    def to_mpf(self, precision_bits=53):
        if self._inf:
            return mpmath.inf
        with mpmath.workprec(precision_bits + 20):
            total = mpmath.mpf(0)
            for p, c in self._finite.items():
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.log(p)
            for w, m in self._arch:
                total += mpmath.mpf(w.numerator) / w.denominator * mpmath.log(m.to_mpf(precision_bits + 20))
            return +total

    def to_float(self, precision_bits=53):
        if self._inf:
            return float("inf")
        return float(self.to_mpf(max(precision_bits, 53)))

    def __float__(self):
        return self.to_float()

    # -- rendering -----------------------------------------------------------

    def render(self):
        """Exact text form, e.g. ``1/2*log(2) + log(15) - log(1+sqrt(2))``.

        Prime terms come first, ordered by smallest prime; primes with equal
        coefficients are merged into the log of their product.
        """
        if self._inf:
            return "inf"
        # primes sharing a coefficient print as one log: log(2) + log(3) -> log(6)
        groups = {}
        for p, c in self._finite.items():
            groups[c] = groups.get(c, 1) * p
        terms = sorted(((c, n) for c, n in groups.items()), key=lambda t: min(factor_rational(t[1])))
        terms = [(c, str(n)) for c, n in terms]
        for w, m in self._arch:
            root = str(m)
            if root.startswith("sqrt(") and m.d is not None:
                terms.append((w / 2, root[5:-1]))
            else:
                terms.append((w, root))
        if not terms:
            return "0"
        out = []
        for i, (c, arg) in enumerate(terms):
            mag = abs(c)
            body = f"log({arg})" if mag == 1 else f"{mag}*log({arg})"
            if i == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LogValue({self.render()!r})"


def _check_same_place(values):
    sig = None
    for v in values:
        s = v.place_signature()
        if s == "mixed":
            raise MixedPlaceComparison(f"{v} is not a single-place value")
        if s is None:
            continue
        if sig is None:
            sig = s
        elif sig != s:
            raise MixedPlaceComparison(f"values at places {sig} and {s}")


def lv_min(values):
    values = list(values)
    _check_same_place(values)
    return min(values, key=_Key)


def lv_max(values):
    values = list(values)
    _check_same_place(values)
    return max(values, key=_Key)


class _Key:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v.compare(other.v) < 0


def parse_logvalue(text):
    """Inverse of :meth:`LogValue.render`."""
    import re

    text = text.strip()
    if text == "inf":
        return LogValue.infinity()
    if text == "0":
        return LogValue.zero()
    term_re = re.compile(
        r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\*)?log\(([^()]*(?:\([^()]*\)[^()]*)*)\)\s*")
    pos, total = 0, LogValue.zero()
    while pos < len(text):
        mt = term_re.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse log expression at {text[pos:]!r}")
        sign = -1 if mt.group(1) == "-" else 1
        coeff = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
        total = total + _parse_log_arg(mt.group(3)).scale(sign * coeff)
        pos = mt.end()
    return total


def _parse_log_arg(arg):
    import re

    arg = arg.replace(" ", "")
    m = re.fullmatch(r"(-?\d+(?:/\d+)?)?([+-])?(?:(\d+(?:/\d+)?)\*)?sqrt\((\d+)\)", arg)
    if m and (m.group(1) is not None or m.group(2) in (None, "+")) and "sqrt" in arg:
        a = Fraction(m.group(1)) if m.group(1) else Fraction(0)
        b = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        if m.group(2) == "-":
            b = -b
        d = int(m.group(4))
        return LogValue.log_magnitude(Magnitude.of_real_quadratic(a, b, d))
    return LogValue.log_magnitude(Magnitude.of_rational(Fraction(arg)))
