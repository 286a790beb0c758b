"""Multiprojective ambients, multihomogeneous polynomials, points and morphisms."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import gcd

from .arith import as_fraction, lcm
from .errors import AmbientMismatch, DegreeMismatch, FieldMismatch, IndeterminacyPoint, InvalidPoint
from .quadratic import QuadElement, QuadraticField

_ALIASES = "xyz"


@dataclass(frozen=True)
class Ambient:
    """P^{N_1} x ... x P^{N_k}, given by the coordinate counts N_i + 1."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise ValueError(f"invalid block sizes {self.blocks!r}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def projective(cls, *dims):
        """Ambient.projective(1, 1) is P^1 x P^1."""
        return cls(tuple(n + 1 for n in dims))

    @property
    def nvars(self):
        return sum(self.blocks)

    @property
    def nblocks(self):
        return len(self.blocks)

    def offsets(self):
        out, acc = [], 0
        for b in self.blocks:
            out.append(acc)
            acc += b
        return out

    def block_ranges(self):
        return [range(o, o + b) for o, b in zip(self.offsets(), self.blocks)]

    def var_index(self, block, j):
        if not 0 <= block < len(self.blocks) or not 0 <= j < self.blocks[block]:
            raise KeyError(f"no coordinate x{block}_{j} in ambient {self.blocks}")
        return self.offsets()[block] + j

    def var_name(self, idx):
        for b, r in enumerate(self.block_ranges()):
            if idx in r:
                j = idx - r.start
                if self.nblocks <= len(_ALIASES):
                    return f"{_ALIASES[b]}{j}"
                return f"x{b}_{j}"
        raise KeyError(idx)

    def multidegree(self, exps):
        return tuple(sum(exps[i] for i in r) for r in self.block_ranges())

    def monomials(self, degree):
        """All exponent vectors of the given multidegree, in lexicographic order."""
        degree = tuple(degree)
        if len(degree) != self.nblocks:
            raise DegreeMismatch(f"multidegree {degree} has wrong length for {self.blocks}")
        per_block = []
        for size, dg in zip(self.blocks, degree):
            opts = []
            for combo in combinations_with_replacement(range(size), dg):
                e = [0] * size
                for i in combo:
                    e[i] += 1
                opts.append(tuple(e))
            per_block.append(sorted(opts, reverse=True))
        return [sum(parts, ()) for parts in product(*per_block)]

    def product(self, other):
        return Ambient(self.blocks + other.blocks)


class MultihomogPolynomial:
    """Sparse polynomial with rational coefficients, multihomogeneous on an Ambient."""

    __slots__ = ("ambient", "terms", "multidegree")

    def __init__(self, ambient, terms, multidegree=None):
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != ambient.nvars:
                raise ValueError(f"exponent vector {e} does not match ambient {ambient.blocks}")
            c = as_fraction(c)
            if c:
                clean[e] = c
        degs = {ambient.multidegree(e) for e in clean}
        if len(degs) > 1:
            from .errors import NotHomogeneous

            raise NotHomogeneous(f"terms of different multidegrees {sorted(degs)}")
        if degs:
            md = degs.pop()
            if multidegree is not None and tuple(multidegree) != md:
                raise DegreeMismatch(f"declared multidegree {tuple(multidegree)} but terms have {md}")
        else:
            md = tuple(multidegree) if multidegree is not None else (0,) * ambient.nblocks
        if len(md) != ambient.nblocks or any(x < 0 for x in md):
            raise DegreeMismatch(f"invalid multidegree {md}")
        self.ambient = ambient
        self.terms = clean
        self.multidegree = tuple(md)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, ambient, c=1):
        return cls(ambient, {(0,) * ambient.nvars: c})

    @classmethod
    def zero(cls, ambient, multidegree=None):
        return cls(ambient, {}, multidegree)

    @classmethod
    def variable(cls, ambient, block, j):
        e = [0] * ambient.nvars
        e[ambient.var_index(block, j)] = 1
        return cls(ambient, {tuple(e): 1})

    @classmethod
    def monomial(cls, ambient, exps, coeff=1):
        return cls(ambient, {tuple(exps): coeff})

    # -- basic protocol -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultihomogPolynomial):
            return NotImplemented
        return (self.ambient == other.ambient and self.terms == other.terms
                and self.multidegree == other.multidegree)

    def __hash__(self):
        return hash((self.ambient, frozenset(self.terms.items()), self.multidegree))

    def _check(self, other):
        if other.ambient != self.ambient:
            raise AmbientMismatch(f"{self.ambient.blocks} vs {other.ambient.blocks}")

    def __add__(self, other):
        if not isinstance(other, MultihomogPolynomial):
            return NotImplemented
        self._check(other)
        if self.multidegree != other.multidegree and self and other:
            raise DegreeMismatch(f"cannot add degrees {self.multidegree} and {other.multidegree}")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        md = self.multidegree if self else other.multidegree
        return MultihomogPolynomial(self.ambient, terms, md)

    def __neg__(self):
        return MultihomogPolynomial(self.ambient, {e: -c for e, c in self.terms.items()},
                                    self.multidegree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultihomogPolynomial(self.ambient, {e: c * other for e, c in self.terms.items()},
                                        self.multidegree)
        if not isinstance(other, MultihomogPolynomial):
            return NotImplemented
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        md = tuple(a + b for a, b in zip(self.multidegree, other.multidegree))
        return MultihomogPolynomial(self.ambient, terms, md)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MultihomogPolynomial.constant(self.ambient)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, coords):
        """Value at a flat tuple of coordinates (Fractions or QuadElements)."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(coords, e):
                if k:
                    term = term * (x**k)
            total = total + term
        return total

    def compose(self, morphism):
        """Substitute the components of ``morphism`` (target = self.ambient)."""
        if morphism.target != self.ambient:
            raise AmbientMismatch("morphism target is not the polynomial's ambient")
        flat = [c for block in morphism.components for c in block]
        md = [0] * morphism.source.nblocks
        for tb, k in enumerate(self.multidegree):
            for i, x in enumerate(morphism.block_degrees[tb]):
                md[i] += k * x
        out = MultihomogPolynomial.zero(morphism.source, md)
        powers = {}
        for e, c in self.terms.items():
            term = MultihomogPolynomial.constant(morphism.source, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = flat[i] ** k
                    term = term * powers[(i, k)]
            out = out + term
        return MultihomogPolynomial(morphism.source, out.terms, md)

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        from .polyparse import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"MultihomogPolynomial({str(self)!r}, degree={self.multidegree})"


def parse_polynomial(text, ambient, multidegree=None):
    from .polyparse import parse_polynomial as _parse

    return _parse(text, ambient, multidegree)


def monomial_basis(ambient, degree):
    return [MultihomogPolynomial.monomial(ambient, e) for e in ambient.monomials(degree)]


# -- points ----------------------------------------------------------------


def _coerce_entry(x, field_):
    if field_ is None:
        if isinstance(x, QuadElement):
            raise FieldMismatch("quadratic coordinate in a rational point")
        return as_fraction(x)
    if isinstance(x, QuadElement):
        if x.field != field_:
            raise FieldMismatch(f"{x.field} coordinate in a point over {field_}")
        return x
    return QuadElement(as_fraction(x), 0, field_)


class ProjectivePoint:
    """A point of a multiprojective ambient over Q (field None) or Q(sqrt d)."""

    __slots__ = ("ambient", "field", "coords")

    def __init__(self, coords, field=None, ambient=None):
        if isinstance(field, int):
            field = QuadraticField(field)
        blocks = [tuple(_coerce_entry(x, field) for x in blk) for blk in coords]
        if not blocks:
            raise InvalidPoint("a point needs at least one block")
        amb = Ambient(tuple(len(b) for b in blocks))
        if ambient is not None and ambient != amb:
            raise AmbientMismatch(f"coordinates {amb.blocks} do not fit ambient {ambient.blocks}")
        for i, blk in enumerate(blocks):
            if not any(blk):
                raise InvalidPoint(f"block {i} has all coordinates zero")
        self.ambient = amb
        self.field = field
        self.coords = tuple(blocks)

    @property
    def flat(self):
        return tuple(x for blk in self.coords for x in blk)

    @property
    def is_rational(self):
        return self.field is None

    def lift(self, field_):
        """The same point viewed over a quadratic field."""
        if self.field == field_:
            return self
        if self.field is not None:
            raise FieldMismatch(f"cannot move a point over {self.field} to {field_}")
        return ProjectivePoint(self.coords, field_)

    def scaled(self, scalars):
        """Multiply block i by scalars[i] (a different representative of the same point)."""
        return ProjectivePoint([tuple(c * x for x in blk) for c, blk in zip(scalars, self.coords)],
                               self.field)

    def pair(self, other):
        """The point (self, other) of the product ambient."""
        if self.field != other.field:
            raise FieldMismatch("points over different fields")
        return ProjectivePoint(self.coords + other.coords, self.field)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return points_equal(self, other)

    def __hash__(self):
        n = normalize_point(self)
        return hash(tuple(tuple((x.a, x.b) if isinstance(x, QuadElement) else (x, 0)
                                for x in blk) for blk in n.coords))

    def __repr__(self):
        inner = " ; ".join(":".join(str(x) for x in blk) for blk in self.coords)
        suffix = f" over {self.field}" if self.field else ""
        return f"({inner}){suffix}"


def evaluate(poly, point):
    if isinstance(point, ProjectivePoint):
        if point.ambient != poly.ambient:
            raise AmbientMismatch(f"{point.ambient.blocks} vs {poly.ambient.blocks}")
        return poly.evaluate(point.flat)
    return poly.evaluate(tuple(point))


def _normalize_rational_block(blk):
    den = 1
    for x in blk:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in blk]
    g = 0
    for n in ints:
        g = gcd(g, n)
    ints = [n // g for n in ints]
    first = next(n for n in ints if n)
    if first < 0:
        ints = [-n for n in ints]
    return tuple(Fraction(n) for n in ints)


def _normalize_quadratic_block(blk, field_):
    comps = [c for x in blk for c in (x.a, x.b)]
    den = 1
    for c in comps:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in comps]
    g = 0
    for n in ints:
        g = gcd(g, n)
    ints = [n // g for n in ints]
    first = next(n for n in ints if n)
    if first < 0:
        ints = [-n for n in ints]
    return tuple(QuadElement(ints[2 * i], ints[2 * i + 1], field_) for i in range(len(blk)))


def normalize_point(pt):
    """Canonical integral representative with content removed and a positive leading entry."""
    for i, blk in enumerate(pt.coords):
        if not any(blk):
            raise InvalidPoint(f"block {i} has all coordinates zero")
    if pt.field is None:
        blocks = [_normalize_rational_block(b) for b in pt.coords]
    else:
        blocks = [_normalize_quadratic_block(b, pt.field) for b in pt.coords]
    return ProjectivePoint(blocks, pt.field)


def points_equal(p, q):
    if p.ambient != q.ambient:
        raise AmbientMismatch(f"{p.ambient.blocks} vs {q.ambient.blocks}")
    if p.field != q.field:
        if p.field is not None and q.field is not None:
            raise FieldMismatch(f"{p.field} vs {q.field}")
        f = p.field or q.field
        p, q = p.lift(f), q.lift(f)
    for bp, bq in zip(p.coords, q.coords):
        n = len(bp)
        for i in range(n):
            for j in range(i + 1, n):
                if bp[i] * bq[j] - bp[j] * bq[i]:
                    return False
    return True


# -- morphisms ---------------------------------------------------------------


class Morphism:
    """A map source -> target given blockwise by multihomogeneous polynomial tuples."""

    __slots__ = ("source", "target", "components", "block_degrees")

    def __init__(self, source, target, components):
        comps = tuple(tuple(block) for block in components)
        if len(comps) != target.nblocks:
            raise DegreeMismatch(f"need {target.nblocks} component blocks, got {len(comps)}")
        degs = []
        for tb, (size, block) in enumerate(zip(target.blocks, comps)):
            if len(block) != size:
                raise DegreeMismatch(f"target block {tb} needs {size} components, got {len(block)}")
            for f in block:
                if f.ambient != source:
                    raise AmbientMismatch("component not on the source ambient")
            nonzero = {f.multidegree for f in block if f}
            if not nonzero:
                raise DegreeMismatch(f"target block {tb} has only zero components")
            if len(nonzero) > 1:
                raise DegreeMismatch(f"target block {tb} mixes multidegrees {sorted(nonzero)}")
            md = nonzero.pop()
            block = tuple(f if f else MultihomogPolynomial.zero(source, md) for f in block)
            comps = comps[:tb] + (block,) + comps[tb + 1:]
            degs.append(md)
        self.source = source
        self.target = target
        self.components = comps
        self.block_degrees = tuple(degs)

    @classmethod
    def from_strings(cls, source, target, components):
        return cls(source, target,
                   [[parse_polynomial(s, source) for s in block] for block in components])

    @classmethod
    def identity(cls, ambient):
        return cls(ambient, ambient,
                   [[MultihomogPolynomial.variable(ambient, b, j) for j in range(size)]
                    for b, size in enumerate(ambient.blocks)])

    def __call__(self, pt):
        return apply_morphism(self, pt)


def apply_morphism(phi, pt):
    if pt.ambient != phi.source:
        raise AmbientMismatch(f"point in {pt.ambient.blocks}, morphism source {phi.source.blocks}")
    flat = pt.flat
    blocks = []
    for tb, block in enumerate(phi.components):
        vals = tuple(f.evaluate(flat) for f in block)
        if not any(vals):
            raise IndeterminacyPoint(f"target block {tb} vanishes identically at {pt!r}")
        blocks.append(vals)
    return ProjectivePoint(blocks, pt.field)
