"""Truncated, evenly graded commutative rings over Q.

A ring is presented by even-degree generators, homogeneous relations and a
truncation degree ``2n``; everything above degree ``2n`` is zero.  Normal
forms are computed degree by degree: the relation ideal is spanned in each
degree, row-reduced, and the non-pivot monomials form the basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import linalg
from .poly import (
    Monomial,
    Poly,
    format_monomial,
    format_terms,
    mono_degree,
    mono_mul,
    monomials_of_degree,
    order_key,
)

__all__ = [
    "RingError",
    "RingPresentation",
    "GradedRing",
    "Cls",
    "RingMap",
    "Space",
    "IntegralityReport",
    "build_ring",
    "invert",
    "exp_class",
    "integrate",
    "integrality_check",
]


class RingError(ValueError):
    """Invalid presentation, mixed rings, or a non-invertible operand."""


@dataclass(frozen=True)
class RingPresentation:
    generators: tuple[tuple[str, int], ...]
    relations: tuple[Poly, ...]
    truncation: int

    def __post_init__(self):
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            dup = sorted({g for g in names if names.count(g) > 1})
            raise RingError(f"duplicate generator name(s): {', '.join(dup)}")
        for name, deg in self.generators:
            if deg < 2 or deg % 2:
                raise RingError(f"generator {name} has degree {deg}; only even degrees >= 2 are supported")
        if self.truncation < 0 or self.truncation % 2:
            raise RingError(f"truncation must be a non-negative even integer, got {self.truncation}")
        top = self.truncation + max((d for _, d in self.generators), default=0)
        for rel in self.relations:
            degs = {mono_degree(m, self.degrees) for m in rel}
            if len(degs) > 1:
                raise RingError(f"relation is not homogeneous (degrees {sorted(degs)})")
            if degs:
                (d,) = degs
                if d == 0:
                    raise RingError("relation of degree 0 would kill the unit")
                if d > top:
                    raise RingError(f"relation of degree {d} exceeds {top}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.generators)


class GradedRing:
    """Normal-form engine for one presentation.

    Instances are immutable once built; the multiplication table is filled
    lazily but deterministically.
    """

    def __init__(self, presentation: RingPresentation):
        self.presentation = presentation
        self.names = presentation.names
        self.degrees = presentation.degrees
        self.top = presentation.truncation
        self.nvars = len(self.names)
        self.basis: dict[int, tuple[Monomial, ...]] = {}
        self._nf: dict[int, dict[Monomial, tuple[Fraction, ...]]] = {}
        self._mul_cache: dict[tuple[Monomial, Monomial], tuple[int, tuple[Fraction, ...]] | None] = {}
        for d in range(0, self.top + 1, 2):
            self._build_degree(d)
        self.zero = Cls(self, {})
        self.one = Cls(self, {0: (Fraction(1),)})

    def _build_degree(self, d: int) -> None:
        monos = monomials_of_degree(d, self.degrees)
        cols = list(reversed(monos))  # leading (largest) monomial first
        index = {m: i for i, m in enumerate(cols)}
        rows = []
        for rel in self.presentation.relations:
            if not rel:
                continue
            rdeg = mono_degree(next(iter(rel)), self.degrees)
            if rdeg > d:
                continue
            for m in monomials_of_degree(d - rdeg, self.degrees):
                row = [Fraction(0)] * len(cols)
                for rm, c in rel.items():
                    row[index[mono_mul(m, rm)]] += c
                rows.append(row)
        reduced, pivots = linalg.rref(rows, len(cols))
        pivot_set = set(pivots)
        free = [i for i in range(len(cols)) if i not in pivot_set]
        basis = tuple(sorted((cols[i] for i in free), key=order_key))
        bindex = {m: i for i, m in enumerate(basis)}
        nf: dict[Monomial, tuple[Fraction, ...]] = {}
        for m in basis:
            v = [Fraction(0)] * len(basis)
            v[bindex[m]] = Fraction(1)
            nf[m] = tuple(v)
        for row, p in zip(reduced, pivots):
            v = [Fraction(0)] * len(basis)
            for i in free:
                if row[i]:
                    v[bindex[cols[i]]] = -row[i]
            nf[cols[p]] = tuple(v)
        if d == 0 and basis != ((0,) * self.nvars,):
            raise RingError("degree-0 part of the quotient is not spanned by 1")
        self.basis[d] = basis
        self._nf[d] = nf

    # construction helpers -------------------------------------------------

    @property
    def n(self) -> int:
        return self.top // 2

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def betti(self) -> tuple[int, ...]:
        """Dimensions of the even-degree pieces 0, 2, ..., 2n."""
        return tuple(self.dim(d) for d in range(0, self.top + 1, 2))

    def monomial_nf(self, m: Monomial) -> tuple[int, tuple[Fraction, ...]] | None:
        """Normal form of a monomial as ``(degree, coordinates)``; None if truncated."""
        d = mono_degree(m, self.degrees)
        if d > self.top:
            return None
        return d, self._nf[d][m]

    def from_poly(self, p: Mapping[Monomial, Fraction]) -> Cls:
        comp: dict[int, list[Fraction]] = {}
        for m, c in p.items():
            r = self.monomial_nf(m)
            if r is None or not c:
                continue
            d, v = r
            acc = comp.setdefault(d, [Fraction(0)] * len(v))
            for i, x in enumerate(v):
                if x:
                    acc[i] += c * x
        return Cls(self, comp)

    def gen(self, name: str) -> Cls:
        i = self.names.index(name)
        m = [0] * self.nvars
        m[i] = 1
        return self.from_poly({tuple(m): Fraction(1)})

    def gens(self) -> tuple[Cls, ...]:
        return tuple(self.gen(g) for g in self.names)

    def scalar(self, c) -> Cls:
        return self.one * Fraction(c)

    def element(self, text: str) -> Cls:
        from .expr import parse_poly

        return self.from_poly(parse_poly(text, self.names))

    def basis_class(self, d: int, i: int) -> Cls:
        v = [Fraction(0)] * self.dim(d)
        v[i] = Fraction(1)
        return Cls(self, {d: v})

    def basis_strings(self, d: int) -> list[str]:
        return [format_monomial(m, self.names) for m in self.basis.get(d, ())]

    def _mul_monomials(self, a: Monomial, b: Monomial):
        key = (a, b) if a <= b else (b, a)
        if key not in self._mul_cache:
            self._mul_cache[key] = self.monomial_nf(mono_mul(a, b))
        return self._mul_cache[key]

    def __repr__(self) -> str:
        gens = ", ".join(f"{g}:{d}" for g, d in self.presentation.generators)
        return f"GradedRing([{gens}], top={self.top}, betti={self.betti()})"


def build_ring(p: RingPresentation) -> GradedRing:
    return GradedRing(p)


class Cls:
    """A class in normal form: one coordinate vector per nonzero degree."""

    __slots__ = ("ring", "comp", "_hash")

    def __init__(self, ring: GradedRing, comp: Mapping[int, Sequence[Fraction]]):
        self.ring = ring
        self.comp = {d: tuple(Fraction(x) for x in v) for d, v in comp.items() if any(v)}
        self._hash = None

    def _check(self, other: Cls) -> None:
        if not isinstance(other, Cls):
            raise TypeError(f"expected Cls, got {type(other).__name__}")
        if other.ring is not self.ring:
            raise RingError("operands live in different rings")

    def _coerce(self, other) -> Cls:
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        self._check(other)
        return other

    def __add__(self, other) -> Cls:
        other = self._coerce(other)
        comp = dict(self.comp)
        for d, v in other.comp.items():
            if d in comp:
                comp[d] = tuple(a + b for a, b in zip(comp[d], v))
            else:
                comp[d] = v
        return Cls(self.ring, comp)

    __radd__ = __add__

    def __neg__(self) -> Cls:
        return Cls(self.ring, {d: tuple(-x for x in v) for d, v in self.comp.items()})

    def __sub__(self, other) -> Cls:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Cls:
        return self._coerce(other) - self

    def __mul__(self, other) -> Cls:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cls(self.ring, {d: tuple(q * x for x in v) for d, v in self.comp.items()})
        self._check(other)
        R = self.ring
        acc: dict[int, list[Fraction]] = {}
        for d1, v1 in self.comp.items():
            b1 = R.basis[d1]
            for d2, v2 in other.comp.items():
                if d1 + d2 > R.top:
                    continue
                b2 = R.basis[d2]
                for i, x in enumerate(v1):
                    if not x:
                        continue
                    for j, y in enumerate(v2):
                        if not y:
                            continue
                        d, w = R._mul_monomials(b1[i], b2[j])
                        row = acc.setdefault(d, [Fraction(0)] * len(w))
                        xy = x * y
                        for k, z in enumerate(w):
                            if z:
                                row[k] += xy * z
        return Cls(R, acc)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Cls:
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * invert(other)

    def __pow__(self, k: int) -> Cls:
        if k < 0:
            return invert(self) ** (-k)
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, Cls):
            return NotImplemented
        return other.ring is self.ring and other.comp == self.comp

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((id(self.ring), tuple(sorted(self.comp.items()))))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.comp)

    # inspection ------------------------------------------------------------

    @property
    def constant(self) -> Fraction:
        return self.comp.get(0, (Fraction(0),))[0]

    def part(self, d: int) -> Cls:
        return Cls(self.ring, {d: self.comp[d]} if d in self.comp else {})

    def positive_part(self) -> Cls:
        return Cls(self.ring, {d: v for d, v in self.comp.items() if d > 0})

    def coords(self, d: int) -> tuple[Fraction, ...]:
        return self.comp.get(d, (Fraction(0),) * self.ring.dim(d))

    def degrees(self) -> list[int]:
        return sorted(self.comp)

    def is_homogeneous(self, d: int) -> bool:
        return all(k == d for k in self.comp)

    def terms(self) -> Iterator[tuple[int, Monomial, Fraction]]:
        for d in sorted(self.comp):
            for m, c in zip(self.ring.basis[d], self.comp[d]):
                if c:
                    yield d, m, c

    def to_poly(self) -> Poly:
        return {m: c for _, m, c in self.terms()}

    def format_degree(self, d: int) -> str:
        return format_terms(
            (c, format_monomial(m, self.ring.names))
            for m, c in zip(self.ring.basis.get(d, ()), self.coords(d))
        )

    def __str__(self) -> str:
        return format_terms((c, format_monomial(m, self.ring.names)) for _, m, c in self.terms())

    def __repr__(self) -> str:
        return f"Cls({self})"


def invert(x: Cls) -> Cls:
    """Multiplicative inverse via the geometric series in the nilpotent part."""
    c0 = x.constant
    if c0 == 0:
        raise RingError("cannot invert a class with zero degree-0 component")
    u = x.positive_part() * (-1 / c0)
    out = x.ring.one
    term = x.ring.one
    for _ in range(x.ring.n):
        term = term * u
        if not term:
            break
        out = out + term
    return out * (1 / c0)


def exp_class(x: Cls) -> Cls:
    if x.constant != 0:
        raise RingError("exp_class needs a class with zero degree-0 component")
    out = x.ring.one
    term = x.ring.one
    for k in range(1, x.ring.n + 1):
        term = term * x * Fraction(1, k)
        if not term:
            break
        out = out + term
    return out


@dataclass
class IntegralityReport:
    passed: bool
    offenders: list[tuple[int, str, Fraction]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def integrality_check(x: Cls) -> IntegralityReport:
    """Coefficient integrality in the monomial basis.

    This is only a proxy for living in integral cohomology: it says nothing
    about torsion, nor about whether the monomial basis spans the lattice.
    """
    bad = [
        (d, format_monomial(m, x.ring.names), c)
        for d, m, c in x.terms()
        if c.denominator != 1
    ]
    return IntegralityReport(not bad, bad)


class RingMap:
    """Ring homomorphism determined by the images of the source generators."""

    def __init__(self, source: GradedRing, target: GradedRing, images: Mapping[str, Cls]):
        missing = [g for g in source.names if g not in images]
        if missing:
            raise RingError(f"ring map lacks images for {', '.join(missing)}")
        for g, d in source.presentation.generators:
            img = images[g]
            if img.ring is not target:
                raise RingError(f"image of {g} lives in the wrong ring")
            if img and not img.is_homogeneous(d):
                raise RingError(f"image of {g} is not homogeneous of degree {d}")
        self.source = source
        self.target = target
        self.images = tuple(images[g] for g in source.names)
        self._cache: dict[Monomial, Cls] = {}
        for rel in source.presentation.relations:
            if self._apply_poly(rel):
                raise RingError("ring map does not respect a source relation")

    def _monomial(self, m: Monomial) -> Cls:
        if m not in self._cache:
            out = self.target.one
            for img, e in zip(self.images, m):
                if e:
                    out = out * img**e
            self._cache[m] = out
        return self._cache[m]

    def _apply_poly(self, p: Mapping[Monomial, Fraction]) -> Cls:
        out = self.target.zero
        for m, c in p.items():
            out = out + self._monomial(m) * c
        return out

    def __call__(self, x: Cls) -> Cls:
        if x.ring is not self.source:
            raise RingError("ring map applied to a class from another ring")
        return self._apply_poly(x.to_poly())

    def matrix(self, d: int) -> list[list[Fraction]]:
        """Matrix of the degree-``d`` piece: rows index target coordinates."""
        cols = [self(self.source.basis_class(d, i)).coords(d) for i in range(self.source.dim(d))]
        return [[col[r] for col in cols] for r in range(self.target.dim(d))]

    def surjective_in(self, d: int) -> bool:
        return linalg.rank(self.matrix(d), self.source.dim(d)) == self.target.dim(d)

    def kernel(self, d: int) -> list[Cls]:
        vecs = linalg.nullspace(self.matrix(d), self.source.dim(d))
        return [Cls(self.source, {d: v}) for v in vecs]

    def preimage(self, y: Cls) -> Cls | None:
        """Some homogeneous-by-degree preimage of ``y``, or None."""
        out = self.source.zero
        for d in y.degrees():
            sol = linalg.solve(self.matrix(d), y.coords(d), self.source.dim(d))
            if sol is None:
                return None
            out = out + Cls(self.source, {d: sol})
        return out


@dataclass(eq=False)
class Space:
    """A closed evenly graded 'manifold': ring, point class, total Chern class."""

    ring: GradedRing
    point: Cls
    ctx: Cls | None = None
    name: str = ""

    def __post_init__(self):
        top = self.ring.top
        if self.ring.dim(top) != 1:
            raise RingError(f"top-degree quotient has dimension {self.ring.dim(top)}, expected 1")
        if self.point.ring is not self.ring or not self.point.is_homogeneous(top) or not self.point:
            raise RingError(f"point class must be a nonzero class of degree {top}")
        if self.ctx is not None:
            if self.ctx.ring is not self.ring:
                raise RingError("c(TX) lives in another ring")
            if self.ctx.constant != 1:
                raise RingError("c(TX) must have degree-0 component 1")

    @property
    def n(self) -> int:
        return self.ring.n

    def integrate(self, x: Cls) -> Fraction:
        return integrate(self, x)

    def euler_characteristic(self) -> Fraction:
        if self.ctx is None:
            raise RingError(f"space {self.name or '?'} has no total Chern class")
        return integrate(self, self.ctx)


def integrate(s: Space, x: Cls) -> Fraction:
    """Coefficient of the point class in the top-degree part of ``x``."""
    if x.ring is not s.ring:
        raise RingError("class does not belong to this space")
    top = s.ring.top
    return x.coords(top)[0] / s.point.coords(top)[0]


def product_of(classes: Iterable[Cls], ring: GradedRing) -> Cls:
    out = ring.one
    for c in classes:
        out = out * c
    return out
