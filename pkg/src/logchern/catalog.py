"""Built-in spaces, arrangements and blowup centers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache

from .blowup import CenterSpec, make_center
from .divisor import SCArrangement, StrataData
from .ring import Cls, RingError, RingPresentation, Space, build_ring

MAX_DIM = 6


class CatalogError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


@dataclass(eq=False)
class CatalogEntry:
    name: str
    space: Space
    euler: int
    arrangements: dict[str, SCArrangement] = field(default_factory=dict)
    strata: dict[str, StrataData] = field(default_factory=dict)
    centers: dict[str, CenterSpec] = field(default_factory=dict)
    # arrangement whose deepest stratum is the center, for each center
    center_divisors: dict[str, str] = field(default_factory=dict)


@cache
def projective_space(n: int, gen: str = "H") -> Space:
    """``P^n``: ``Q[H]/(H^(n+1))`` with ``c(TP^n) = (1 + H)^(n+1)``."""
    if not 1 <= n <= MAX_DIM:
        raise RingError(f"projective space dimension must lie in 1..{MAX_DIM}, got {n}")
    ring = build_ring(RingPresentation(((gen, 2),), ({(n + 1,): Fraction(1)},), 2 * n))
    H = ring.gen(gen)
    return Space(ring, H**n, (ring.one + H) ** (n + 1), f"P{n}")


@cache
def point_space() -> Space:
    ring = build_ring(RingPresentation((), (), 0))
    return Space(ring, ring.one, ring.one, "pt")


def product(s1: Space, s2: Space) -> Space:
    """Kunneth product; clashing generator names get ``_1``/``_2`` suffixes."""
    if s1.n + s2.n > MAX_DIM:
        raise RingError(f"product dimension {s1.n + s2.n} exceeds {MAX_DIM}")
    r1, r2 = s1.ring, s2.ring
    clash = set(r1.names) & set(r2.names)
    names1 = [f"{g}_1" if g in clash else g for g in r1.names]
    names2 = [f"{g}_2" if g in clash else g for g in r2.names]
    n1, n2 = r1.nvars, r2.nvars
    gens = tuple(zip(names1, r1.degrees)) + tuple(zip(names2, r2.degrees))
    rels = tuple({m + (0,) * n2: c for m, c in rel.items()} for rel in r1.presentation.relations)
    rels += tuple({(0,) * n1 + m: c for m, c in rel.items()} for rel in r2.presentation.relations)
    ring = build_ring(RingPresentation(gens, rels, r1.top + r2.top))

    def left(x: Cls) -> Cls:
        return ring.from_poly({m + (0,) * n2: c for m, c in x.to_poly().items()})

    def right(x: Cls) -> Cls:
        return ring.from_poly({(0,) * n1 + m: c for m, c in x.to_poly().items()})

    ctx = None
    if s1.ctx is not None and s2.ctx is not None:
        ctx = left(s1.ctx) * right(s2.ctx)
    return Space(ring, left(s1.point) * right(s2.point), ctx, f"{s1.name}x{s2.name}")


def coordinate_arrangement(s: Space, k: int) -> SCArrangement:
    """``k`` coordinate hyperplanes of ``P^n``."""
    if len(s.ring.names) != 1:
        raise RingError("coordinate arrangements are defined on projective spaces only")
    if k > s.n + 1:
        raise RingError(f"at most {s.n + 1} coordinate hyperplanes stay simple crossings in P{s.n}, got {k}")
    H = s.ring.gen(s.ring.names[0])
    return SCArrangement(s, tuple(f"L{i + 1}" for i in range(k)), (H,) * k)


def _point_center(ambient: Space, pd_y: Cls, name: str) -> CenterSpec:
    pt = point_space()
    images = {g: pt.ring.zero for g in ambient.ring.names}
    return make_center(ambient, pt, images, pd_y, pt.ring.one, name=name)


def _linear_center(n: int, codim: int, name: str) -> CenterSpec:
    """Linear ``P^(n-codim)`` inside ``P^n``; normal bundle ``O(1)^codim``."""
    amb = projective_space(n)
    cen = projective_space(n - codim, "h")
    h = cen.ring.gen("h")
    H = amb.ring.gen("H")
    return make_center(
        amb, cen, {"H": h}, H**codim, (cen.ring.one + h) ** codim, {1: H * codim} if codim > 1 else None, name
    )


def _projective_entry(n: int) -> CatalogEntry:
    s = projective_space(n)
    H = s.ring.gen("H")
    entry = CatalogEntry(f"P{n}", s, n + 1)
    entry.arrangements["empty"] = coordinate_arrangement(s, 0)
    entry.arrangements["hyperplane"] = coordinate_arrangement(s, 1)
    entry.arrangements["pair"] = coordinate_arrangement(s, 2)
    entry.arrangements["toric"] = coordinate_arrangement(s, n + 1)
    for k in range(n + 2):
        entry.arrangements[f"h{k}"] = coordinate_arrangement(s, k)
    if n == 2:
        entry.arrangements["line"] = coordinate_arrangement(s, 1)
        entry.arrangements["twolines"] = coordinate_arrangement(s, 2)
        entry.arrangements["threelines"] = coordinate_arrangement(s, 3)
        # irreducible nodal cubic: an NC divisor that is not SC
        entry.strata["nodal_cubic"] = StrataData(s, (3 * H, H**2))
        entry.centers["pt_in_P2"] = _point_center(s, H**2, "pt_in_P2")
        entry.center_divisors["pt_in_P2"] = "twolines"
        entry.centers["line_in_P2"] = _linear_center(2, 1, "line_in_P2")
        entry.center_divisors["line_in_P2"] = "line"
    if n == 3:
        entry.arrangements["plane"] = coordinate_arrangement(s, 1)
        entry.arrangements["twoplanes"] = coordinate_arrangement(s, 2)
        entry.arrangements["threeplanes"] = coordinate_arrangement(s, 3)
        entry.strata["nc_pair"] = StrataData(s, (2 * H, H**2))
        entry.centers["pt_in_P3"] = _point_center(s, H**3, "pt_in_P3")
        entry.center_divisors["pt_in_P3"] = "threeplanes"
        entry.centers["line_in_P3"] = _linear_center(3, 2, "line_in_P3")
        entry.center_divisors["line_in_P3"] = "twoplanes"
        entry.centers["plane_in_P3"] = _linear_center(3, 1, "plane_in_P3")
        entry.center_divisors["plane_in_P3"] = "plane"
    return entry


def _p1xp1_entry() -> CatalogEntry:
    s = product(projective_space(1), projective_space(1))
    a, b = s.ring.gen("H_1"), s.ring.gen("H_2")
    entry = CatalogEntry("P1xP1", s, 4)
    entry.arrangements["empty"] = SCArrangement(s, (), ())
    entry.arrangements["fibers"] = SCArrangement(s, ("A", "B"), (a, b))
    entry.arrangements["toric"] = SCArrangement(s, ("A0", "A1", "B0", "B1"), (a, a, b, b))
    entry.centers["pt_in_P1xP1"] = _point_center(s, a * b, "pt_in_P1xP1")
    entry.center_divisors["pt_in_P1xP1"] = "fibers"
    return entry


def _p1xp2_entry() -> CatalogEntry:
    s = product(projective_space(1), projective_space(2))
    a, h = s.ring.gen("H_1"), s.ring.gen("H_2")
    entry = CatalogEntry("P1xP2", s, 6)
    entry.arrangements["empty"] = SCArrangement(s, (), ())
    entry.arrangements["corner"] = SCArrangement(s, ("A", "B1", "B2"), (a, h, h))
    entry.arrangements["toric"] = SCArrangement(s, ("A0", "A1", "B0", "B1", "B2"), (a, a, h, h, h))
    entry.centers["pt_in_P1xP2"] = _point_center(s, a * h * h, "pt_in_P1xP2")
    entry.center_divisors["pt_in_P1xP2"] = "corner"
    return entry


@cache
def _builtin() -> dict[str, CatalogEntry]:
    entries = [CatalogEntry("pt", point_space(), 1)]
    entries += [_projective_entry(n) for n in range(1, MAX_DIM + 1)]
    entries += [_p1xp1_entry(), _p1xp2_entry()]
    return {e.name: e for e in entries}


def entry_names() -> list[str]:
    return list(_builtin())


def get_entry(name: str) -> CatalogEntry:
    try:
        return _builtin()[name]
    except KeyError:
        raise CatalogError(f"unknown catalog entry {name!r}") from None


def standard_center(name: str) -> CenterSpec:
    for entry in _builtin().values():
        if name in entry.centers:
            return entry.centers[name]
    raise CatalogError(f"unknown center {name!r}")


__all__ = [
    "CatalogEntry",
    "CatalogError",
    "projective_space",
    "point_space",
    "product",
    "coordinate_arrangement",
    "standard_center",
    "get_entry",
    "entry_names",
]
