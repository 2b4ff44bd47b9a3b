"""Divisor arrangements, stratum classes and log-tangent Chern classes."""
from __future__ import annotations

from dataclasses import dataclass

from .charclass import Verdict, compare
from .ring import Cls, RingError, Space, invert


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SCArrangement:
    """Simple-crossings divisor given by the classes ``v_i`` of its components."""

    space: Space
    labels: tuple[str, ...]
    classes: tuple[Cls, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.classes):
            raise ArrangementError("one class per label is required")
        if len(set(self.labels)) != len(self.labels):
            raise ArrangementError("arrangement labels must be distinct")
        for label, v in zip(self.labels, self.classes):
            if v.ring is not self.space.ring:
                raise ArrangementError(f"class of {label} lives in another ring")
            if v and not v.is_homogeneous(2):
                raise ArrangementError(f"class of {label} is not of degree 2")

    @classmethod
    def of(cls, space: Space, classes, labels=None) -> SCArrangement:
        classes = tuple(classes)
        if labels is None:
            labels = tuple(f"V{i + 1}" for i in range(len(classes)))
        return cls(space, tuple(labels), classes)

    def __len__(self) -> int:
        return len(self.classes)

    def union(self, other: SCArrangement) -> SCArrangement:
        if other.space is not self.space:
            raise ArrangementError("arrangements live on different spaces")
        overlap = set(self.labels) & set(other.labels)
        if overlap:
            raise ArrangementError(f"overlapping labels: {', '.join(sorted(overlap))}")
        return SCArrangement(self.space, self.labels + other.labels, self.classes + other.classes)

    def without(self, i: int) -> SCArrangement:
        keep = [j for j in range(len(self)) if j != i]
        return SCArrangement(
            self.space, tuple(self.labels[j] for j in keep), tuple(self.classes[j] for j in keep)
        )


@dataclass(frozen=True, eq=False)
class StrataData:
    """Poincare duals ``pd[k]`` of the strata ``V^(k)``, ``k = 1..r``."""

    space: Space
    pd: tuple[Cls, ...]

    def __post_init__(self):
        for k, c in enumerate(self.pd, start=1):
            if c.ring is not self.space.ring:
                raise ArrangementError(f"stratum class {k} lives in another ring")
            if c and not c.is_homogeneous(2 * k):
                raise ArrangementError(f"stratum class {k} is not of degree {2 * k}")

    @property
    def r(self) -> int:
        return len(self.pd)

    def get(self, k: int) -> Cls:
        if k == 0:
            return self.space.ring.one
        if 1 <= k <= self.r:
            return self.pd[k - 1]
        return self.space.ring.zero

    def total(self) -> Cls:
        """``1 + pd[1] + pd[2] + ...``"""
        out = self.space.ring.one
        for c in self.pd:
            out = out + c
        return out


def empty_strata(space: Space) -> StrataData:
    return StrataData(space, ())


def sc_union_strata(d: StrataData, v: Cls) -> StrataData:
    """Strata after adding one smooth component: ``pd'[k] = pd[k] + v pd[k-1]``."""
    if v and not v.is_homogeneous(2):
        raise ArrangementError("added component must have a degree-2 class")
    pd = tuple(d.get(k) + v * d.get(k - 1) for k in range(1, d.r + 2))
    return StrataData(d.space, pd)


def strata(arr: SCArrangement) -> StrataData:
    """Elementary symmetric polynomials in the component classes."""
    d = empty_strata(arr.space)
    for v in arr.classes:
        d = sc_union_strata(d, v)
    return d


def as_strata(arr_or_strata) -> StrataData:
    if isinstance(arr_or_strata, SCArrangement):
        return strata(arr_or_strata)
    return arr_or_strata


def log_chern(s: Space, d: StrataData) -> Cls:
    """``c(TX(-log V)) = c(TX) / (1 + PD[V^(1)] + PD[V^(2)] + ...)``."""
    if d.space is not s:
        raise ArrangementError("strata data belongs to another space")
    if s.ctx is None:
        raise RingError(f"space {s.name or '?'} has no total Chern class")
    return s.ctx * invert(d.total())


def line_bundle_c1(arr_or_strata) -> Cls:
    """``c_1(O_X(V)) = PD[V]``."""
    return as_strata(arr_or_strata).get(1)


def union_c1_additivity(a: SCArrangement, b: SCArrangement) -> Verdict:
    u = a.union(b)
    return compare("union_c1_additivity", line_bundle_c1(u), line_bundle_c1(a) + line_bundle_c1(b))


def smooth_split_check(s: Space, d: StrataData, v: Cls) -> Verdict:
    """``c(TX(-log(V u V'))) (1 + v') = c(TX(-log V))`` for smooth ``V'``."""
    lhs = log_chern(s, sc_union_strata(d, v)) * (s.ring.one + v)
    rhs = log_chern(s, d)
    return compare("smooth_split", lhs, rhs)


def reconstruction_check(arr: SCArrangement) -> Verdict:
    """``1 + sum pd[k]`` against the product of ``1 + v_i``."""
    ring = arr.space.ring
    prod = ring.one
    for v in arr.classes:
        prod = prod * (ring.one + v)
    return compare("reconstruction", strata(arr).total(), prod)


def inverse_law_check(s: Space, d: StrataData) -> Verdict:
    return compare("inverse_law", log_chern(s, d) * d.total(), s.ctx)
