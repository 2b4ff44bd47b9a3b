"""Cohomology of blowups along the deepest stratum of an SC divisor.

The ring of the blowup is presented as the ambient ring with one extra
degree-2 generator ``e`` (the exceptional divisor class), subject to

* ``e * kappa = 0`` for every ``kappa`` in the kernel of restriction to the center;
* ``e^r = s_Y (-1)^(r-1) pi^*[Y] + s_c sum_{i<r} (-1)^(i-1) c_i(N)^ e^(r-i)``,

and integration of ``pi^*a e^k`` (``k >= 1``) is
``s_f (-1)^(k-1) int_Y rho(a) s_{k-r}(N)``.  The sign slots ``s_Y, s_c, s_f``
are fixed by :mod:`logchern.calibration`; :data:`SIGNS` holds the result.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .charclass import TotalChern, Verdict, compare, segre
from .divisor import SCArrangement, StrataData, as_strata, log_chern, strata
from .poly import Poly, format_poly
from .ring import (
    Cls,
    RingError,
    RingMap,
    RingPresentation,
    Space,
    build_ring,
    integrality_check,
    invert,
)


class BlowupError(ValueError):
    """Invalid center data or an unsupported blowup configuration."""

    def __init__(self, message: str, verdict: Verdict | None = None):
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True)
class SignConvention:
    center: int = 1
    lifts: int = 1
    fiber: int = 1


SIGNS = SignConvention(center=1, lifts=1, fiber=1)


@dataclass(frozen=True, eq=False)
class CenterSpec:
    """Blowup center ``Y`` of complex codimension ``r`` inside ``ambient``."""

    ambient: Space
    center: Space
    r: int
    rho: RingMap
    pd_y: Cls
    normal: TotalChern
    lifts: tuple[Cls, ...]
    name: str = ""

    def lift(self, i: int) -> Cls:
        """Ambient lift of ``c_i(N)`` for ``1 <= i < r``."""
        return self.lifts[i - 1]

    def euler_characteristic(self) -> Fraction:
        """``chi(Y)``, using ``c(TY) = rho(c(TX)) / c(N)`` when ``Y`` carries no ``c(TY)``."""
        if self.center.ctx is not None:
            return self.center.euler_characteristic()
        ctx = self.rho(self.ambient.ctx) * segre(self.normal)
        return self.center.integrate(ctx)


def make_center(
    ambient: Space,
    center: Space,
    rho_images: dict[str, Cls],
    pd_y: Cls,
    normal: Cls,
    lifts: dict[int, Cls] | None = None,
    name: str = "",
) -> CenterSpec:
    """Assemble a :class:`CenterSpec`; missing lifts are solved for through ``rho``."""
    if not pd_y or len(pd_y.degrees()) != 1 or pd_y.degrees()[0] % 2:
        raise BlowupError("PD[Y] must be a nonzero homogeneous class")
    r = pd_y.degrees()[0] // 2
    rho = RingMap(ambient.ring, center.ring, rho_images)
    tc = TotalChern(r, normal)
    lifts = dict(lifts or {})
    out = []
    for i in range(1, r):
        if i in lifts:
            out.append(lifts[i])
            continue
        pre = rho.preimage(tc.chern(i))
        if pre is None:
            raise BlowupError(f"c_{i}(N) has no preimage under restriction")
        out.append(pre)
    return CenterSpec(ambient, center, r, rho, pd_y, tc, tuple(out), name)


def validate_center(c: CenterSpec) -> Verdict:
    checks: list[Verdict] = []
    amb = c.ambient.ring
    bad_degrees = [d for d in range(0, amb.top + 1, 2) if not c.rho.surjective_in(d)]
    checks.append(Verdict("rho_surjective", not bad_degrees, details={"missed_degrees": bad_degrees}))
    codim_ok = c.center.n == c.ambient.n - c.r and c.pd_y.is_homogeneous(2 * c.r)
    checks.append(
        Verdict(
            "codimension",
            codim_ok,
            details={"r": c.r, "dim_X": c.ambient.n, "dim_Y": c.center.n},
        )
    )
    if codim_ok:
        checks.append(compare("euler_class", c.rho(c.pd_y), c.normal.chern(c.r)))
    if c.normal.rank != c.r:
        checks.append(Verdict("normal_rank", False, details={"rank": c.normal.rank, "r": c.r}))
    if len(c.lifts) != max(c.r - 1, 0):
        checks.append(Verdict("lift_count", False, details={"expected": c.r - 1, "got": len(c.lifts)}))
    for i, lift in enumerate(c.lifts, start=1):
        if lift.ring is not amb or (lift and not lift.is_homogeneous(2 * i)):
            checks.append(Verdict(f"lift_{i}", False, details={"reason": "wrong ring or degree"}))
        else:
            checks.append(compare(f"lift_{i}", c.rho(lift), c.normal.chern(i)))
    return Verdict("validate_center", all(checks), checks=checks)


@dataclass(eq=False)
class BlownUpSpace:
    space: Space
    pullback: RingMap
    center: CenterSpec
    e: Cls
    signs: SignConvention = SIGNS
    relations: list[str] = field(default_factory=list)

    @property
    def ambient(self) -> Space:
        return self.center.ambient

    @property
    def r(self) -> int:
        return self.center.r

    def pi(self, x: Cls) -> Cls:
        return self.pullback(x)


def _extend(p: Poly, extra: int) -> Poly:
    return {m + (0,) * extra: c for m, c in p.items()}


def _exceptional_name(names) -> str:
    name, i = "e", 1
    while name in names:
        name, i = f"e{i}", i + 1
    return name


def blowup(c: CenterSpec, signs: SignConvention = SIGNS) -> BlownUpSpace:
    verdict = validate_center(c)
    if not verdict:
        failed = [ch.name for ch in verdict.checks if not ch]
        raise BlowupError(f"center fails validation: {', '.join(failed)}", verdict)
    amb = c.ambient.ring
    n, r = c.ambient.n, c.r
    ename = _exceptional_name(amb.names)
    gens = amb.presentation.generators + ((ename, 2),)
    e_mono = (0,) * amb.nvars + (1,)

    def with_e(p: Poly, k: int) -> Poly:
        return {m[:-1] + (k,): v for m, v in _extend(p, 1).items()}

    relations: list[Poly] = [_extend(rel, 1) for rel in amb.presentation.relations]
    for d in range(2, 2 * n - 1, 2):
        for kappa in c.rho.kernel(d):
            relations.append(with_e(kappa.to_poly(), 1))
    # e^r - s_Y (-1)^(r-1) pd_y - s_c sum (-1)^(i-1) lift_i e^(r-i)
    grothendieck: Poly = {tuple(r * x for x in e_mono): Fraction(1)}
    for m, v in with_e(c.pd_y.to_poly(), 0).items():
        grothendieck[m] = grothendieck.get(m, 0) - signs.center * (-1) ** (r - 1) * v
    for i in range(1, r):
        for m, v in with_e(c.lift(i).to_poly(), r - i).items():
            grothendieck[m] = grothendieck.get(m, 0) - signs.lifts * (-1) ** (i - 1) * v
    relations.append({m: v for m, v in grothendieck.items() if v})

    ring = build_ring(RingPresentation(gens, tuple(relations), amb.top))
    pullback = RingMap(amb, ring, {g: ring.gen(g) for g in amb.names})
    space = Space(ring, pullback(c.ambient.point), None, f"Bl({c.ambient.name},{c.name})")
    rendered = [format_poly(p, ring.names, ring.degrees, leading_first=True) for p in relations if p]
    return BlownUpSpace(space, pullback, c, ring.gen(ename), signs, rendered)


def integrate_monomial(b: BlownUpSpace, alpha: Cls, k: int) -> Fraction:
    """Closed-form integral of ``pi^*alpha * e^k`` over the blowup."""
    c = b.center
    if k == 0:
        return c.ambient.integrate(alpha)
    j = k - c.r
    if j < 0:
        return Fraction(0)
    s_j = segre(c.normal).part(2 * j)
    return b.signs.fiber * (-1) ** (k - 1) * c.center.integrate(c.rho(alpha) * s_j)


def integrate_blowup(b: BlownUpSpace, x: Cls) -> Fraction:
    """Integrate via the closed-form rule applied to the normal form of ``x``."""
    if x.ring is not b.space.ring:
        raise RingError("class does not belong to the blowup")
    amb = b.ambient.ring
    total = Fraction(0)
    for d, m, coeff in x.terms():
        if d != b.space.ring.top:
            continue
        alpha = amb.from_poly({m[:-1]: Fraction(1)})
        total += coeff * integrate_monomial(b, alpha, m[-1])
    return total


def integration_consistency(b: BlownUpSpace) -> Verdict:
    """Every top-degree monomial ``pi^*alpha e^k``: closed form vs ring reduction."""
    amb = b.ambient.ring
    top = amb.top
    mismatches = []
    for k in range(0, b.ambient.n + 1):
        d = top - 2 * k
        for i in range(amb.dim(d)):
            alpha = amb.basis_class(d, i)
            ring_route = b.space.integrate(b.pi(alpha) * b.e**k)
            formula = integrate_monomial(b, alpha, k)
            if ring_route != formula:
                mismatches.append((str(alpha), k, ring_route, formula))
    return Verdict("integration_consistency", not mismatches, details={"mismatches": mismatches})


def betti_check(b: BlownUpSpace) -> Verdict:
    """Blowup Betti numbers against ``b_k(X) + sum_{i=1}^{r-1} b_{k-2i}(Y)``."""
    amb, cen = b.ambient.ring, b.center.center.ring
    n = b.ambient.n
    got = b.space.ring.betti()
    expected = []
    for k in range(n + 1):
        total = amb.dim(2 * k)
        for i in range(1, b.r):
            total += cen.dim(2 * (k - i)) if k >= i else 0
        expected.append(total)
    return Verdict(
        "betti",
        tuple(expected) == got,
        details={
            "blowup": list(got),
            "ambient": list(amb.betti()),
            "center": list(cen.betti()),
            "expected": expected,
        },
    )


# -- divisors through the center ---------------------------------------------


def _require_deepest(b: BlownUpSpace, d: StrataData) -> None:
    c = b.center
    if d.space is not c.ambient:
        raise BlowupError("divisor data lives on another space")
    if d.r != c.r:
        raise BlowupError(f"divisor has {d.r} components; blowing up needs exactly r = {c.r}")
    if d.get(c.r) != c.pd_y:
        raise BlowupError("the deepest stratum of the divisor is not the center")


def intersection_check(c: CenterSpec, d: StrataData) -> Verdict:
    """``rho(PD[V^(k)]) = c_k(N)`` for ``k = 1..r``."""
    checks = [compare(f"k={k}", c.rho(d.get(k)), c.normal.chern(k)) for k in range(1, c.r + 1)]
    return Verdict("intersection_normal", all(checks), checks=checks)


def proper_transform(b: BlownUpSpace, arr: SCArrangement) -> tuple[SCArrangement, Cls]:
    """Proper transforms ``pi^*v_i - e`` of the components through the center."""
    if len(arr) != b.r:
        raise BlowupError(f"arrangement has {len(arr)} components; blowing up needs exactly r = {b.r}")
    _require_deepest(b, strata(arr))
    classes = tuple(b.pi(v) - b.e for v in arr.classes)
    return SCArrangement(b.space, arr.labels, classes), b.e


def proper_transform_strata(b: BlownUpSpace, d: StrataData) -> StrataData:
    """Strata of the proper transforms, from the ambient strata alone.

    ``e_k(x_i - t) = sum_j C(r - j, k - j) (-t)^(k-j) e_j(x)`` for ``r`` components.
    """
    _require_deepest(b, d)
    r = b.r
    pd = []
    for k in range(1, r + 1):
        acc = b.space.ring.zero
        for j in range(k + 1):
            acc = acc + b.pi(d.get(j)) * (-b.e) ** (k - j) * comb(r - j, k - j)
        pd.append(acc)
    return StrataData(b.space, tuple(pd))


def chern_blowup(b: BlownUpSpace, arr_or_strata) -> Cls:
    """``c(TX~) = pi^*(c(TX)/PD(V)) * PD(V-bar) * (1 + e)``."""
    d = as_strata(arr_or_strata)
    _require_deepest(b, d)
    ring = b.space.ring
    bar = proper_transform_strata(b, d)
    return b.pi(log_chern(b.ambient, d)) * bar.total() * (ring.one + b.e)


def with_chern(b: BlownUpSpace, ctx: Cls) -> Space:
    return Space(b.space.ring, b.space.point, ctx, b.space.name)


def ptdiff_check(b: BlownUpSpace, arr: SCArrangement) -> Verdict:
    """``pi^*PD[V^(1)] - PD[V-bar^(1)] = r e``."""
    bar, e = proper_transform(b, arr)
    lhs = b.pi(strata(arr).get(1)) - strata(bar).get(1)
    return compare("ptdiff", lhs, e * b.r)


def c1_check(b: BlownUpSpace, ctx: Cls) -> Verdict:
    """``c_1(TX~) = pi^*c_1(TX) - (r - 1) e``."""
    return compare("c1", ctx.part(2), b.pi(b.ambient.ctx.part(2)) - b.e * (b.r - 1))


def c2_check(b: BlownUpSpace, ctx: Cls, d: StrataData) -> Verdict:
    """Second Chern class of a codimension-2 blowup.

    ``c_2(TX~) = pi^*c_2 - (pi^*c_1 e + 2 e^2 + pi^*PD[V^(2)] - 2 pi^*PD[V^(1)] e)``:
    pushforwards from the exceptional divisor are products with ``e`` and
    ``c_1`` of the tautological bundle restricts from ``e``.
    """
    pi, e = b.pi, b.e
    c = b.ambient.ctx
    correction = pi(c.part(2)) * e + e * e * 2 + pi(d.get(2)) - pi(d.get(1)) * e * 2
    return compare("c2", ctx.part(4), pi(c.part(4)) - correction)


def euler_check(b: BlownUpSpace, ctx: Cls) -> Verdict:
    """``chi(X~) = chi(X) + (r - 1) chi(Y)`` with ``chi`` read off top Chern classes."""
    top = b.space.ring.top
    chi_blowup = b.space.integrate(ctx.part(top))
    chi_x = b.ambient.euler_characteristic()
    chi_y = b.center.euler_characteristic()
    expected = chi_x + (b.r - 1) * chi_y
    return Verdict(
        "euler",
        chi_blowup == expected,
        details={"chi_blowup": chi_blowup, "chi_X": chi_x, "chi_Y": chi_y, "expected": expected},
    )


def verify_blowup_formula(b: BlownUpSpace, arr: SCArrangement) -> Verdict:
    """Quotient identity for ``c(TX~)`` plus its independent low-degree and Euler constraints."""
    d = strata(arr)
    bar, e = proper_transform(b, arr)
    ctx = chern_blowup(b, d)
    ring = b.space.ring
    denom = strata(bar).total() * (ring.one + e)
    lhs = ctx * invert(denom)
    rhs = b.pi(log_chern(b.ambient, d))
    checks = [
        compare("quotient_identity", lhs, rhs),
        intersection_check(b.center, d),
        c1_check(b, ctx),
    ]
    if b.r == 2:
        checks.append(c2_check(b, ctx, d))
    checks.append(euler_check(b, ctx))
    for label, x in (("lhs", lhs), ("rhs", rhs), ("c(TX~)", ctx)):
        rep = integrality_check(x)
        checks.append(Verdict(f"integrality_{label}", rep.passed, details={"offenders": rep.offenders}))
    return Verdict("verify_cor15", all(checks), lhs, rhs, details={"ctx": ctx}, checks=checks)


def log_pullback_check(b: BlownUpSpace, arr: SCArrangement) -> Verdict:
    """``c(TX~(-log(V-bar u E))) = pi^* c(TX(-log V))``."""
    if len(arr) == 0:
        if b.r != 1:
            raise BlowupError("an empty divisor is only meaningful for a codimension-1 center")
        # blowing up a divisor changes nothing, and no exceptional component is added
        tilde = with_chern(b, b.pi(b.ambient.ctx))
        lhs = log_chern(tilde, StrataData(tilde, ()))
        return compare("log_pullback", lhs, b.pi(log_chern(b.ambient, strata(arr))))
    bar, e = proper_transform(b, arr)
    ctx = chern_blowup(b, arr)
    tilde = with_chern(b, ctx)
    new = SCArrangement(tilde, bar.labels + ("E",), bar.classes + (e,))
    lhs = log_chern(tilde, strata(new))
    rhs = b.pi(log_chern(b.ambient, strata(arr)))
    return compare("log_pullback", lhs, rhs)


