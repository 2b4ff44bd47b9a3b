import pytest

from conftest import assert_presentation
from logchern.blowup import (
    SIGNS,
    BlowupError,
    SignConvention,
    betti_check,
    blowup,
    c1_check,
    chern_blowup,
    euler_check,
    integrate_blowup,
    integrate_monomial,
    integration_consistency,
    log_pullback_check,
    make_center,
    proper_transform,
    proper_transform_strata,
    ptdiff_check,
    validate_center,
    verify_blowup_formula,
    with_chern,
)
from logchern.calibration import calibrate, candidates, run_oracles
from logchern.catalog import get_entry, point_space
from logchern.divisor import log_chern, strata

# (entry, center, arrangement through the center)
CENTERS = [
    ("P2", "pt_in_P2", "twolines"),
    ("P2", "line_in_P2", "line"),
    ("P3", "pt_in_P3", "threeplanes"),
    ("P3", "line_in_P3", "twoplanes"),
    ("P3", "plane_in_P3", "plane"),
    ("P1xP1", "pt_in_P1xP1", "fibers"),
    ("P1xP2", "pt_in_P1xP2", "corner"),
]


def scenario(entry, center):
    ent = get_entry(entry)
    return ent, blowup(ent.centers[center])


def test_point_in_plane_ring():
    _, b = scenario("P2", "pt_in_P2")
    assert_presentation(b, [("H", 2), ("e", 2)], ["H^3", "H*e", "e^2 + H^2"])
    assert b.space.ring.betti() == (1, 2, 1)
    assert b.space.integrate(b.e**2) == -1
    assert integrate_blowup(b, b.e**2) == -1


def test_line_in_p3_ring():
    _, b = scenario("P3", "line_in_P3")
    assert_presentation(b, [("H", 2), ("e", 2)], ["H^4", "H^2*e", "e^2 - 2*H*e + H^2"])
    assert b.relations == ["H^4", "H^2*e", "e^2 - 2*H*e + H^2"]
    assert b.space.ring.betti() == (1, 2, 2, 1)
    H = b.pi(b.ambient.ring.gen("H"))
    assert b.e**3 == 3 * H * H * b.e - 2 * H**3
    # closed form: (-1)^2 s_1(N) on the line, s_1 = -2h
    assert integrate_monomial(b, b.ambient.ring.one, 3) == -2
    assert b.space.integrate(b.e**3) == -2


def test_pushforward_of_point_is_one():
    for entry, center, _ in CENTERS:
        ent, b = scenario(entry, center)
        assert b.space.integrate(b.pi(ent.space.point)) == 1


def test_validate_center():
    p2 = get_entry("P2")
    assert validate_center(p2.centers["pt_in_P2"]).passed
    assert validate_center(get_entry("P3").centers["line_in_P3"]).passed
    pt = point_space()
    H = p2.space.ring.gen("H")
    bad = make_center(p2.space, pt, {"H": pt.ring.zero}, H, pt.ring.one, name="bad")
    v = validate_center(bad)
    assert not v.passed
    assert not next(c for c in v.checks if c.name == "codimension").passed


def test_proper_transforms_are_disjoint():
    for entry, center, arr in [("P2", "pt_in_P2", "twolines"), ("P3", "line_in_P3", "twoplanes")]:
        ent, b = scenario(entry, center)
        H = b.pi(ent.space.ring.gen("H"))
        bar, e = proper_transform(b, ent.arrangements[arr])
        assert bar.classes == (H - e, H - e)
        assert (H - e) ** 2 == 0
        assert ptdiff_check(b, ent.arrangements[arr]).passed


def test_chern_class_point_in_plane():
    ent, b = scenario("P2", "pt_in_P2")
    H = b.pi(ent.space.ring.gen("H"))
    e = b.e
    ctx = chern_blowup(b, ent.arrangements["twolines"])
    assert ctx == 1 + (3 * H - e) + 4 * H * H
    assert b.space.integrate(ctx.part(4)) == 4
    assert b.space.integrate(ctx.part(2) ** 2) == 8
    assert c1_check(b, ctx).passed


def test_chern_class_line_in_p3():
    ent, b = scenario("P3", "line_in_P3")
    H = b.pi(ent.space.ring.gen("H"))
    e = b.e
    ctx = chern_blowup(b, ent.arrangements["twoplanes"])
    assert ctx.part(2) == 4 * H - e
    assert ctx.part(4) == 7 * H * H - 4 * H * e
    assert ctx.part(6) == 6 * H**3
    assert b.space.integrate(ctx) == 6


def test_chern_blowup_from_strata_only():
    ent, b = scenario("P3", "line_in_P3")
    arr = ent.arrangements["twoplanes"]
    assert chern_blowup(b, strata(arr)) == chern_blowup(b, arr)
    bar, _ = proper_transform(b, arr)
    assert proper_transform_strata(b, strata(arr)).pd == strata(bar).pd


@pytest.mark.parametrize("entry,center,arr", CENTERS)
def test_every_center(entry, center, arr):
    ent, b = scenario(entry, center)
    a = ent.arrangements[arr]
    assert validate_center(b.center).passed
    assert betti_check(b).passed
    assert integration_consistency(b).passed
    v = verify_blowup_formula(b, a)
    assert v.passed, [c.name for c in v.checks if not c]
    assert v.lhs == v.rhs == b.pi(log_chern(ent.space, strata(a)))
    assert log_pullback_check(b, a).passed
    assert ptdiff_check(b, a).passed
    assert euler_check(b, chern_blowup(b, a)).passed


def test_euler_numbers():
    expected = {"pt_in_P2": 4, "pt_in_P3": 6, "line_in_P3": 6, "pt_in_P1xP1": 5, "pt_in_P1xP2": 8}
    for entry, center, arr in CENTERS:
        if center in expected:
            ent, b = scenario(entry, center)
            tilde = with_chern(b, chern_blowup(b, ent.arrangements[arr]))
            assert tilde.euler_characteristic() == expected[center]


def test_codimension_one_center_is_trivial():
    ent, b = scenario("P3", "plane_in_P3")
    H = b.pi(ent.space.ring.gen("H"))
    assert b.e == H
    assert b.space.ring.betti() == ent.space.ring.betti()
    assert log_pullback_check(b, ent.arrangements["empty"]).passed
    assert chern_blowup(b, ent.arrangements["plane"]) == b.pi(ent.space.ctx)


def test_empty_divisor_needs_divisorial_center():
    ent, b = scenario("P2", "pt_in_P2")
    with pytest.raises(BlowupError):
        log_pullback_check(b, ent.arrangements["empty"])


def test_divisor_must_cut_out_center():
    ent, b = scenario("P2", "pt_in_P2")
    with pytest.raises(BlowupError):
        chern_blowup(b, ent.arrangements["threelines"])
    with pytest.raises(BlowupError):
        proper_transform(b, ent.arrangements["line"])


def test_sign_calibration():
    assert calibrate() == SIGNS == SignConvention(1, 1, 1)
    passing = [s for s in candidates() if run_oracles(s).passed]
    assert passing == [SIGNS]
