import pytest

from logchern.blowup import validate_center
from logchern.catalog import (
    CatalogError,
    coordinate_arrangement,
    entry_names,
    get_entry,
    point_space,
    product,
    projective_space,
    standard_center,
)
from logchern.divisor import reconstruction_check
from logchern.ring import RingError


def test_projective_spaces():
    assert projective_space(2).euler_characteristic() == 3
    p1 = projective_space(1)
    assert p1.ctx == 1 + 2 * p1.ring.gen("H")
    assert p1.integrate(p1.ctx) == 2
    assert projective_space(3).euler_characteristic() == 4
    with pytest.raises(RingError):
        projective_space(7)
    with pytest.raises(RingError):
        projective_space(0)


def test_products():
    q = product(projective_space(1), projective_space(1))
    assert q.ring.names == ("H_1", "H_2")
    assert q.euler_characteristic() == 4
    line = product(projective_space(1), point_space())
    assert line.ring.betti() == (1, 1)
    assert line.euler_characteristic() == 2
    assert product(projective_space(1), projective_space(2)).euler_characteristic() == 6
    with pytest.raises(RingError):
        product(projective_space(4), projective_space(3))


def test_coordinate_arrangements():
    p2 = projective_space(2)
    assert len(coordinate_arrangement(p2, 3)) == 3
    assert coordinate_arrangement(projective_space(3), 2).classes == (projective_space(3).ring.gen("H"),) * 2
    with pytest.raises(RingError):
        coordinate_arrangement(p2, 4)


def test_standard_centers():
    pt = standard_center("pt_in_P2")
    assert pt.r == 2 and pt.normal.c == 1
    line = standard_center("line_in_P3")
    h = line.center.ring.gen("h")
    assert line.r == 2
    assert line.normal.c == 1 + 2 * h
    assert line.lift(1) == 2 * line.ambient.ring.gen("H")
    assert standard_center("pt_in_P3").r == 3
    with pytest.raises(CatalogError):
        standard_center("nowhere")
    with pytest.raises(CatalogError):
        get_entry("P9")


@pytest.mark.parametrize("name", entry_names())
def test_entry_invariants(name):
    e = get_entry(name)
    s = e.space
    assert s.ring.dim(s.ring.top) == 1
    assert s.integrate(s.point) == 1
    assert s.euler_characteristic() == e.euler
    for arr in e.arrangements.values():
        assert reconstruction_check(arr).passed
    for c in e.centers.values():
        assert validate_center(c).passed
    for center, div in e.center_divisors.items():
        assert div in e.arrangements and center in e.centers
