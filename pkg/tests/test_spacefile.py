from pathlib import Path

import pytest

from logchern.catalog import entry_names, get_entry
from logchern.divisor import log_chern, strata
from logchern.spacefile import (
    SpaceFileError,
    build_entry,
    document_from_entry,
    load_space_file,
    parse_space,
    serialize_space,
)

P2_TEXT = """\
space P2
dim 2
gen H 2
rel H^3
point H^2
ctx 1+3*H+3*H^2
divisor toric = H, H, H
strata nodal = 3*H; H^2
center pt { ring dim 0; rho H -> 0; pdY H^2; cN 1; through twolines }
divisor twolines = H, H
"""

SPACES = Path(__file__).resolve().parent.parent / "spaces"


def test_parse_projective_plane():
    doc = parse_space(P2_TEXT)
    assert doc.name == "P2" and doc.dim == 2 and doc.gens == [("H", 2)]
    entry = build_entry(doc)
    assert entry.euler == 3
    assert len(entry.arrangements["toric"]) == 3
    assert log_chern(entry.space, strata(entry.arrangements["toric"])) == 1
    assert entry.centers["pt"].r == 2
    assert entry.center_divisors["pt"] == "twolines"


def error_of(text):
    with pytest.raises(SpaceFileError) as info:
        build_entry(parse_space(text))
    return info.value


@pytest.mark.parametrize(
    "bad_line,code,column",
    [
        ("rel H^3 + H", "E_DEGREE", 5),
        ("rel 1.5*H^3", "E_FLOAT", None),
        ("rel K^3", "E_UNKNOWN_GEN", None),
        ("frobnicate H", "E_UNKNOWN_KEYWORD", 1),
        ("rel H^3 +", "E_SYNTAX", None),
        ("gen H 2", "E_DUPLICATE", None),
        ("gen K 3", "E_DEGREE", None),
    ],
)
def test_positioned_errors(bad_line, code, column):
    text = "space X\ndim 2\ngen H 2\npoint H^2\nctx 1+3*H+3*H^2\n" + bad_line + "\n"
    err = error_of(text)
    assert err.code == code
    assert err.line == 6
    if column is not None:
        assert err.column == column
    assert str(err).startswith("line 6, column ")


def test_missing_statements():
    assert error_of("space X\ngen H 2\n").code == "E_MISSING"
    err = error_of(P2_TEXT.replace("center pt { ring dim 0; rho H -> 0; ", "center pt { ring dim 0; "))
    assert err.code == "E_MISSING"


def test_invalid_top_degree():
    # two free generators leave a 3-dimensional top degree
    text = "space X\ndim 2\ngen H 2\ngen K 2\npoint H^2\n"
    assert error_of(text).code == "E_INVALID"


def test_round_trip_sample():
    doc = parse_space(P2_TEXT)
    text = serialize_space(doc)
    assert parse_space(text) == doc
    assert serialize_space(parse_space(text)) == text


@pytest.mark.parametrize("name", entry_names())
def test_round_trip_catalog(name):
    doc = document_from_entry(get_entry(name))
    text = serialize_space(doc)
    again = parse_space(text)
    assert again == doc
    assert serialize_space(again) == text
    rebuilt = build_entry(again)
    orig = get_entry(name)
    assert rebuilt.euler == orig.euler
    assert sorted(rebuilt.arrangements) == sorted(orig.arrangements)
    assert sorted(rebuilt.centers) == sorted(orig.centers)


def test_sample_space_file():
    entry = load_space_file(SPACES / "F1.space")
    assert entry.name == "F1"
    assert entry.euler == 4
    assert log_chern(entry.space, strata(entry.arrangements["toric"])) == 1
