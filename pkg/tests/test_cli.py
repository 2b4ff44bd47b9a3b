import json
import subprocess
import sys
from dataclasses import asdict
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logchern.catalog import get_entry
from logchern.charclass import compare
from logchern.cli import _add_checks, main, run
from logchern.report import Report, emit_json, emit_report, emit_text, encode_class, render_class

SPACES = str(Path(__file__).resolve().parent.parent / "spaces")


def test_logchern_toric():
    r, code = run("logchern", ["catalog:P2", "toric"])
    assert code == 0
    assert r.classes["log_chern"] == {"0": {"1": "1"}}
    assert r.integrality["log_chern"] is True


def test_verify_cor15_point_in_plane():
    r, code = run("verify-cor15", ["catalog:P2", "twolines", "pt_in_P2"])
    assert code == 0
    assert r.classes["lhs"] == r.classes["rhs"] == {"0": {"1": "1"}, "2": {"H": "1"}}
    assert r.verdicts["verify_cor15"] is True


def test_blowup_emit_ring():
    r, code = run("blowup", ["catalog:P3", "line_in_P3", "--emit-ring"])
    assert code == 0
    assert "e^2 - 2*H*e + H^2" in r.details["relations"]
    assert r.details["betti"]["blowup"] == [1, 2, 2, 1]


@pytest.mark.parametrize(
    "command,args",
    [
        ("strata", ["catalog:P3", "twoplanes"]),
        ("verify-logpullback", ["catalog:P3", "twoplanes", "line_in_P3"]),
        ("verify-split", ["catalog:P2", "twolines", "--smooth", "H"]),
        ("verify-grr", ["catalog:P1xP2", "toric"]),
        ("check-integrality", ["catalog:P2", "nodal_cubic"]),
        ("catalog", ["P1xP1"]),
        ("catalog", []),
    ],
)
def test_commands_pass(command, args):
    r, code = run(command, args)
    assert code == 0, r.error or r.verdicts


def test_verdict_failure_exit_code():
    r, code = run("check-integrality", ["catalog:P2", "--class", "3/2*H"])
    assert code == 1
    assert r.details["offenders"] == [{"degree": 2, "monomial": "H", "coefficient": "3/2"}]


@pytest.mark.parametrize(
    "args,code",
    [
        (["logchern", "catalog:P2", "nope"], "E_MISSING"),
        (["logchern", "catalog:P42", "toric"], "E_MISSING"),
        (["blowup", "catalog:P2", "nope"], "E_MISSING"),
        (["check-integrality", "catalog:P2", "--class", "1.5*H"], "E_FLOAT"),
        (["verify-cor15", "catalog:P2", "threelines", "pt_in_P2"], "E_UNSUPPORTED"),
        (["verify-grr", "catalog:P2", "nodal_cubic"], "E_UNSUPPORTED"),
        (["logchern", "/nonexistent.space", "x"], "E_MISSING"),
    ],
)
def test_input_errors(args, code):
    r, exit_code = run(args[0], args[1:])
    assert exit_code == 2
    assert r.error["code"] == code


def test_failed_verdict_reports_difference():
    s = get_entry("P2").space
    H = s.ring.gen("H")
    r = Report("demo")
    _add_checks(r, compare("demo", 1 + H, 1 + H + H * H))
    assert r.ok is False
    assert r.classes["difference[demo]"] == {"4": {"H^2": "-1"}}
    assert r.details["first_discrepancy[demo]"] == 4
    assert "verdict demo: FAIL" in emit_text(r)


def test_text_rendering():
    s = get_entry("P2").space
    H = s.ring.gen("H")
    assert render_class(encode_class(1 + 2 * H + H * H)) == ["deg 0: 1", "deg 2: 2*H", "deg 4: H^2"]
    assert encode_class(1 + 2 * H + H * H, max_degree=2) == {"0": {"1": "1"}, "2": {"H": "2"}}
    with pytest.raises(ValueError):
        emit_report(Report("x"), "yaml")


@pytest.mark.parametrize(
    "args",
    [
        ["verify-cor15", "catalog:P3", "twoplanes", "line_in_P3"],
        ["blowup", "catalog:P1xP2", "pt_in_P1xP2", "--emit-ring"],
        ["logchern", "catalog:P2", "nope"],
    ],
)
def test_json_round_trip(args):
    r, _ = run(args[0], args[1:])
    text = emit_json(r)
    back = Report.from_json(text)
    assert asdict(back) == json.loads(text)
    assert emit_json(back) == text


names = st.text(alphabet="abcH_^*12", min_size=1, max_size=6)
ratios = st.fractions(max_denominator=9).map(str)


@settings(max_examples=50, deadline=None)
@given(
    st.dictionaries(names, st.dictionaries(names, ratios, max_size=3), max_size=3),
    st.dictionaries(names, st.booleans(), max_size=4),
)
def test_json_round_trip_property(classes, verdicts):
    r = Report("prop", {"space": "x"}, all(verdicts.values()), {"c": classes}, verdicts)
    assert Report.from_json(emit_json(r)) == r


def test_deterministic_output(capsys):
    outputs = []
    for _ in range(2):
        for fmt in ([], ["--json"]):
            main(["verify-cor15", "catalog:P2", "twolines", "pt_in_P2", *fmt])
            outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[2] and outputs[1] == outputs[3]
    main(["logchern", "catalog:P2", "toric", "--json", "--timing"])
    assert json.loads(capsys.readouterr().out)["timing"] is not None


def test_catalog_dir_and_environment(monkeypatch):
    r, code = run("logchern", ["catalog:F1", "toric", "--catalog-dir", SPACES])
    assert code == 0 and r.classes["log_chern"] == {"0": {"1": "1"}}
    monkeypatch.setenv("LOGCHERN_CATALOG", SPACES)
    r, code = run("verify-cor15", ["catalog:F1", "corner", "corner_pt"])
    assert code == 0
    r, code = run("catalog", [])
    assert "F1" in [e["name"] for e in r.details["entries"]]
    monkeypatch.setenv("LOGCHERN_CATALOG", "/nonexistent-dir")
    assert run("catalog", [])[1] == 2


def test_emit_space_round_trips_through_file(tmp_path):
    r, code = run("catalog", ["P1xP1", "--emit-space"])
    assert code == 0
    path = tmp_path / "quadric.space"
    path.write_text(r.details["space_file"])
    r2, code2 = run("verify-cor15", [str(path), "fibers", "pt_in_P1xP1"])
    assert code2 == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "logchern", "logchern", "catalog:P2", "line"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "deg 4: H^2" in proc.stdout
    proc = subprocess.run(
        [sys.executable, "-m", "logchern", "logchern", "catalog:P2", "nope"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 2
    assert "E_MISSING" in proc.stderr
