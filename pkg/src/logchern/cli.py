"""Command-line front end.

Exit codes: 0 success / all verdicts pass, 1 some verdict failed, 2 input error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import catalog as cat
from .blowup import (
    BlowupError,
    betti_check,
    blowup,
    integrate_blowup,
    integration_consistency,
    log_pullback_check,
    proper_transform,
    ptdiff_check,
    validate_center,
    verify_blowup_formula,
)
from .charclass import Verdict, grr_check
from .divisor import (
    ArrangementError,
    SCArrangement,
    inverse_law_check,
    log_chern,
    reconstruction_check,
    smooth_split_check,
    strata,
)
from .expr import ExprError
from .report import Report, emit_report
from .ring import RingError, integrality_check
from .spacefile import SpaceFileError, document_from_entry, load_space_file, serialize_space

COMMANDS = (
    "logchern",
    "strata",
    "blowup",
    "verify-cor15",
    "verify-logpullback",
    "verify-split",
    "verify-grr",
    "catalog",
    "check-integrality",
)

CATALOG_ENV = "LOGCHERN_CATALOG"


class InputError(Exception):
    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.code = code
        self.line = line
        self.column = column


# -- input resolution -------------------------------------------------------------


def _catalog_dirs(opts) -> list[Path]:
    dirs = [Path(p) for p in (opts.catalog_dir or [])]
    env = os.environ.get(CATALOG_ENV)
    if env:
        dirs += [Path(p) for p in env.split(os.pathsep) if p]
    return dirs


def _extra_entries(opts) -> dict[str, cat.CatalogEntry]:
    out = {}
    for d in _catalog_dirs(opts):
        if not d.is_dir():
            raise InputError("E_MISSING", f"catalog directory {d} does not exist")
        for path in sorted(d.glob("*.space")):
            entry = _load_file(path)
            out.setdefault(entry.name, entry)
    return out


def _load_file(path: Path) -> cat.CatalogEntry:
    try:
        return load_space_file(path)
    except FileNotFoundError:
        raise InputError("E_MISSING", f"no such space file: {path}") from None
    except SpaceFileError as exc:
        raise InputError(exc.code, f"{path}: {exc.args[0]}", exc.line, exc.column) from None


def resolve_space(ref: str, opts) -> cat.CatalogEntry:
    if ref.startswith("catalog:"):
        name = ref[len("catalog:"):]
        if name in cat.entry_names():
            return cat.get_entry(name)
        extra = _extra_entries(opts)
        if name in extra:
            return extra[name]
        raise InputError("E_MISSING", f"unknown catalog entry {name!r}")
    return _load_file(Path(ref))


def resolve_divisor(entry: cat.CatalogEntry, name: str):
    if name in entry.arrangements:
        return entry.arrangements[name]
    if name in entry.strata:
        return entry.strata[name]
    raise InputError("E_MISSING", f"space {entry.name} has no divisor {name!r}")


def resolve_sc(entry: cat.CatalogEntry, name: str) -> SCArrangement:
    d = resolve_divisor(entry, name)
    if not isinstance(d, SCArrangement):
        raise InputError("E_UNSUPPORTED", f"{name!r} is given by strata only; this command needs an SC arrangement")
    return d


def resolve_center(entry: cat.CatalogEntry, name: str):
    if name in entry.centers:
        return entry.centers[name]
    raise InputError("E_MISSING", f"space {entry.name} has no center {name!r}")


# -- commands -----------------------------------------------------------------------


def _add_checks(report: Report, v: Verdict, prefix: str = "") -> None:
    for ch in v.checks:
        _add_checks(report, ch, f"{prefix}{v.name}.")
    report.add_verdict(prefix + v.name, v.passed)
    if not v.passed and v.difference is not None:
        report.add_class(f"difference[{prefix}{v.name}]", v.difference)
        report.details[f"first_discrepancy[{prefix}{v.name}]"] = v.first_discrepancy


def cmd_logchern(opts, report: Report) -> None:
    entry = resolve_space(opts.space, opts)
    div = resolve_divisor(entry, opts.divisor)
    d = strata(div) if isinstance(div, SCArrangement) else div
    x = log_chern(entry.space, d)
    report.add_class("log_chern", x, opts.max_degree)
    report.integrality["log_chern"] = integrality_check(x).passed
    report.details["divisor_kind"] = "sc" if isinstance(div, SCArrangement) else "strata"
    _add_checks(report, inverse_law_check(entry.space, d))


def cmd_strata(opts, report: Report) -> None:
    entry = resolve_space(opts.space, opts)
    div = resolve_divisor(entry, opts.divisor)
    d = strata(div) if isinstance(div, SCArrangement) else div
    for k in range(1, d.r + 1):
        report.add_class(f"pd{k}", d.get(k), opts.max_degree)
    report.add_class("total", d.total(), opts.max_degree)
    report.details["r"] = d.r
    if isinstance(div, SCArrangement):
        _add_checks(report, reconstruction_check(div))


def cmd_blowup(opts, report: Report) -> None:
    entry = resolve_space(opts.space, opts)
    center = resolve_center(entry, opts.center)
    v = validate_center(center)
    _add_checks(report, v)
    if not v.passed:
        return
    b = blowup(center)
    ring = b.space.ring
    report.add_class("e", b.e, opts.max_degree)
    betti = betti_check(b)
    _add_checks(report, betti)
    _add_checks(report, integration_consistency(b))
    report.details["r"] = b.r
    report.details["betti"] = betti.details
    n = ring.n
    top = b.e**n
    report.details[f"integral e^{n}"] = str(b.space.integrate(top))
    report.add_verdict("e_power_routes", b.space.integrate(top) == integrate_blowup(b, top))
    if opts.emit_ring:
        report.details["generators"] = [f"{g} {d}" for g, d in ring.presentation.generators]
        report.details["relations"] = list(b.relations)
        report.details["basis"] = {str(d): ring.basis_strings(d) for d in range(0, ring.top + 1, 2)}


def _blowup_inputs(opts):
    entry = resolve_space(opts.space, opts)
    arr = resolve_sc(entry, opts.divisor)
    center = resolve_center(entry, opts.center)
    return entry, arr, blowup(center)


def cmd_verify_cor15(opts, report: Report) -> None:
    _, arr, b = _blowup_inputs(opts)
    v = verify_blowup_formula(b, arr)
    report.add_class("lhs", v.lhs, opts.max_degree)
    report.add_class("rhs", v.rhs, opts.max_degree)
    report.add_class("c(TX~)", v.details["ctx"], opts.max_degree)
    bar, _ = proper_transform(b, arr)
    for label, cls_ in zip(bar.labels, bar.classes):
        report.add_class(f"proper_transform[{label}]", cls_, opts.max_degree)
    for ch in v.checks:
        if ch.name.startswith("integrality_"):
            report.integrality[ch.name[len("integrality_"):]] = ch.passed
    _add_checks(report, v)
    _add_checks(report, ptdiff_check(b, arr))
    euler = next(ch for ch in v.checks if ch.name == "euler")
    report.details["euler"] = {k: str(x) for k, x in euler.details.items()}


def cmd_verify_logpullback(opts, report: Report) -> None:
    _, arr, b = _blowup_inputs(opts)
    v = log_pullback_check(b, arr)
    report.add_class("lhs", v.lhs, opts.max_degree)
    report.add_class("rhs", v.rhs, opts.max_degree)
    _add_checks(report, v)


def cmd_verify_split(opts, report: Report) -> None:
    entry = resolve_space(opts.space, opts)
    s = entry.space
    div = resolve_divisor(entry, opts.divisor)
    if opts.smooth is not None:
        try:
            v_extra = s.ring.element(opts.smooth)
        except ExprError as exc:
            raise InputError(exc.code, f"--smooth: {exc}", 0, exc.column) from None
        if v_extra and not v_extra.is_homogeneous(2):
            raise InputError("E_DEGREE", "--smooth class must have degree 2")
        d = strata(div) if isinstance(div, SCArrangement) else div
        v = smooth_split_check(s, d, v_extra)
        report.add_class("lhs", v.lhs, opts.max_degree)
        report.add_class("rhs", v.rhs, opts.max_degree)
        _add_checks(report, v)
        return
    if not isinstance(div, SCArrangement):
        raise InputError("E_UNSUPPORTED", "strata-only divisors need --smooth POLY")
    if len(div) == 0:
        raise InputError("E_UNSUPPORTED", "empty arrangement: pass the smooth component with --smooth POLY")
    for i, label in enumerate(div.labels):
        v = smooth_split_check(s, strata(div.without(i)), div.classes[i])
        v.name = f"smooth_split[{label}]"
        _add_checks(report, v)
        if i == len(div) - 1:
            report.add_class("lhs", v.lhs, opts.max_degree)
            report.add_class("rhs", v.rhs, opts.max_degree)


def cmd_verify_grr(opts, report: Report) -> None:
    entry = resolve_space(opts.space, opts)
    arr = resolve_sc(entry, opts.divisor)
    v = grr_check(entry.space, arr)
    ch, ch_to_c, omx = v.checks
    report.add_class("ch(iota_*O)", ch.lhs, opts.max_degree)
    report.add_class("c(iota_*O)", ch_to_c.rhs, opts.max_degree)
    report.add_class("c(Omega(log V))", omx.lhs, opts.max_degree)
    _add_checks(report, v)


def _entry_summary(entry: cat.CatalogEntry) -> dict:
    return {
        "name": entry.name,
        "dim": entry.space.n,
        "euler": entry.euler,
        "arrangements": sorted(entry.arrangements),
        "strata": sorted(entry.strata),
        "centers": sorted(entry.centers),
    }


def _check_entry(entry: cat.CatalogEntry, report: Report, prefix: str) -> None:
    s = entry.space
    if entry.euler is not None:
        report.add_verdict(f"{prefix}euler", s.euler_characteristic() == entry.euler)
    report.add_verdict(f"{prefix}point", s.integrate(s.point) == 1)
    for name, arr in entry.arrangements.items():
        report.add_verdict(f"{prefix}reconstruction[{name}]", reconstruction_check(arr).passed)
    for name, c in entry.centers.items():
        report.add_verdict(f"{prefix}validate_center[{name}]", validate_center(c).passed)


def cmd_catalog(opts, report: Report) -> None:
    if opts.name:
        entry = resolve_space(opts.name if ":" in opts.name else f"catalog:{opts.name}", opts)
        report.details["entry"] = _entry_summary(entry)
        if entry.space.ctx is not None:
            report.add_class("c(TX)", entry.space.ctx, opts.max_degree)
        _check_entry(entry, report, "")
        if opts.emit_space:
            report.details["space_file"] = serialize_space(document_from_entry(entry))
        return
    entries = [cat.get_entry(n) for n in cat.entry_names()]
    entries += list(_extra_entries(opts).values())
    report.details["entries"] = [_entry_summary(e) for e in entries]
    for e in entries:
        _check_entry(e, report, f"{e.name}.")


def cmd_check_integrality(opts, report: Report) -> None:
    entry = resolve_space(opts.space, opts)
    if opts.cls is not None:
        try:
            x = entry.space.ring.element(opts.cls)
        except ExprError as exc:
            raise InputError(exc.code, f"--class: {exc}", 0, exc.column) from None
        label = "class"
    else:
        if opts.divisor is None:
            raise InputError("E_USAGE", "give a DIVISOR or --class POLY")
        div = resolve_divisor(entry, opts.divisor)
        d = strata(div) if isinstance(div, SCArrangement) else div
        x = log_chern(entry.space, d)
        label = "log_chern"
    rep = integrality_check(x)
    report.add_class(label, x, opts.max_degree)
    report.integrality[label] = rep.passed
    report.details["offenders"] = [
        {"degree": d, "monomial": m, "coefficient": str(c)} for d, m, c in rep.offenders
    ]
    report.add_verdict("integrality", rep.passed)


HANDLERS = {
    "logchern": cmd_logchern,
    "strata": cmd_strata,
    "blowup": cmd_blowup,
    "verify-cor15": cmd_verify_cor15,
    "verify-logpullback": cmd_verify_logpullback,
    "verify-split": cmd_verify_split,
    "verify-grr": cmd_verify_grr,
    "catalog": cmd_catalog,
    "check-integrality": cmd_check_integrality,
}


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--max-degree", type=int, default=None, metavar="N", help="only display degrees <= N")
    common.add_argument("--catalog-dir", action="append", metavar="PATH", help="directory of extra *.space files")
    common.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="logchern", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_, *positionals):
        p = sub.add_parser(name, parents=[common], help=help_)
        for pos in positionals:
            p.add_argument(pos)
        return p

    add("logchern", "Chern class of the log tangent bundle", "space", "divisor")
    add("strata", "stratum classes PD[V^(k)]", "space", "divisor")
    p = add("blowup", "cohomology ring of a blowup", "space", "center")
    p.add_argument("--emit-ring", action="store_true", help="list generators, relations and bases")
    add("verify-cor15", "Chern class of the blowup along the deepest stratum", "space", "divisor", "center")
    add("verify-logpullback", "log tangent bundle pulls back under the blowup", "space", "divisor", "center")
    p = add("verify-split", "splitting off a smooth component", "space", "divisor")
    p.add_argument("--smooth", metavar="POLY", help="class of the extra smooth component")
    add("verify-grr", "Chern character / residue-sequence consistency", "space", "divisor")
    p = add("catalog", "list or check built-in spaces")
    p.add_argument("name", nargs="?")
    p.add_argument("--emit-space", action="store_true", help="print the entry as a space file")
    p = add("check-integrality", "coefficient integrality of the log Chern class", "space")
    p.add_argument("divisor", nargs="?")
    p.add_argument("--class", dest="cls", metavar="POLY", help="check this class instead")
    return parser


def _inputs(opts) -> dict[str, str]:
    keys = ("space", "divisor", "center", "name", "smooth", "cls")
    return {k: str(getattr(opts, k)) for k in keys if getattr(opts, k, None) is not None}


def run(command: str, args: list[str]) -> tuple[Report, int]:
    """Execute one command; returns the report and the process exit code."""
    opts = build_parser().parse_args([command, *args])
    return execute(opts)


def execute(opts) -> tuple[Report, int]:
    report = Report(opts.command, _inputs(opts))
    start = time.perf_counter()
    try:
        HANDLERS[opts.command](opts, report)
    except InputError as exc:
        report.ok = False
        report.error = {"code": exc.code, "message": str(exc), "line": exc.line, "column": exc.column}
    except (RingError, ArrangementError, BlowupError, cat.CatalogError) as exc:
        report.ok = False
        code = "E_UNSUPPORTED" if isinstance(exc, (BlowupError, ArrangementError)) else "E_INVALID"
        report.error = {"code": code, "message": str(exc), "line": 0, "column": 0}
    if opts.timing:
        report.timing = time.perf_counter() - start
    if report.error:
        return report, 2
    return report, 0 if report.ok else 1


def main(argv: list[str] | None = None) -> int:
    opts = build_parser().parse_args(argv)
    report, code = execute(opts)
    sys.stdout.write(emit_report(report, "json" if opts.json else "text"))
    if report.error and not opts.json:
        sys.stderr.write(f"logchern: {report.error['code']}: {report.error['message']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
