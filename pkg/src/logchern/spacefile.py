"""Line-oriented text format for spaces, divisors and blowup centers.

Example::

    space P2
    dim 2
    gen H 2
    rel H^3
    point H^2
    ctx 1 + 3*H + 3*H^2
    divisor toric = H, H, H
    strata nodal_cubic = 3*H; H^2
    center pt { ring dim 0; rho H -> 0; pdY H^2; cN 1; through twolines }

A center's ``ring`` statement takes comma-separated ``dim N``, ``gen NAME DEG``,
``rel POLY``, ``point POLY`` and ``ctx POLY`` items; ``lift i POLY`` gives
the ambient lift of ``c_i(N)`` (solved for when omitted) and ``through NAME``
names the arrangement whose deepest stratum is the center.  ``#`` starts a
comment.  Generators must be declared with ``gen`` before use; statements
may otherwise appear in any order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import BlowupError, make_center
from .catalog import CatalogEntry
from .divisor import ArrangementError, SCArrangement, StrataData
from .expr import ExprError, parse_poly
from .poly import Poly, degrees_of, format_poly
from .ring import Cls, RingError, RingPresentation, Space, build_ring

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"


class SpaceFileError(ValueError):
    """Input error with a machine-readable code and a 1-based position."""

    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.code = code
        self.line = line
        self.column = column

    def __str__(self) -> str:
        where = f"line {self.line}, column {self.column}: " if self.line else ""
        return f"{where}{self.code}: {self.args[0]}"


@dataclass
class CenterDoc:
    name: str
    dim: int = 0
    gens: list[tuple[str, int]] = field(default_factory=list)
    rels: list[Poly] = field(default_factory=list)
    point: Poly | None = None
    ctx: Poly | None = None
    rho: dict[str, Poly] = field(default_factory=dict)
    pd_y: Poly | None = None
    normal: Poly | None = None
    lifts: dict[int, Poly] = field(default_factory=dict)
    through: str | None = None
    line: int = field(default=0, compare=False, repr=False)


@dataclass
class SpaceFile:
    name: str = ""
    dim: int | None = None
    gens: list[tuple[str, int]] = field(default_factory=list)
    rels: list[Poly] = field(default_factory=list)
    point: Poly | None = None
    ctx: Poly | None = None
    divisors: dict[str, list[Poly]] = field(default_factory=dict)
    strata: dict[str, list[Poly]] = field(default_factory=dict)
    centers: dict[str, CenterDoc] = field(default_factory=dict)
    lines: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    @property
    def names(self) -> list[str]:
        return [g for g, _ in self.gens]

    @property
    def degrees(self) -> list[int]:
        return [d for _, d in self.gens]


# -- parsing ------------------------------------------------------------------


class _LineParser:
    def __init__(self, lineno: int, text: str):
        self.lineno = lineno
        self.text = text

    def error(self, code: str, message: str, col: int) -> SpaceFileError:
        return SpaceFileError(code, message, self.lineno, col)

    def poly(self, text: str, col: int, names, degrees=None, degree: int | None = None, what="polynomial") -> Poly:
        """Parse ``text`` found at 1-based column ``col``; optionally require homogeneity."""
        lead = len(text) - len(text.lstrip())
        try:
            p = parse_poly(text, names)
        except ExprError as exc:
            raise self.error(exc.code, str(exc), col + exc.column - 1) from None
        if degree is not None:
            degs = degrees_of(p, degrees)
            if len(degs) > 1:
                shown = " and ".join(str(d) for d in sorted(degs, reverse=True))
                raise self.error("E_DEGREE", f"{what} mixes degrees {shown}", col + lead)
            if degs and degs != {degree}:
                raise self.error(
                    "E_DEGREE", f"{what} has degree {next(iter(degs))}, expected {degree}", col + lead
                )
        return p

    def homogeneous(self, text: str, col: int, names, degrees, what: str) -> tuple[Poly, int | None]:
        p = self.poly(text, col, names)
        degs = degrees_of(p, degrees)
        if len(degs) > 1:
            shown = " and ".join(str(d) for d in sorted(degs, reverse=True))
            lead = len(text) - len(text.lstrip())
            raise self.error("E_DEGREE", f"{what} mixes degrees {shown}", col + lead)
        return p, (next(iter(degs)) if degs else None)

    def total(self, text: str, col: int, names, degrees, top: int, what: str) -> Poly:
        """A total class: constant term 1, nothing above the top degree."""
        p = self.poly(text, col, names)
        lead = len(text) - len(text.lstrip())
        over = sorted(d for d in degrees_of(p, degrees) if d > top)
        if over:
            raise self.error("E_DEGREE", f"{what} has terms of degree {over[-1]} above {top}", col + lead)
        const = p.get((0,) * len(names), Fraction(0))
        if const != 1:
            raise self.error("E_INVALID", f"{what} must have constant term 1, got {const}", col + lead)
        return p


def _segments(text: str, sep: str, base: int) -> list[tuple[str, int]]:
    """Split on ``sep``; each piece comes with the 1-based column where it starts."""
    out, start = [], 0
    for i, ch in enumerate(text + sep):
        if ch == sep:
            out.append((text[start:i], base + start))
            start = i + 1
    return out


def _strip(seg: tuple[str, int]) -> tuple[str, int]:
    text, col = seg
    lead = len(text) - len(text.lstrip())
    return text.strip(), col + lead


def _int(lp: _LineParser, text: str, col: int, what: str) -> int:
    if not re.fullmatch(r"\d+", text):
        raise lp.error("E_SYNTAX", f"expected a non-negative integer {what}, got {text!r}", col)
    return int(text)


def parse_space(text: str) -> SpaceFile:
    """Parse a space file; every failure is a positioned :class:`SpaceFileError`."""
    doc = SpaceFile()
    deferred: list[tuple[_LineParser, str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        lp = _LineParser(lineno, body)
        m = re.match(r"\s*(" + _IDENT + r")", body)
        if not m:
            col = len(body) - len(body.lstrip()) + 1
            raise lp.error("E_SYNTAX", "expected a keyword", col)
        kw = m.group(1)
        rest, rest_col = body[m.end():], m.end() + 1
        if kw == "space":
            name, col = _strip((rest, rest_col))
            if not re.fullmatch(_IDENT, name):
                raise lp.error("E_SYNTAX", "expected a space name", col)
            if doc.name:
                raise lp.error("E_DUPLICATE", "space declared twice", m.start(1) + 1)
            doc.name = name
            doc.lines["space"] = lineno
        elif kw == "dim":
            val, col = _strip((rest, rest_col))
            if doc.dim is not None:
                raise lp.error("E_DUPLICATE", "dim declared twice", m.start(1) + 1)
            doc.dim = _int(lp, val, col, "dimension")
            doc.lines["dim"] = lineno
        elif kw == "gen":
            g = re.fullmatch(r"\s+(" + _IDENT + r")\s+(\S+)\s*", rest)
            if not g:
                raise lp.error("E_SYNTAX", "expected 'gen NAME DEGREE'", rest_col)
            name = g.group(1)
            deg = _int(lp, g.group(2), rest_col + g.start(2), "degree")
            if name in doc.names:
                raise lp.error("E_DUPLICATE", f"generator {name} declared twice", rest_col + g.start(1))
            if deg < 2 or deg % 2:
                raise lp.error("E_DEGREE", f"generator degree must be even and >= 2, got {deg}", rest_col + g.start(2))
            doc.gens.append((name, deg))
        elif kw in ("rel", "point", "ctx", "divisor", "strata", "center"):
            deferred.append((lp, kw, rest, rest_col))
        else:
            raise lp.error("E_UNKNOWN_KEYWORD", f"unknown keyword {kw!r}", m.start(1) + 1)
    if not doc.name:
        raise SpaceFileError("E_MISSING", "no 'space NAME' line", 0, 0)
    if doc.dim is None:
        raise SpaceFileError("E_MISSING", "no 'dim N' line", doc.lines["space"], 1)
    top = 2 * doc.dim
    for lp, kw, rest, col in deferred:
        if kw == "rel":
            p, _ = lp.homogeneous(rest, col, doc.names, doc.degrees, "relation")
            doc.rels.append(p)
        elif kw == "point":
            if doc.point is not None:
                raise lp.error("E_DUPLICATE", "point declared twice", 1)
            doc.point = lp.poly(rest, col, doc.names, doc.degrees, top, "point class")
            doc.lines["point"] = lp.lineno
        elif kw == "ctx":
            if doc.ctx is not None:
                raise lp.error("E_DUPLICATE", "ctx declared twice", 1)
            doc.ctx = lp.total(rest, col, doc.names, doc.degrees, top, "ctx")
            doc.lines["ctx"] = lp.lineno
        elif kw in ("divisor", "strata"):
            _parse_divisor(doc, lp, kw, rest, col)
        else:
            _parse_center(doc, lp, rest, col)
    if doc.point is None:
        raise SpaceFileError("E_MISSING", "no 'point POLY' line", doc.lines["space"], 1)
    return doc


def _parse_divisor(doc: SpaceFile, lp: _LineParser, kw: str, rest: str, col: int) -> None:
    m = re.match(r"\s*(" + _IDENT + r")\s*=", rest)
    if not m:
        raise lp.error("E_SYNTAX", f"expected '{kw} NAME = ...'", col)
    name = m.group(1)
    if name in doc.divisors or name in doc.strata:
        raise lp.error("E_DUPLICATE", f"divisor {name} declared twice", col + m.start(1))
    body, body_col = rest[m.end():], col + m.end()
    sep = "," if kw == "divisor" else ";"
    polys = []
    if body.strip():
        for k, (seg, scol) in enumerate(_segments(body, sep, body_col), start=1):
            deg = 2 if kw == "divisor" else 2 * k
            what = "divisor component" if kw == "divisor" else f"stratum class {k}"
            polys.append(lp.poly(seg, scol, doc.names, doc.degrees, deg, what))
    (doc.divisors if kw == "divisor" else doc.strata)[name] = polys
    doc.lines[f"{kw}:{name}"] = lp.lineno


def _parse_center(doc: SpaceFile, lp: _LineParser, rest: str, col: int) -> None:
    m = re.match(r"\s*(" + _IDENT + r")\s*\{(.*)\}\s*$", rest)
    if not m:
        raise lp.error("E_SYNTAX", "expected 'center NAME { ... }' on one line", col)
    name = m.group(1)
    if name in doc.centers:
        raise lp.error("E_DUPLICATE", f"center {name} declared twice", col + m.start(1))
    c = CenterDoc(name, line=lp.lineno)
    stmts = [_strip(s) for s in _segments(m.group(2), ";", col + m.start(2))]
    ring_stmt = [s for s in stmts if s[0].split(" ", 1)[0] == "ring"]
    if len(ring_stmt) != 1:
        raise lp.error("E_MISSING" if not ring_stmt else "E_DUPLICATE", "center needs exactly one 'ring' statement", col)
    _parse_center_ring(c, lp, *ring_stmt[0])
    ctop = 2 * c.dim
    cnames, cdegs = [g for g, _ in c.gens], [d for _, d in c.gens]
    for text, scol in stmts:
        if not text:
            continue
        word = text.split(None, 1)[0]
        tail = text[len(word):]
        tcol = scol + len(word)
        if word == "ring":
            continue
        if word == "rho":
            r = re.fullmatch(r"\s*(" + _IDENT + r")\s*->(.*)", tail)
            if not r:
                raise lp.error("E_SYNTAX", "expected 'rho GEN -> POLY'", tcol)
            gen = r.group(1)
            if gen not in doc.names:
                raise lp.error("E_UNKNOWN_GEN", f"unknown ambient generator {gen!r}", tcol + r.start(1))
            if gen in c.rho:
                raise lp.error("E_DUPLICATE", f"rho of {gen} given twice", tcol + r.start(1))
            gdeg = dict(doc.gens)[gen]
            c.rho[gen] = lp.poly(r.group(2), tcol + r.start(2), cnames, cdegs, gdeg, f"image of {gen}")
        elif word == "pdY":
            p, _ = lp.homogeneous(tail, tcol, doc.names, doc.degrees, "pdY")
            c.pd_y = p
        elif word == "cN":
            c.normal = lp.total(tail, tcol, cnames, cdegs, ctop, "cN")
        elif word == "lift":
            r = re.fullmatch(r"\s*(\d+)(.*)", tail)
            if not r:
                raise lp.error("E_SYNTAX", "expected 'lift i POLY'", tcol)
            i = int(r.group(1))
            c.lifts[i] = lp.poly(r.group(2), tcol + r.start(2), doc.names, doc.degrees, 2 * i, f"lift {i}")
        elif word == "through":
            target = tail.strip()
            if not re.fullmatch(_IDENT, target):
                raise lp.error("E_SYNTAX", "expected 'through DIVISOR'", tcol)
            c.through = target
        else:
            raise lp.error("E_UNKNOWN_KEYWORD", f"unknown center statement {word!r}", scol)
    missing = [g for g in doc.names if g not in c.rho]
    if missing:
        raise lp.error("E_MISSING", f"center {name} lacks rho for {', '.join(missing)}", col)
    if c.pd_y is None or c.normal is None:
        raise lp.error("E_MISSING", f"center {name} needs both pdY and cN", col)
    doc.centers[name] = c


def _parse_center_ring(c: CenterDoc, lp: _LineParser, text: str, col: int) -> None:
    items = [_strip(s) for s in _segments(text[4:], ",", col + 4)]
    deferred = []
    seen_dim = False
    for item, icol in items:
        if not item:
            continue
        word, _, tail = item.partition(" ")
        tcol = icol + len(word) + 1
        if word == "dim":
            c.dim = _int(lp, tail.strip(), tcol, "dimension")
            seen_dim = True
        elif word == "gen":
            g = re.fullmatch(r"\s*(" + _IDENT + r")\s+(\d+)\s*", tail)
            if not g:
                raise lp.error("E_SYNTAX", "expected 'gen NAME DEGREE'", tcol)
            deg = int(g.group(2))
            if deg < 2 or deg % 2:
                raise lp.error("E_DEGREE", f"generator degree must be even and >= 2, got {deg}", tcol + g.start(2))
            if g.group(1) in [n for n, _ in c.gens]:
                raise lp.error("E_DUPLICATE", f"generator {g.group(1)} declared twice", tcol)
            c.gens.append((g.group(1), deg))
        elif word in ("rel", "point", "ctx"):
            deferred.append((word, tail, tcol))
        else:
            raise lp.error("E_UNKNOWN_KEYWORD", f"unknown ring item {word!r}", icol)
    if not seen_dim:
        raise lp.error("E_MISSING", "center ring needs 'dim N'", col)
    names, degs = [g for g, _ in c.gens], [d for _, d in c.gens]
    for word, tail, tcol in deferred:
        if word == "rel":
            c.rels.append(lp.homogeneous(tail, tcol, names, degs, "relation")[0])
        elif word == "point":
            c.point = lp.poly(tail, tcol, names, degs, 2 * c.dim, "point class")
        else:
            c.ctx = lp.total(tail, tcol, names, degs, 2 * c.dim, "ctx")


# -- serialization --------------------------------------------------------------


def serialize_space(doc: SpaceFile) -> str:
    """Canonical text; ``parse_space(serialize_space(d)) == d``."""
    names, degs = doc.names, doc.degrees

    def fmt(p: Poly, n=names, d=degs) -> str:
        return format_poly(p, n, d)

    lines = [f"space {doc.name}", f"dim {doc.dim}"]
    lines += [f"gen {g} {d}" for g, d in doc.gens]
    lines += [f"rel {fmt(r)}" for r in doc.rels]
    if doc.point is not None:
        lines.append(f"point {fmt(doc.point)}")
    if doc.ctx is not None:
        lines.append(f"ctx {fmt(doc.ctx)}")
    for name, polys in doc.divisors.items():
        lines.append(f"divisor {name} = {', '.join(fmt(p) for p in polys)}".rstrip())
    for name, polys in doc.strata.items():
        lines.append(f"strata {name} = {'; '.join(fmt(p) for p in polys)}".rstrip())
    for c in doc.centers.values():
        cn, cd = [g for g, _ in c.gens], [d for _, d in c.gens]
        ring = [f"dim {c.dim}"] + [f"gen {g} {d}" for g, d in c.gens]
        ring += [f"rel {fmt(r, cn, cd)}" for r in c.rels]
        if c.point is not None:
            ring.append(f"point {fmt(c.point, cn, cd)}")
        if c.ctx is not None:
            ring.append(f"ctx {fmt(c.ctx, cn, cd)}")
        stmts = ["ring " + ", ".join(ring)]
        stmts += [f"rho {g} -> {fmt(p, cn, cd)}" for g, p in c.rho.items()]
        stmts.append(f"pdY {fmt(c.pd_y)}")
        stmts.append(f"cN {fmt(c.normal, cn, cd)}")
        stmts += [f"lift {i} {fmt(p)}" for i, p in sorted(c.lifts.items())]
        if c.through:
            stmts.append(f"through {c.through}")
        lines.append(f"center {c.name} {{ " + "; ".join(stmts) + " }")
    return "\n".join(lines) + "\n"


# -- conversion to and from engine objects ------------------------------------


def _space_error(exc: Exception, line: int) -> SpaceFileError:
    return SpaceFileError("E_INVALID", str(exc), line, 1)


def build_entry(doc: SpaceFile) -> CatalogEntry:
    """Turn a parsed document into a :class:`CatalogEntry`."""
    try:
        ring = build_ring(RingPresentation(tuple(doc.gens), tuple(doc.rels), 2 * doc.dim))
        ctx = ring.from_poly(doc.ctx) if doc.ctx is not None else None
        space = Space(ring, ring.from_poly(doc.point), ctx, doc.name)
    except RingError as exc:
        raise _space_error(exc, doc.lines.get("space", 0)) from None
    euler = None
    if ctx is not None:
        chi = space.euler_characteristic()
        euler = int(chi) if chi.denominator == 1 else None
    entry = CatalogEntry(doc.name, space, euler)
    for name, polys in doc.divisors.items():
        classes = tuple(ring.from_poly(p) for p in polys)
        try:
            entry.arrangements[name] = SCArrangement.of(space, classes)
        except ArrangementError as exc:
            raise _space_error(exc, doc.lines.get(f"divisor:{name}", 0)) from None
    for name, polys in doc.strata.items():
        entry.strata[name] = StrataData(space, tuple(ring.from_poly(p) for p in polys))
    for name, c in doc.centers.items():
        try:
            entry.centers[name] = _build_center(space, c)
        except (RingError, BlowupError) as exc:
            raise _space_error(exc, c.line) from None
        if c.through:
            if c.through not in entry.arrangements:
                raise SpaceFileError("E_MISSING", f"center {name} goes through unknown divisor {c.through!r}", c.line, 1)
            entry.center_divisors[name] = c.through
    return entry


def _build_center(space: Space, c: CenterDoc):
    ring = build_ring(RingPresentation(tuple(c.gens), tuple(c.rels), 2 * c.dim))
    if c.point is not None:
        point = ring.from_poly(c.point)
    elif c.dim == 0:
        point = ring.one
    else:
        raise RingError(f"center {c.name} of positive dimension needs a point class")
    ctx = ring.from_poly(c.ctx) if c.ctx is not None else None
    cspace = Space(ring, point, ctx, c.name)
    rho = {g: ring.from_poly(p) for g, p in c.rho.items()}
    lifts = {i: space.ring.from_poly(p) for i, p in c.lifts.items()}
    return make_center(
        space, cspace, rho, space.ring.from_poly(c.pd_y), ring.from_poly(c.normal), lifts, c.name
    )


def _poly_of(x: Cls) -> Poly:
    return x.to_poly()


def document_from_entry(entry: CatalogEntry) -> SpaceFile:
    """Space-file document describing a catalog entry."""
    s = entry.space
    ring = s.ring
    doc = SpaceFile(
        name=entry.name,
        dim=s.n,
        gens=list(ring.presentation.generators),
        rels=[dict(r) for r in ring.presentation.relations],
        point=_poly_of(s.point),
        ctx=_poly_of(s.ctx) if s.ctx is not None else None,
    )
    for name, arr in entry.arrangements.items():
        doc.divisors[name] = [_poly_of(v) for v in arr.classes]
    for name, d in entry.strata.items():
        doc.strata[name] = [_poly_of(c) for c in d.pd]
    for name, c in entry.centers.items():
        cr = c.center.ring
        doc.centers[name] = CenterDoc(
            name=name,
            dim=c.center.n,
            gens=list(cr.presentation.generators),
            rels=[dict(r) for r in cr.presentation.relations],
            point=_poly_of(c.center.point),
            ctx=_poly_of(c.center.ctx) if c.center.ctx is not None else None,
            rho={g: _poly_of(img) for g, img in zip(ring.names, c.rho.images)},
            pd_y=_poly_of(c.pd_y),
            normal=_poly_of(c.normal.c),
            lifts={i: _poly_of(lift) for i, lift in enumerate(c.lifts, start=1)},
            through=entry.center_divisors.get(name),
        )
    return doc


def load_space_file(path) -> CatalogEntry:
    with open(path, encoding="utf-8") as fh:
        return build_entry(parse_space(fh.read()))


__all__ = [
    "SpaceFile",
    "CenterDoc",
    "SpaceFileError",
    "parse_space",
    "serialize_space",
    "build_entry",
    "document_from_entry",
    "load_space_file",
]
