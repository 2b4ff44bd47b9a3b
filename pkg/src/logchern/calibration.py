"""Fix the blowup sign slots against a small oracle suite.

Projective-bundle sign conventions differ between sources, so the three
slots of :class:`~logchern.blowup.SignConvention` are chosen by search:
candidates are tried in a fixed order (all ``+1`` first) and the first one
satisfying every oracle wins.  The outcome is frozen as
:data:`logchern.blowup.SIGNS`; the test suite re-runs the search to confirm.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .blowup import (
    SignConvention,
    betti_check,
    blowup,
    chern_blowup,
    euler_check,
    integrate_blowup,
    integration_consistency,
)
from .catalog import get_entry

# (catalog entry, center, arrangement through it)
ORACLE_CENTERS = (
    ("P2", "pt_in_P2", "twolines"),
    ("P3", "pt_in_P3", "threeplanes"),
    ("P3", "line_in_P3", "twoplanes"),
    ("P1xP1", "pt_in_P1xP1", "fibers"),
)


@dataclass
class OracleResult:
    signs: SignConvention
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def run_oracles(signs: SignConvention) -> OracleResult:
    failures = []
    pt = blowup(get_entry("P2").centers["pt_in_P2"], signs)
    e2 = pt.e * pt.e
    if pt.space.integrate(e2) != -1:
        failures.append("pt_in_P2: ring-reduced e^2 does not integrate to -1")
    if integrate_blowup(pt, e2) != Fraction(-1):
        failures.append("pt_in_P2: closed-form e^2 does not integrate to -1")
    for entry_name, center, divisor in ORACLE_CENTERS:
        entry = get_entry(entry_name)
        b = blowup(entry.centers[center], signs)
        if not betti_check(b):
            failures.append(f"{center}: Betti decomposition")
        if not integration_consistency(b):
            failures.append(f"{center}: closed-form and ring integration disagree")
        ctx = chern_blowup(b, entry.arrangements[divisor])
        if not euler_check(b, ctx):
            failures.append(f"{center}: Euler characteristic law")
    return OracleResult(signs, failures)


def candidates():
    for center, lifts, fiber in product((1, -1), repeat=3):
        yield SignConvention(center, lifts, fiber)


def calibrate() -> SignConvention:
    """First sign convention passing every oracle."""
    tried = []
    for signs in candidates():
        result = run_oracles(signs)
        if result.passed:
            return signs
        tried.append(result)
    summary = "; ".join(f"{r.signs}: {r.failures[0]}" for r in tried)
    raise RuntimeError(f"no sign convention satisfies the oracle suite ({summary})")
