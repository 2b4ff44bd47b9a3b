"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's own reduction code:
normal forms are checked with sympy Groebner bases and symmetric-function
identities with explicit root variables.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

import pytest
import sympy
from hypothesis import strategies as st

from logchern.expr import parse_poly
from logchern.ring import RingPresentation, build_ring


def present(gens, rels, top):
    """Build a ring from ``[(name, degree)]`` and relation strings."""
    names = [g for g, _ in gens]
    return build_ring(RingPresentation(tuple(gens), tuple(parse_poly(r, names) for r in rels), top))


def to_sympy(p, symbols):
    out = sympy.Integer(0)
    for m, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(symbols, m):
            term *= s**k
        out += term
    return sympy.expand(out)


class GroebnerOracle:
    """Membership in ``relations + (all monomials above the top degree)``."""

    def __init__(self, gens, rels, top):
        self.names = [g for g, _ in gens]
        self.degrees = [d for _, d in gens]
        self.symbols = sympy.symbols(self.names)
        ideal = [to_sympy(parse_poly(r, self.names), self.symbols) for r in rels]
        cap = top + max(self.degrees)
        for exps in iproduct(*(range(cap // d + 1) for d in self.degrees)):
            deg = sum(e * d for e, d in zip(exps, self.degrees))
            if top < deg <= cap:
                ideal.append(sympy.prod([s**e for s, e in zip(self.symbols, exps)]))
        self.basis = sympy.groebner(ideal, *self.symbols, order="grevlex", domain="QQ")

    def is_zero(self, p) -> bool:
        expr = to_sympy(p, self.symbols) if isinstance(p, dict) else sympy.expand(p)
        if expr == 0:
            return True
        _, rem = self.basis.reduce(expr)
        return rem == 0


# rings used across the suite: generators, relations, top degree
RING_CASES = {
    "P2": ([("H", 2)], ["H^3"], 4),
    "BlptP2": ([("H", 2), ("e", 2)], ["H^3", "H*e", "e^2 + H^2"], 4),
    "P1xP1": ([("a", 2), ("b", 2)], ["a^2", "b^2"], 4),
    # Gr(2,4) in the Chern classes of the quotient bundle
    "Gr24": ([("c", 2), ("d", 4)], ["c^3 - 2*c*d", "c^2*d - d^2"], 8),
}


@pytest.fixture(scope="session")
def rings():
    return {k: present(*v) for k, v in RING_CASES.items()}


fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def classes(draw, ring, constant=None):
    """Random class: independent rational coordinates on the monomial basis."""
    out = ring.zero
    for d in range(0, ring.top + 1, 2):
        for i in range(ring.dim(d)):
            coeff = draw(fractions)
            if d == 0 and constant is not None:
                coeff = Fraction(constant)
            out = out + ring.basis_class(d, i) * coeff
    return out


def from_sympy(ring, expr):
    """Convert a sympy polynomial in the ring's generators into a class."""
    expr = sympy.expand(expr)
    if expr == 0:
        return ring.zero
    syms = sympy.symbols(list(ring.names))
    poly = sympy.Poly(expr, *syms)
    return ring.from_poly(
        {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}
    )


def truncate(expr, symbols, max_total):
    """Drop monomials of total (complex) degree above ``max_total``."""
    poly = sympy.Poly(sympy.expand(expr), *symbols)
    return sum(
        (c * sympy.prod([s**k for s, k in zip(symbols, m)]) for m, c in poly.terms() if sum(m) <= max_total),
        sympy.Integer(0),
    )


def assert_presentation(b, gens, rels):
    """Every monomial normal form agrees with a Groebner basis of ``rels``."""
    ring = b.space.ring
    oracle = GroebnerOracle(gens, rels, ring.top)
    degs = [d for _, d in gens]
    for m in iproduct(*(range(ring.top // d + 2) for d in degs)):
        p = ring.from_poly({m: 1}).to_poly()
        p[m] = p.get(m, 0) - 1
        assert oracle.is_zero({k: v for k, v in p.items() if v}), m
