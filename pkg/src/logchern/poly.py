"""Sparse polynomials with exact rational coefficients.

A polynomial is a ``dict`` from exponent tuples to nonzero ``Fraction``
coefficients; the tuple positions follow a fixed generator list.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Monomial = tuple[int, ...]
Poly = dict[Monomial, Fraction]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(m: Monomial, degrees: Sequence[int]) -> int:
    return sum(e * d for e, d in zip(m, degrees))


def order_key(m: Monomial) -> Monomial:
    """Sort key within one degree: later generators weigh more.

    Leading terms are therefore the monomials richest in the last-declared
    generators, so normal forms prefer the earlier ones.
    """
    return tuple(reversed(m))


def monomials_of_degree(d: int, degrees: Sequence[int]) -> list[Monomial]:
    """All exponent vectors of weighted degree ``d``, ascending in :func:`order_key`."""
    out: list[Monomial] = []

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == len(degrees):
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // degrees[i] + 1):
            acc.append(e)
            rec(i + 1, left - e * degrees[i], acc)
            acc.pop()

    rec(0, d, [])
    out.sort(key=order_key)
    return out


def add(p: Poly, q: Poly, scale: Fraction | int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, Fraction(0)) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(m1, m2)
            v = out.get(m, Fraction(0)) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m)
    return out


def power(p: Poly, k: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: Fraction(1)}
    for _ in range(k):
        out = mul(out, p)
    return out


def constant(c: Fraction | int, nvars: int) -> Poly:
    return {(0,) * nvars: Fraction(c)} if c else {}


def variable(i: int, nvars: int) -> Poly:
    m = [0] * nvars
    m[i] = 1
    return {tuple(m): Fraction(1)}


def degrees_of(p: Poly, degrees: Sequence[int]) -> set[int]:
    return {mono_degree(m, degrees) for m in p}


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(m, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_terms(terms: Iterable[tuple[Fraction, str]]) -> str:
    """Render ``(coefficient, monomial-string)`` pairs as ``2*H - 1/2*H^2``."""
    out = ""
    for c, mono in terms:
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono == "1":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out or "0"


def format_poly(p: Poly, names: Sequence[str], degrees: Sequence[int], leading_first: bool = False) -> str:
    """Canonical rendering: ascending degree, then :func:`order_key` within a degree."""
    keys = sorted(p, key=lambda m: (mono_degree(m, degrees), order_key(m)), reverse=leading_first)
    return format_terms((p[m], format_monomial(m, names)) for m in keys)
