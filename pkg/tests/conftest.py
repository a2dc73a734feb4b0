"""Shared strategies, brute-force oracles and the acceptance summary hook."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from cleantangled.clutter import Clutter, minimalize

_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  [{detail}]"
        _ACCEPTANCE.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


# strategies -----------------------------------------------------------------------------


@st.composite
def clutters(draw, min_n: int = 1, max_n: int = 6, max_members: int = 8, allow_degenerate: bool = False):
    n = draw(st.integers(min_n, max_n))
    low = 0 if allow_degenerate else 1
    masks = draw(st.lists(st.integers(low, (1 << n) - 1), min_size=0 if allow_degenerate else 1, max_size=max_members))
    return Clutter(list(range(1, n + 1)), minimalize(masks))


@st.composite
def point_sets(draw, min_dim: int = 1, max_dim: int = 5):
    from cleantangled.pointset import PointSet, from_mask

    dim = draw(st.integers(min_dim, max_dim))
    masks = draw(st.sets(st.integers(0, (1 << dim) - 1), min_size=1, max_size=min(1 << dim, 12)))
    return PointSet(dim, [from_mask(m, dim) for m in sorted(masks)])


# brute-force oracles ------------------------------------------------------------------------


def brute_minimal_covers(c: Clutter) -> set[int]:
    """Every subset of the ground set that meets all members, then minimal ones."""
    covers = [b for b in range(1 << c.n) if all(m & b for m in c.members)]
    return set(minimalize(covers))


def brute_tau(c: Clutter) -> int:
    return min(bin(b).count("1") for b in range(1 << c.n) if all(m & b for m in c.members))


def solve_square(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system, or None when singular."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [a - f * p for a, p in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def brute_vertices(rows: list[list[int]], rels: list[str], rhs: list[int], n: int) -> list[tuple[Fraction, ...]]:
    """Vertices of {x >= 0 : rows x (rel) rhs}: choose n tight constraints, solve, keep feasible."""
    cons = [(list(map(Fraction, r)), rel, Fraction(v)) for r, rel, v in zip(rows, rels, rhs)]
    cons += [([Fraction(int(i == j)) for i in range(n)], ">=", Fraction(0)) for j in range(n)]
    out = set()
    for pick in combinations(range(len(cons)), n):
        x = solve_square([cons[i][0] for i in pick], [cons[i][2] for i in pick])
        if x is None:
            continue
        ok = True
        for row, rel, v in cons:
            lhs = sum(a * b for a, b in zip(row, x))
            if (rel == ">=" and lhs < v) or (rel == "<=" and lhs > v) or (rel == "=" and lhs != v):
                ok = False
                break
        if ok:
            out.add(tuple(x))
    return sorted(out)
