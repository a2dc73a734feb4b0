"""Named instances and small-clutter enumeration."""

from __future__ import annotations

import hashlib
from collections.abc import Iterator
from itertools import permutations
from pathlib import Path

from .binary import cocycle_space, pg
from .clutter import Clutter, dumps, loads
from .errors import GuardError
from .pointset import PointSet, cuboid
from .pointset import loads as loads_points
from .recognition import delta, l7, odd_hole

Q6_SETS = ((2, 4, 6), (1, 3, 6), (1, 4, 5), (2, 3, 5))

Q_MATRIX = (
    (1, 1, 0, 0, 1, 0, 1, 0),
    (1, 1, 0, 0, 0, 1, 0, 1),
    (0, 0, 1, 1, 1, 0, 0, 1),
    (0, 0, 1, 1, 0, 1, 1, 0),
    (1, 0, 1, 1, 1, 0, 1, 0),
    (0, 1, 1, 0, 0, 1, 0, 1),
    (0, 1, 1, 0, 1, 0, 0, 1),
    (1, 1, 0, 1, 0, 1, 1, 0),
)


def q6() -> Clutter:
    return Clutter.from_sets(Q6_SETS, labels=list(range(1, 7)))


def q() -> Clutter:
    return Clutter.from_matrix(Q_MATRIX)


def pg_cuboid(k: int) -> Clutter:
    return cuboid(cocycle_space(pg(k)))


SQUARE = PointSet(2, [(0, 0), (1, 0), (0, 1), (1, 1)])


def gen(family: str, *args: str) -> Clutter:
    """Build a family member from a name and string parameters (as on the command line)."""
    family = family.lower()
    if family == "q6" and not args:
        return q6()
    if family == "q" and not args:
        return q()
    if family == "l7" and not args:
        return l7()
    if family == "square" and not args:
        return cuboid(SQUARE)
    if family in ("delta", "eoh", "pg-cuboid") and len(args) == 1:
        n = int(args[0])
        if family == "delta":
            return delta(n)
        if family == "eoh":
            return odd_hole(n)
        if n < 1:
            raise ValueError("k must be at least 1")
        if (1 << n) - 1 > 31:
            raise GuardError("pg-cuboid k > 5 exceeds the size guard")
        return pg_cuboid(n)
    if family == "cuboid" and len(args) == 1:
        return cuboid(loads_points(Path(args[0]).read_text()))
    raise ValueError(f"unknown family or wrong parameters: {family} {' '.join(args)}".strip())


# name -> (family, params); the order here fixes report order
CORPUS: dict[str, tuple[str, tuple[str, ...]]] = {
    "q6": ("q6", ()),
    "q": ("q", ()),
    "l7": ("l7", ()),
    "delta-3": ("delta", ("3",)),
    "delta-4": ("delta", ("4",)),
    "eoh-5": ("eoh", ("5",)),
    "eoh-7": ("eoh", ("7",)),
    "pg-cuboid-1": ("pg-cuboid", ("1",)),
    "pg-cuboid-2": ("pg-cuboid", ("2",)),
    "pg-cuboid-3": ("pg-cuboid", ("3",)),
    "square": ("square", ()),
}


def named(name: str) -> Clutter:
    family, params = CORPUS[name]
    return gen(family, *params)


def resolve(token: str) -> tuple[str, Clutter]:
    """A corpus name, ``family:param`` or a clutter file path."""
    if token in CORPUS:
        return token, named(token)
    if ":" in token and not Path(token).exists():
        family, _, param = token.partition(":")
        return token, gen(family, *param.split(","))
    path = Path(token)
    if not path.exists():
        raise FileNotFoundError(f"no corpus instance or file named {token!r}")
    return path.name, loads(path.read_text())


def instance_hash(c: Clutter) -> str:
    return hashlib.sha256(dumps(c).encode()).hexdigest()


# point sets used by the point-set verifiers
def pointset_corpus() -> dict[str, PointSet]:
    return {
        "pg-1": cocycle_space(pg(1)),
        "pg-2": cocycle_space(pg(2)),
        "pg-3": cocycle_space(pg(3)),
        "square": SQUARE,
        "odd-triangle": PointSet.from_strings(["100", "010", "001", "111"]),
        "tri-plus": PointSet.from_strings(["110", "101", "011", "111"]),
        "staircase": PointSet.from_strings(["000", "100", "110", "111"]),
    }


# enumeration of small clutters ---------------------------------------------------------------


def _antichains(n: int) -> Iterator[tuple[int, ...]]:
    """All antichains of subsets of [n] (including the empty family and {{}})."""
    subsets = list(range(1 << n))

    def grow(start: int, chosen: list[int]):
        yield tuple(chosen)
        for t in range(start, len(subsets)):
            s = subsets[t]
            if any(s & x == x or s & x == s for x in chosen):
                continue
            chosen.append(s)
            yield from grow(t + 1, chosen)
            chosen.pop()

    yield from grow(0, [])


def _canonical(members: tuple[int, ...], tables: list[list[int]]) -> tuple[int, ...]:
    return min(tuple(sorted(t[m] for m in members)) for t in tables)


def clutters_up_to_isomorphism(n: int) -> list[Clutter]:
    """One representative per isomorphism class of clutters on ground set {1..n}."""
    if n < 1 or n > 5:
        raise GuardError("enumeration is limited to 1 <= n <= 5")
    # tables[p][mask] = image of mask under the p-th permutation of [n]
    tables = [
        [sum(1 << p[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
        for p in permutations(range(n))
    ]
    reps = {_canonical(members, tables) for members in _antichains(n)}
    labels = list(range(1, n + 1))
    return [Clutter(labels, members) for members in sorted(reps, key=lambda m: (len(m), m))]
