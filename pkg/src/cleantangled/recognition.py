"""Minor-based recognition: deltas, extended odd holes, cleanness, L7, idealness."""

from __future__ import annotations

import hashlib
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .binary import is_pg_cocycle
from .clutter import (
    Clutter,
    bits,
    blocker,
    clutter_isomorphic,
    compress,
    covering_number_at_least,
    dumps,
    minimal_cover_masks,
    minor_mask,
    minor_masks,
    popcount,
)
from .errors import CertificateError, GuardError, NotTangledError
from .lp import _Tableau, fmt_fraction, rank
from .packing import cover_graph, is_tangled, setcore, unique_value_two_packing
from .pointset import PointSet, is_simplex, pointset_isomorphic

L7_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 5, 6), (2, 4, 7), (3, 4, 6), (3, 5, 7))


def l7() -> Clutter:
    return Clutter.from_sets(L7_LINES, labels=list(range(1, 8)))


def delta(n: int) -> Clutter:
    """Delta on {1..n} with apex 1: {2..n} and the pairs {1, i}."""
    if n < 3:
        raise ValueError("a delta needs at least three elements")
    return Clutter.from_sets([list(range(2, n + 1))] + [[1, i] for i in range(2, n + 1)], labels=list(range(1, n + 1)))


def odd_hole(n: int) -> Clutter:
    """The extended odd hole on {1..n} with no members beyond the cycle edges."""
    if n < 5 or n % 2 == 0:
        raise ValueError("an odd hole needs an odd number n >= 5 of elements")
    return Clutter.from_sets([[i, i % n + 1] for i in range(1, n + 1)], labels=list(range(1, n + 1)))


# structural detectors -------------------------------------------------------------------


def delta_apex(c: Clutter) -> int | None:
    """Position of the apex if ``c`` is a delta, else None."""
    n = c.n
    if n < 3 or len(c.members) != n:
        return None
    members = set(c.members)
    for a in range(n):
        rest = c.full & ~(1 << a)
        if rest not in members:
            continue
        if all((1 << a | 1 << i) in members for i in range(n) if i != a):
            return a
    return None


def is_delta(c: Clutter) -> bool:
    return delta_apex(c) is not None


def odd_hole_cycle(c: Clutter) -> list[int] | None:
    """Cyclic order of the elements if ``c`` is an extended odd hole, else None."""
    n = c.n
    if n < 5 or n % 2 == 0 or c.is_degenerate:
        return None
    if min(popcount(m) for m in c.members) != 2:
        return None
    edges = [bits(m) for m in c.members if popcount(m) == 2]
    if len(edges) != n:
        return None
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if any(len(a) != 2 for a in adj):
        return None
    order = [0]
    prev, cur = None, 0
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == 0:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order if len(order) == n else None


def is_extended_odd_hole(c: Clutter) -> bool:
    return odd_hole_cycle(c) is not None


def is_eoh_blocker(c: Clutter) -> bool:
    if c.n < 5 or c.n % 2 == 0 or c.is_degenerate:
        return False
    return is_extended_odd_hole(blocker(c))


# witnesses -------------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    """``c \\ delete / contract`` relabelled by ``mapping`` is the target.

    For ``kind == "eoh-blocker"`` the mapping sends the hole to the cycle
    1-2-...-n and the target is any clutter whose blocker is an extended
    odd hole on that cycle.
    """

    delete: tuple
    contract: tuple
    kind: str
    mapping: dict = field(hash=False)

    def minor_of(self, c: Clutter) -> Clutter:
        m = minor_mask(c, c.mask(self.delete), c.mask(self.contract))
        return m.relabel(self.mapping)

    def replay(self, c: Clutter, target: Clutter | None = None) -> bool:
        try:
            m = self.minor_of(c)
        except (KeyError, ValueError):
            return False
        m = Clutter.from_sets(m.sets(), labels=sorted(m.labels))
        if self.kind == "delta":
            return m == delta(m.n)
        if self.kind == "eoh-blocker":
            b = blocker(m)
            cyc = odd_hole_cycle(b)
            if cyc is None:
                return False
            hole = {frozenset((i, i % m.n + 1)) for i in range(1, m.n + 1)}
            return {s for s in b.sets() if len(s) == 2} == hole
        if target is None:
            raise ValueError("replaying an L7/custom witness needs the target")
        target = Clutter.from_sets(target.sets(), labels=sorted(target.labels))
        return m == target

    def replay_hash(self, c: Clutter) -> str:
        m = self.minor_of(c)
        m = Clutter.from_sets(m.sets(), labels=sorted(m.labels))
        return hashlib.sha256(dumps(m).encode()).hexdigest()

    def to_dict(self, c: Clutter | None = None) -> dict:
        out = {
            "kind": self.kind,
            "delete": [str(x) for x in self.delete],
            "contract": [str(x) for x in self.contract],
            "map": {str(k): v for k, v in self.mapping.items()},
        }
        if c is not None:
            out["replay_hash"] = self.replay_hash(c)
        return out


def _delta_witness(c: Clutter, delete: int, contract: int, m: Clutter) -> MinorWitness:
    a = delta_apex(m)
    others = [i for i in range(m.n) if i != a]
    mapping = {m.labels[a]: 1}
    mapping.update({m.labels[i]: t + 2 for t, i in enumerate(others)})
    return MinorWitness(
        tuple(c.labels[i] for i in bits(delete)), tuple(c.labels[i] for i in bits(contract)), "delta", mapping
    )


def _eoh_witness(c: Clutter, delete: int, contract: int, m: Clutter) -> MinorWitness:
    cyc = odd_hole_cycle(blocker(m))
    mapping = {m.labels[i]: t + 1 for t, i in enumerate(cyc)}
    return MinorWitness(
        tuple(c.labels[i] for i in bits(delete)), tuple(c.labels[i] for i in bits(contract)), "eoh-blocker", mapping
    )


# cleanness -------------------------------------------------------------------------------


@dataclass
class CleanVerdict:
    status: str  # "clean", "not-clean" or "inconclusive"
    witness: MinorWitness | None
    nodes: int

    @property
    def clean(self) -> bool | None:
        return {"clean": True, "not-clean": False}.get(self.status)


def _subsets_by_size(universe: int) -> Iterator[int]:
    idx = bits(universe)
    for k in range(len(idx) + 1):
        for combo in combinations(idx, k):
            yield sum(1 << i for i in combo)


def is_clean(c: Clutter, budget: int | None = 200_000) -> CleanVerdict:
    """Search every minor for a delta or the blocker of an extended odd hole.

    Outer loop over contraction sets J (by size, then lexicographically);
    inner depth-first search over deletion sets.  Both targets have covering
    number exactly two and deletion never raises the covering number, so a
    deletion branch is cut as soon as it drops below two.
    """
    if c.is_degenerate:
        return CleanVerdict("clean", None, 0)
    nodes = 0
    members = c.members
    for contract in _subsets_by_size(c.full):
        if c.full & ~contract == 0:
            continue
        after = minor_masks(members, 0, contract)
        if 0 in after:
            continue
        # DFS over deletions in increasing element order
        stack = [(0, 0)]  # (deleted mask, next element)
        free = bits(c.full & ~contract)
        while stack:
            delete, start = stack.pop()
            nodes += 1
            if budget is not None and nodes > budget:
                return CleanVerdict("inconclusive", None, nodes)
            keep = c.full & ~(delete | contract)
            size = popcount(keep)
            mm = minor_masks(members, delete, contract)
            if not mm or 0 in mm:
                continue
            m = Clutter([c.labels[i] for i in bits(keep)], [compress(x, keep) for x in mm])
            if not covering_number_at_least(m, 2):
                continue
            if size >= 3 and covering_number_at_least(m, 3) is False:
                if is_delta(m):
                    return CleanVerdict("not-clean", _delta_witness(c, delete, contract, m), nodes)
                if size >= 5 and size % 2 == 1 and is_eoh_blocker(m):
                    return CleanVerdict("not-clean", _eoh_witness(c, delete, contract, m), nodes)
            if size <= 3:
                continue
            for k in reversed([i for i in free if i >= start]):
                if not delete >> k & 1:
                    stack.append((delete | 1 << k, k + 1))
    return CleanVerdict("clean", None, nodes)


# generic minor search ---------------------------------------------------------------------


@dataclass
class MinorSearch:
    witness: MinorWitness | None
    status: str  # "found", "absent" or "inconclusive"
    nodes: int


def find_minor_isomorphic(c: Clutter, target: Clutter, budget: int | None = 2_000_000, kind: str = "custom") -> MinorSearch:
    """First (I, J) in (|I|, I, J) order whose minor is isomorphic to ``target``."""
    t = target.n
    d = c.n - t
    if d < 0:
        return MinorSearch(None, "absent", 0)
    sizes = sorted(popcount(m) for m in target.members)
    nodes = 0
    for k in range(d + 1):
        for I in combinations(range(c.n), k):
            delete = sum(1 << i for i in I)
            rest = [i for i in range(c.n) if i not in I]
            survivors = [m for m in c.members if not m & delete]
            if len(survivors) < len(target.members):
                continue
            for J in combinations(rest, d - k):
                nodes += 1
                if budget is not None and nodes > budget:
                    return MinorSearch(None, "inconclusive", nodes)
                contract = sum(1 << j for j in J)
                mm = minor_masks(survivors, 0, contract)
                if len(mm) != len(target.members) or sorted(popcount(x) for x in mm) != sizes:
                    continue
                keep = c.full & ~(delete | contract)
                m = Clutter([c.labels[i] for i in bits(keep)], [compress(x, keep) for x in mm])
                iso = clutter_isomorphic(m, target)
                if iso is not None:
                    w = MinorWitness(tuple(c.labels[i] for i in I), tuple(c.labels[j] for j in J), kind, iso)
                    return MinorSearch(w, "found", nodes)
    return MinorSearch(None, "absent", nodes)


def find_l7_minor(c: Clutter, budget: int | None = 2_000_000) -> MinorSearch:
    return find_minor_isomorphic(c, l7(), budget, kind="L7")


# idealness ---------------------------------------------------------------------------------


@dataclass
class IdealVerdict:
    ideal: bool | None
    fractional_vertex: tuple[Fraction, ...] | None
    vertices: int
    bases: int


def _initial_basis(M: list[list[int]]) -> _Tableau:
    m, n = len(M), len(M[0])
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in M[i]] + [Fraction(-1 if k == i else 0) for k in range(m)]
        row += [Fraction(1 if k == i else 0) for k in range(m)]
        rows.append(row)
    tab = _Tableau(rows, [Fraction(1)] * m, [n + m + i for i in range(m)])
    ncols = n + m
    tab.optimize([Fraction(0)] * ncols + [Fraction(-1)] * m, [True] * (ncols + m))
    for i in range(m):
        if tab.basis[i] >= ncols:
            j = next(j for j in range(ncols) if tab.T[i][j] != 0)
            tab.pivot(i, j)
    # drop the artificial block
    tab.T = [row[:ncols] for row in tab.T]
    return tab


def is_vertex(M: list[list[int]], x) -> bool:
    """x satisfies Mx >= 1, x >= 0 and the tight constraints have rank n."""
    n = len(x)
    if any(v < 0 for v in x):
        return False
    tight = []
    for row in M:
        lhs = sum(a * v for a, v in zip(row, x))
        if lhs < 1:
            return False
        if lhs == 1:
            tight.append(list(row))
    tight += [[1 if k == j else 0 for k in range(n)] for j in range(n) if x[j] == 0]
    return bool(tight) and rank(tight) == n


def _det(rows: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _integer_tableau(M: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """A feasible basis of [M | -I] (x, s) = 1 as an integer tableau scaled by |det B|."""
    start = _initial_basis(M)
    m = len(M)
    A = [[Fraction(v) for v in M[i]] + [Fraction(-1 if k == i else 0) for k in range(m)] for i in range(m)]
    B = [[A[i][j] for j in start.basis] for i in range(m)]
    d = abs(_det(B))
    T = [[int(v * d) for v in row] + [int(bv * d)] for row, bv in zip(start.T, start.b)]
    return T, list(start.basis), int(d)


def _bareiss_pivot(T: list[list[int]], d: int, r: int, j: int) -> list[list[int]]:
    p = T[r][j]
    pr = T[r]
    out = []
    for i, row in enumerate(T):
        if i == r:
            out.append(list(pr))
            continue
        f = row[j]
        if f:
            out.append([(p * a - f * b) // d for a, b in zip(row, pr)])
        else:
            out.append([(p * a) // d for a in row])
    return out


def is_ideal(c: Clutter, max_n: int = 14, max_bases: int | None = 200_000) -> IdealVerdict:
    """Enumerate the vertices of {x >= 0 : Mx >= 1} through its feasible bases.

    Starting from one feasible basis of ``Mx - s = 1``, every pivot allowed
    by the ratio test (all tied leaving rows included) is followed; the
    feasible-basis graph is connected, so this reaches every vertex.
    Tableaux are kept fraction-free (entries times the basis determinant,
    updated by Bareiss steps).  Returns the first fractional vertex found
    as a certificate.
    """
    if c.n > max_n:
        raise GuardError(f"n = {c.n} exceeds the idealness guard {max_n}")
    if c.has_empty_member:
        raise ValueError("the set covering polyhedron of {{}} is empty")
    if c.is_empty_family:
        return IdealVerdict(True, None, 1, 0)
    M = [[mem >> j & 1 for j in range(c.n)] for mem in c.members]
    n = c.n
    T0, basis0, d0 = _integer_tableau(M)
    ncols = len(T0[0]) - 1
    seen = {tuple(sorted(basis0))}
    queue = [(T0, basis0, d0)]
    vertices = set()
    while queue:
        T, basis, d = queue.pop()
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = Fraction(T[i][-1], d)
        x = tuple(x)
        if x not in vertices:
            vertices.add(x)
            if any(v.denominator != 1 for v in x):
                if not is_vertex(M, x):
                    raise CertificateError("basis enumeration produced a non-vertex", {"x": [fmt_fraction(v) for v in x]})
                return IdealVerdict(False, x, len(vertices), len(seen))
        in_basis = set(basis)
        for j in range(ncols):
            if j in in_basis:
                continue
            ratios = [(Fraction(T[i][-1], T[i][j]), i) for i in range(len(T)) if T[i][j] > 0]
            if not ratios:
                continue
            best = min(r for r, _ in ratios)
            for r, i in ratios:
                if r != best:
                    continue
                nb = list(basis)
                nb[i] = j
                key = tuple(sorted(nb))
                if key in seen:
                    continue
                seen.add(key)
                if max_bases is not None and len(seen) > max_bases:
                    return IdealVerdict(None, None, len(vertices), len(seen))
                queue.append((_bareiss_pivot(T, d, i, j), nb, T[i][j]))
    return IdealVerdict(True, None, len(vertices), len(seen))


# trichotomy and the simplex / projective geometry equivalence -----------------------------------


Q6_SETCORE = PointSet(3, [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)])


@dataclass
class TrichotomyReport:
    rank: int
    setcore: PointSet
    cases: list[str]
    witness: dict | None


def geometric_trichotomy(
    c: Clutter,
    budget: int | None = 2_000_000,
    ideal_max_n: int = 10,
    known_non_ideal: tuple[bool, dict | None] | None = None,
) -> TrichotomyReport:
    """Which of: setcore {0,1}; setcore ~ Q6's; non-ideal.  At least one must hold.

    ``known_non_ideal`` is a precomputed (non-ideal?, witness) pair that
    skips the minor search and vertex enumeration.
    """
    if not is_tangled(c):
        raise NotTangledError("the trichotomy needs a tangled clutter")
    g = cover_graph(c)
    s = setcore(c, g)
    if not is_simplex(s):
        raise ValueError("the setcore hull is not a simplex")
    cases = []
    witness = None
    if s == PointSet(1, [(0,), (1,)]):
        cases.append("i")
    if pointset_isomorphic(s, Q6_SETCORE) is not None:
        cases.append("ii")
    non_ideal = False
    if known_non_ideal is not None:
        non_ideal, witness = known_non_ideal
    elif c.n >= 7:
        found = find_l7_minor(c, budget)
        if found.witness is not None:
            non_ideal = True
            witness = found.witness.to_dict(c)
    if known_non_ideal is None and not non_ideal and c.n <= ideal_max_n:
        v = is_ideal(c)
        if v.ideal is False:
            non_ideal = True
            witness = {"kind": "fractional-vertex", "x": [fmt_fraction(t) for t in v.fractional_vertex]}
    if non_ideal:
        cases.append("iii")
    if not cases:
        raise CertificateError("no case of the trichotomy holds", {"setcore": s.strings(), "rank": g.rank})
    return TrichotomyReport(g.rank, s, cases, witness)


@dataclass
class EquivalenceReport:
    rank: int
    setcore: PointSet
    simplex: bool
    pg_k: int | None
    packing: tuple[Fraction, ...] | None
    ok: bool


def simplex_pg_equivalence(c: Clutter) -> EquivalenceReport:
    """Compute simplicity of the setcore hull and PG identification; they must agree."""
    g = cover_graph(c)
    s = setcore(c, g)
    simplex = is_simplex(s)
    k = is_pg_cocycle(s)
    if simplex != (k is not None):
        raise CertificateError(
            "simplex and projective-geometry sides disagree",
            {"simplex": simplex, "pg_k": k, "setcore": s.strings()},
        )
    packing = None
    if simplex:
        y = unique_value_two_packing(c, check=False)
        if y is None or g.rank != (1 << k) - 1:
            raise CertificateError("simplex setcore without the predicted unique packing / rank", {"rank": g.rank})
        scale = 1 << (k - 1)
        if any((w * scale).denominator != 1 for w in y.weights):
            raise CertificateError("unique packing is not 1/2^(k-1)-integral", {"weights": [fmt_fraction(w) for w in y.weights]})
        packing = y.weights
    return EquivalenceReport(g.rank, s, simplex, k, packing, True)


def minimal_covers(c: Clutter) -> list[frozenset]:
    return [c.to_labels(m) for m in minimal_cover_masks(c)]
