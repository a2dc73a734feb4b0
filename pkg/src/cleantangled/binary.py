"""GF(2) linear algebra, binary matroids and projective geometries PG(k-1, 2)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .clutter import (
    Clutter,
    bits,
    clutter_isomorphic,
    deduplicate,
    is_cover_mask,
    minimal_cover_masks,
    minor_mask,
    popcount,
)
from .errors import GuardError
from .packing import unique_value_two_packing
from .pointset import (
    PointSet,
    center_in_interior,
    cuboid,
    from_mask,
    is_full_simplex,
    permutation_isomorphism,
    pointset_isomorphic,
)

MAX_SPACE_POINTS = 1 << 20


def gf2_rref(A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2) and its pivot columns."""
    A = (np.asarray(A, dtype=np.uint8) & 1).copy()
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.nonzero(A[r:, c])[0]
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        ones = np.nonzero(A[:, c])[0]
        ones = ones[ones != r]
        if ones.size:
            A[ones] ^= A[r]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def gf2_rank(A: np.ndarray) -> int:
    return len(gf2_rref(A)[1])


def gf2_nullspace(A: np.ndarray) -> np.ndarray:
    """Basis of {x : Ax = 0 mod 2}, one vector per row."""
    A = np.asarray(A, dtype=np.uint8)
    n = A.shape[1]
    R, pivots = gf2_rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for r, p in enumerate(pivots):
            basis[t, p] = R[r, f]
    return basis


def span(rows: np.ndarray) -> list[tuple[int, ...]]:
    """All GF(2) combinations of ``rows`` (duplicates removed, sorted)."""
    rows = np.asarray(rows, dtype=np.uint8)
    n = rows.shape[1]
    basis = [sum(int(v) << i for i, v in enumerate(r)) for r in gf2_rref(rows)[0]] if rows.size else []
    if (1 << len(basis)) > MAX_SPACE_POINTS:
        raise GuardError(f"space with {1 << len(basis)} points exceeds the materialisation guard")
    out = {0}
    for b in basis:
        out |= {x ^ b for x in out}
    return sorted(from_mask(x, n) for x in out)


@dataclass(frozen=True)
class BinaryMatroid:
    """Binary matroid on [n] represented by a 0-1 matrix."""

    matrix: np.ndarray = field(compare=False)

    def __post_init__(self):
        A = np.asarray(self.matrix, dtype=np.uint8)
        if A.ndim != 2 or A.shape[1] == 0:
            raise ValueError("representation must be a nonempty 2-d matrix")
        if np.any(A > 1):
            raise ValueError("entries must be 0 or 1")
        object.__setattr__(self, "matrix", A)

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def rank(self) -> int:
        return gf2_rank(self.matrix)

    def column(self, j: int) -> int:
        return sum(int(v) << i for i, v in enumerate(self.matrix[:, j]))


def pg(k: int) -> BinaryMatroid:
    """PG(k-1, 2): all nonzero k-bit columns in ascending binary order.

    Row 0 carries the most significant bit.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    cols = [[(a >> (k - 1 - i)) & 1 for i in range(k)] for a in range(1, 1 << k)]
    return BinaryMatroid(np.array(cols, dtype=np.uint8).T)


def cocycle_space(m: BinaryMatroid) -> PointSet:
    """Row space of the representation, as a point set."""
    return PointSet(m.n, span(m.matrix))


def cycle_space(m: BinaryMatroid) -> PointSet:
    """Null space of the representation, as a point set (size guarded)."""
    basis = gf2_nullspace(m.matrix)
    if basis.shape[0] == 0:
        return PointSet(m.n, [(0,) * m.n])
    return PointSet(m.n, span(basis))


def is_affine_binary_space(s: PointSet) -> bool:
    """Closed under the XOR of any three points."""
    pts = s.masks()
    present = set(pts)
    for i, a in enumerate(pts):
        for j in range(i, len(pts)):
            ab = a ^ pts[j]
            for c in pts[j:]:
                if ab ^ c not in present:
                    return False
    return True


def is_binary_space(s: PointSet) -> bool:
    return (0,) * s.dim in s and is_affine_binary_space(s)


# binary clutters -------------------------------------------------------------------


def _binary_by_symmetric_difference(c: Clutter) -> bool:
    mem = c.members
    for a, b, d in combinations(mem, 3):
        x = a ^ b ^ d
        if not any(m & x == m for m in mem):
            return False
    # repeated members in the triple give a single member, which contains itself
    return True


def _binary_by_parity(c: Clutter) -> bool:
    covers = minimal_cover_masks(c)
    return all(popcount(m & b) % 2 == 1 for m in c.members for b in covers)


def is_binary_clutter(c: Clutter) -> bool:
    """Both the three-member criterion and the odd-intersection criterion, asserted equal."""
    if c.is_degenerate:
        raise ValueError("binarity is not defined for degenerate clutters")
    a = _binary_by_symmetric_difference(c)
    b = _binary_by_parity(c)
    if a != b:
        raise AssertionError("binary clutter criteria disagree")
    return a


# projective geometry checks -------------------------------------------------------------


@dataclass
class PGReport:
    k: int
    cocycle_weights: list[int]
    pair_triangles: dict[tuple[int, int], int]
    decompositions: dict[tuple[int, ...], list[tuple[int, int, int]]]
    cycles_checked: int
    ok: bool


def triangle_decomposition(m: BinaryMatroid, cycle: int) -> list[tuple[int, int, int]]:
    """Write a cycle of PG(k-1,2) as a symmetric difference of triangles.

    Repeatedly take the two smallest elements e, f of the cycle, complete
    them to the triangle {e, f, g} with column_g = column_e + column_f and
    remove it.
    """
    col_index = {m.column(j): j for j in range(m.n)}
    out = []
    while cycle:
        e, f = bits(cycle)[:2]
        g = col_index[m.column(e) ^ m.column(f)]
        tri = tuple(sorted((e, f, g)))
        out.append(tri)
        cycle ^= sum(1 << t for t in tri)
    return out


def pg_properties_check(k: int, sample: int = 4096) -> PGReport:
    """Cocycle weights, triangle through every pair, triangle decomposition of cycles."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > 5:
        raise GuardError("k > 5 exceeds the size guard")
    m = pg(k)
    coc = cocycle_space(m)
    weights = sorted({sum(p) for p in coc.points})
    ok = weights == [0, 1 << (k - 1)]

    col_index = {m.column(j): j for j in range(m.n)}
    pairs = {}
    for e, f in combinations(range(m.n), 2):
        g = col_index.get(m.column(e) ^ m.column(f))
        if g is None or g in (e, f):
            ok = False
        pairs[(e, f)] = g

    basis = gf2_nullspace(m.matrix)
    cyc_basis = [sum(int(v) << i for i, v in enumerate(r)) for r in basis]
    decomps = {}
    count = 0
    limit = min(1 << len(cyc_basis), sample)
    for code in range(limit):
        x = 0
        for t, b in enumerate(cyc_basis):
            if code >> t & 1:
                x ^= b
        tris = triangle_decomposition(m, x)
        acc = 0
        for tri in tris:
            if m.column(tri[0]) ^ m.column(tri[1]) ^ m.column(tri[2]):
                ok = False
            acc ^= sum(1 << t for t in tri)
        if acc != x:
            ok = False
        decomps[tuple(bits(x))] = tris
        count += 1
    return PGReport(k, weights, pairs, decomps, count, ok)


@dataclass
class RecursiveWitness:
    pivot: int
    top_rows: list[tuple[int, ...]]
    bottom_rows: list[tuple[int, ...]]
    v_columns: list[int]
    u_columns: list[int]
    block: PointSet
    ok: bool


def _pivot_decomposition(S: PointSet, j: int, sub: PointSet) -> RecursiveWitness:
    top = [p for p in S.points if p[j] == 1]
    bottom = [p for p in S.points if p[j] == 0]
    others = [i for i in range(S.dim) if i != j]
    # pair v with u where column_u = column_v + column_j
    cols = {i: tuple(p[i] for p in S.points) for i in range(S.dim)}
    by_col = {c: i for i, c in cols.items()}
    anchor = top[0]
    vs, us, done = [], [], set()
    for i in others:
        if i in done:
            continue
        partner = by_col.get(tuple(a ^ b for a, b in zip(cols[i], cols[j])))
        if partner is None or partner in done or partner == j:
            return RecursiveWitness(j, top, bottom, [], [], sub, False)
        v, u = (i, partner) if anchor[i] == 0 else (partner, i)
        vs.append(v)
        us.append(u)
        done |= {i, partner}
    a1 = PointSet(len(vs), [[p[v] for v in vs] for p in top])
    a3 = PointSet(len(vs), [[p[v] for v in vs] for p in bottom])
    ok = (
        a1 == a3
        and all(p[u] == 1 - p[v] for p in top for v, u in zip(vs, us))
        and all(p[u] == p[v] for p in bottom for v, u in zip(vs, us))
        and permutation_isomorphism(a3, sub) is not None
    )
    return RecursiveWitness(j, top, bottom, vs, us, a3, ok)


def pg_recursive_decompose(k: int) -> list[RecursiveWitness]:
    """Block form (1, A', J-A' / 0, A', A') of cocycle(PG(k-1,2)) for every pivot column."""
    if k < 2:
        raise ValueError("k must be at least 2")
    S = cocycle_space(pg(k))
    sub = cocycle_space(pg(k - 1))
    return [_pivot_decomposition(S, j, sub) for j in range(S.dim)]


def pg_minor_check(k: int) -> bool:
    """Every c \\ u / v over a minimum cover {u, v} of cuboid(cocycle(PG(k-1,2)))
    is cuboid(cocycle(PG(k-2,2))) with every element duplicated once."""
    if k < 2:
        raise ValueError("k must be at least 2")
    c = cuboid(cocycle_space(pg(k)))
    smaller = cuboid(cocycle_space(pg(k - 1)))
    for u in range(c.n):
        for v in range(c.n):
            if u == v or not is_cover_mask(c, 1 << u | 1 << v):
                continue
            reduced, classes = deduplicate(minor_mask(c, 1 << u, 1 << v))
            if any(len(cl) != 2 for cl in classes):
                return False
            relabelled = reduced.relabel({x: i + 1 for i, x in enumerate(reduced.labels)})
            if clutter_isomorphic(relabelled, smaller) is None:
                return False
    return True


@dataclass
class PGSimplexReport:
    k: int
    points: int
    dimension: int
    full_simplex: bool
    center_interior: bool
    packing: tuple[Fraction, ...] | None
    expected_weight: Fraction
    ok: bool


def pg_simplex_check(k: int) -> PGSimplexReport:
    """Simplex, interior center and the uniform unique value-two packing of the cuboid."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if (1 << k) - 1 > 15:
        raise GuardError("2^k - 1 > 15 exceeds the size guard")
    S = cocycle_space(pg(k))
    simplex = is_full_simplex(S)
    interior = center_in_interior(S)
    y = unique_value_two_packing(cuboid(S), check=False)
    w = Fraction(1, 1 << (k - 1))
    ok = simplex and interior and y is not None and all(x == w for x in y.weights)
    return PGSimplexReport(k, len(S), S.dim, simplex, interior, y.weights if y else None, w, ok)


def is_pg_cocycle(s: PointSet) -> int | None:
    """k such that ``s`` is isomorphic to cocycle(PG(k-1,2)), else None."""
    n = s.dim
    k = (n + 1).bit_length() - 1
    if (1 << k) - 1 != n or len(s) != n + 1:
        return None
    return k if pointset_isomorphic(s, cocycle_space(pg(k))) is not None else None


# text format ------------------------------------------------------------------------------


def dumps_matrix(A: np.ndarray) -> str:
    A = np.asarray(A, dtype=np.uint8)
    lines = [f"{A.shape[0]} {A.shape[1]}"] + ["".join(str(int(v)) for v in row) for row in A]
    return "\n".join(lines) + "\n"


def loads_matrix(text: str) -> np.ndarray:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    rows, cols = map(int, lines[0].split())
    body = lines[1:]
    if len(body) != rows or any(len(r) != cols or set(r) - {"0", "1"} for r in body):
        raise ValueError("matrix body does not match its header")
    return np.array([[int(ch) for ch in r] for r in body], dtype=np.uint8).reshape(rows, cols)
