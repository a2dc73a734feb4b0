"""Fractional packings of value two, the cover graph, core and setcore.

Operations here assume a clean tangled input but do not verify cleanness
up front (that is exponential).  Instead they check the conclusions the
theory guarantees for clean tangled clutters and raise ``CertificateError``
with the offending data when one fails.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .clutter import (
    Clutter,
    bits,
    covering_number,
    covering_number_at_least,
    deduplicate,
    is_cover_mask,
    minor_mask,
    popcount,
)
from .errors import CertificateError, DegenerateClutterError, NotTangledError
from .lp import LinearProgram, fmt_fraction, maximize_coordinate, solve
from .pointset import (
    PointSet,
    center_in_interior,
    cuboid,
    is_full_dimensional,
    is_simplex,
)

TWO = Fraction(2)


@dataclass(frozen=True)
class FractionalPacking:
    clutter: Clutter
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.clutter.members):
            raise ValueError("one weight per member is required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        for i in range(self.clutter.n):
            if self.load(i) > 1:
                raise ValueError(f"element {self.clutter.labels[i]!r} is overloaded")

    @property
    def value(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def load(self, i: int) -> Fraction:
        return sum((w for w, m in zip(self.weights, self.clutter.members) if m >> i & 1), Fraction(0))

    @property
    def support(self) -> tuple[int, ...]:
        """Indices of members with positive weight."""
        return tuple(r for r, w in enumerate(self.weights) if w > 0)

    def support_clutter(self) -> Clutter:
        return self.clutter.with_members(self.clutter.members[r] for r in self.support)

    def report(self) -> list[tuple[int, str]]:
        return [(r + 1, fmt_fraction(w)) for r, w in enumerate(self.weights)]


def packing_lp(c: Clutter) -> LinearProgram:
    """max 1.y  s.t.  sum(y_C : v in C) <= 1 for every element v,  y >= 0."""
    m = len(c.members)
    rows = [[1 if mem >> v & 1 else 0 for mem in c.members] for v in range(c.n)]
    return LinearProgram([1] * m, rows, ["<="] * c.n, [1] * c.n, "max")


def max_fractional_packing(c: Clutter, assume_clean: bool = False) -> FractionalPacking:
    """An optimal fractional packing.

    With ``assume_clean`` a value below two on a clutter with covering
    number at least two raises ``CertificateError`` (it would contradict the
    value-two packing theorem for clean clutters).
    """
    if c.has_empty_member:
        raise DegenerateClutterError("packing LP is unbounded when the empty set is a member")
    if c.is_empty_family:
        return FractionalPacking(c, ())
    res = solve(packing_lp(c))
    y = FractionalPacking(c, res.x)
    if assume_clean and y.value < 2 and covering_number_at_least(c, 2):
        raise CertificateError(
            "clutter with covering number >= 2 has no fractional packing of value two",
            {"value": fmt_fraction(y.value), "dual_cover": [fmt_fraction(v) for v in res.dual]},
        )
    return y


# tangledness and the cover graph ----------------------------------------------------------


def two_covers(c: Clutter) -> list[tuple[int, int]]:
    return [
        (u, v)
        for u in range(c.n)
        for v in range(u + 1, c.n)
        if is_cover_mask(c, 1 << u | 1 << v)
    ]


def is_tangled(c: Clutter) -> bool:
    """Covering number two and every element in a cardinality-two cover."""
    if c.is_degenerate:
        return False
    if covering_number(c) != 2:
        return False
    seen = 0
    for u, v in two_covers(c):
        seen |= 1 << u | 1 << v
    return seen == c.full


@dataclass(frozen=True)
class CoverGraph:
    clutter: Clutter
    edges: tuple[tuple[int, int], ...]
    parts: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def components(self) -> list[tuple[frozenset, frozenset]]:
        c = self.clutter
        return [(c.to_labels(u), c.to_labels(v)) for u, v in self.parts]

    def edge_labels(self) -> list[tuple]:
        lab = self.clutter.labels
        return [(lab[u], lab[v]) for u, v in self.edges]


def cover_graph(c: Clutter) -> CoverGraph:
    """Graph of cardinality-two covers with a 2-colouring per component.

    The side containing the lowest-index vertex of a component is U.
    """
    if not is_tangled(c):
        raise NotTangledError("the cover graph is only defined for tangled clutters")
    edges = two_covers(c)
    adj = [[] for _ in range(c.n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    colour = [-1] * c.n
    parts = []
    for start in range(c.n):
        if colour[start] >= 0:
            continue
        if not adj[start]:
            raise CertificateError("isolated vertex in the cover graph", {"vertex": c.labels[start]})
        colour[start] = 0
        sides = [1 << start, 0]
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    sides[colour[v]] |= 1 << v
                    stack.append(v)
                elif colour[v] == colour[u]:
                    raise CertificateError(
                        "cover graph is not bipartite, so the clutter is not clean",
                        {"edge": [c.labels[u], c.labels[v]], "component_seed": c.labels[start]},
                    )
        parts.append((sides[0], sides[1]))
    return CoverGraph(c, tuple(edges), tuple(parts))


# the core ------------------------------------------------------------------------------


def _value_two_lp(c: Clutter) -> LinearProgram:
    lp = packing_lp(c)
    res = solve(lp)
    if res.value != TWO:
        raise CertificateError(
            "no fractional packing of value two (input is not clean tangled)",
            {"optimum": str(res.value)},
        )
    return lp


def face_range(c: Clutter, r: int, lp: LinearProgram | None = None) -> tuple[Fraction, Fraction]:
    """Min and max of y_C over the value-two packings, for member index ``r``."""
    lp = lp or _value_two_lp(c)
    lo = maximize_coordinate(lp, r, "min", value=TWO)
    hi = maximize_coordinate(lp, r, "max", value=TWO)
    return lo, hi


def core_indices_lp(c: Clutter) -> tuple[int, ...]:
    lp = _value_two_lp(c)
    return tuple(r for r in range(len(c.members)) if maximize_coordinate(lp, r, "max", value=TWO) > 0)


def core_combinatorial_indices(c: Clutter, g: CoverGraph) -> tuple[int, ...]:
    """Members meeting every component in exactly one full side."""
    out = []
    for r, m in enumerate(c.members):
        if all(m & (u | v) in (u, v) for u, v in g.parts):
            out.append(r)
    return tuple(out)


def core_combinatorial(c: Clutter, g: CoverGraph) -> Clutter:
    return c.with_members(c.members[r] for r in core_combinatorial_indices(c, g))


def core_indices(c: Clutter, unsafe: bool = False, graph: CoverGraph | None = None) -> tuple[int, ...]:
    """Indices of members used by some value-two fractional packing.

    Computed by one LP per member; when the cover graph exists the result is
    cross-checked against the combinatorial description.
    """
    if not unsafe and not is_tangled(c):
        raise NotTangledError("core requires a tangled clutter")
    idx = core_indices_lp(c)
    if graph is None and not unsafe:
        graph = cover_graph(c)
    if graph is not None:
        comb = core_combinatorial_indices(c, graph)
        if comb != idx:
            raise CertificateError(
                "LP core and combinatorial core differ",
                {"lp_core": [r + 1 for r in idx], "combinatorial_core": [r + 1 for r in comb]},
            )
    return idx


def core(c: Clutter, unsafe: bool = False) -> Clutter:
    return c.with_members(c.members[r] for r in core_indices(c, unsafe))


# setcore --------------------------------------------------------------------------------


def member_point(m: int, parts) -> tuple[int, ...] | None:
    """Coordinate i is 0 when the member meets component i in U_i, 1 for V_i."""
    p = []
    for u, v in parts:
        hit = m & (u | v)
        if hit == u:
            p.append(0)
        elif hit == v:
            p.append(1)
        else:
            return None
    return tuple(p)


def setcore(c: Clutter, g: CoverGraph | None = None, check: bool = True) -> PointSet:
    """The setcore with respect to the cover-graph bipartitions of ``g``."""
    g = g or cover_graph(c)
    idx = core_indices(c, graph=g)
    pts = []
    for r in idx:
        p = member_point(c.members[r], g.parts)
        if p is None:
            raise CertificateError(
                "core member meets a component in neither side",
                {"member": sorted(c.to_labels(c.members[r]), key=str)},
            )
        pts.append(p)
    s = PointSet(g.rank, pts)
    if check:
        core_cl = c.with_members(c.members[r] for r in idx)
        _check_duplication(core_cl, g, s)
        if not is_full_dimensional(s) or not center_in_interior(s):
            raise CertificateError(
                "setcore hull is not full-dimensional with the center inside",
                {"setcore": s.strings()},
            )
    return s


def _check_duplication(core_cl: Clutter, g: CoverGraph, s: PointSet) -> None:
    """The core is a duplication of cuboid(S) whose duplicate classes are the sides."""
    reduced, classes = deduplicate(core_cl)
    expected = sorted(sorted(bits(side)) for part in g.parts for side in part)
    got = sorted(sorted(core_cl.index(x) for x in cls) for cls in classes)
    if got != expected:
        raise CertificateError(
            "duplicate classes of the core are not the cover-graph sides",
            {"classes": [[str(x) for x in cls] for cls in classes]},
        )
    # map each side representative to its cuboid element and compare
    relabel = {}
    for i, (u, v) in enumerate(g.parts):
        relabel[core_cl.labels[bits(u)[0]]] = 2 * i + 2
        relabel[core_cl.labels[bits(v)[0]]] = 2 * i + 1
    mapped = Clutter.from_sets(
        [[relabel[x] for x in mem] for mem in reduced.sets()], labels=list(range(1, 2 * g.rank + 1))
    )
    if mapped != cuboid(s):
        raise CertificateError("core is not a duplication of the cuboid of its setcore", {"setcore": s.strings()})


# uniqueness ------------------------------------------------------------------------------


def unique_value_two_packing(c: Clutter, check: bool = True) -> FractionalPacking | None:
    """The value-two packing if it is unique, else None.

    With ``check`` the answer is compared with simplicity of the setcore
    hull (they must agree for clean tangled clutters).
    """
    if not is_tangled(c):
        raise NotTangledError("uniqueness test requires a tangled clutter")
    lp = _value_two_lp(c)
    weights = []
    unique = True
    for r in range(len(c.members)):
        lo, hi = face_range(c, r, lp)
        if lo != hi:
            unique = False
            break
        weights.append(lo)
    y = FractionalPacking(c, tuple(weights)) if unique else None
    if check:
        simplex = is_simplex(setcore(c))
        if simplex != unique:
            raise CertificateError(
                "packing uniqueness disagrees with simplicity of the setcore hull",
                {"unique": unique, "simplex": simplex},
            )
    return y


def complementary_slackness_check(c: Clutter, y: FractionalPacking, cover) -> tuple[bool, list[str]]:
    """Check |C n B| = 1 on the support and full load on B.

    ``y`` must have value tau(c) and ``cover`` must be a minimum cover.
    """
    b = c.mask(cover)
    tau = covering_number(c)
    if y.value != tau:
        raise ValueError(f"packing value {y.value} differs from the covering number {tau}")
    if not is_cover_mask(c, b) or popcount(b) != tau:
        raise ValueError("the given set is not a minimum cover")
    problems = []
    for r in y.support:
        k = popcount(c.members[r] & b)
        if k != 1:
            problems.append(f"supported member {r + 1} meets the cover {k} times")
    for v in bits(b):
        load = y.load(v)
        if load != 1:
            problems.append(f"element {c.labels[v]!r} has load {load}")
    return not problems, problems


# recursive construction --------------------------------------------------------------------


def component_minors(c: Clutter, g: CoverGraph, i: int) -> tuple[Clutter, Clutter]:
    """(c \\ U_i / V_i, c / U_i \\ V_i)."""
    u, v = g.parts[i]
    return minor_mask(c, u, v), minor_mask(c, v, u)


def _lift(c: Clutter, avoid: int, drop: int, z: FractionalPacking) -> list[Fraction]:
    minor_members = {frozenset(s): w for s, w in zip(z.clutter.sets(), z.weights)}
    y = []
    for m in c.members:
        if m & avoid:
            y.append(Fraction(0))
            continue
        key = c.to_labels(m & ~drop)
        if key not in minor_members:
            raise ValueError(f"member {sorted(c.to_labels(m), key=str)} has no counterpart in the minor")
        y.append(minor_members[key])
    return y


def combine_packings(
    c: Clutter, g: CoverGraph, i: int, z: FractionalPacking, z2: FractionalPacking
) -> FractionalPacking:
    """Average of the lifts of value-two packings of the two component minors.

    ``z`` packs c \\ U_i / V_i and ``z2`` packs c / U_i \\ V_i.
    """
    if z.value != TWO or z2.value != TWO:
        raise ValueError("both minor packings must have value two")
    u, v = g.parts[i]
    y1 = _lift(c, u, v, z)
    y2 = _lift(c, v, u, z2)
    out = FractionalPacking(c, tuple((a + b) / 2 for a, b in zip(y1, y2)))
    if out.value != TWO:
        raise CertificateError("combined packing does not have value two", {"value": str(out.value)})
    return out


# resolution ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class Clause:
    """sum_{i in pos} x_i + sum_{j in neg} (1 - x_j) >= 1 (0-based coordinates)."""

    pos: frozenset
    neg: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pos", frozenset(self.pos))
        object.__setattr__(self, "neg", frozenset(self.neg))
        if self.pos & self.neg:
            raise ValueError("a clause cannot use a coordinate both ways")

    def satisfied_by(self, p: Sequence[int]) -> bool:
        return any(p[i] == 1 for i in self.pos) or any(p[j] == 0 for j in self.neg)


class TautologyError(ValueError):
    """Resolution produced overlapping index sets."""


def resolvent(a: Clause, b: Clause, k: int) -> Clause:
    """Resolve on coordinate ``k``, which must lie in a.pos and b.neg.

    The empty clause (nothing can satisfy it) is returned as Clause((), ()).
    """
    if k not in a.pos or k not in b.neg:
        raise ValueError("pivot must be a positive literal of the first clause and negative in the second")
    pos = (a.pos | b.pos) - {k}
    neg = (a.neg | b.neg) - {k}
    if pos & neg:
        raise TautologyError(f"resolvent is a tautology on coordinates {sorted(pos & neg)}")
    return Clause(pos, neg)


def is_valid_inequality(s: PointSet, clause: Clause) -> bool:
    return all(clause.satisfied_by(p) for p in s.points)


# monochromatic covers -------------------------------------------------------------------------


@dataclass(frozen=True)
class MonoVerdict:
    components: tuple[int, ...]
    sides: tuple[str, ...]
    triple: tuple | None


def _side_mask(g: CoverGraph, i: int, side: str) -> int:
    u, v = g.parts[i]
    if side == "U":
        return u
    if side == "V":
        return v
    raise ValueError("side must be 'U' or 'V'")


def monochromatic_cover_check(c: Clutter, g: CoverGraph, sides: Mapping[int, str]) -> MonoVerdict:
    """Verify that a cover made of whole sides uses at least three components.

    For exactly three components, also exhibit a minimal cover with one
    element from each chosen side.
    """
    comps = tuple(sorted(sides))
    chosen = [_side_mask(g, i, sides[i]) for i in comps]
    union = 0
    for m in chosen:
        union |= m
    if not is_cover_mask(c, union):
        raise ValueError("the chosen sides do not form a cover")
    if len(comps) < 3:
        raise CertificateError(
            "a monochromatic cover uses fewer than three components",
            {"components": list(comps), "sides": [sides[i] for i in comps]},
        )
    triple = None
    if len(comps) == 3:
        for picks in product(*(bits(m) for m in chosen)):
            b = sum(1 << e for e in picks)
            if is_cover_mask(c, b) and all(not is_cover_mask(c, b & ~(1 << e)) for e in picks):
                triple = tuple(c.labels[e] for e in picks)
                break
        if triple is None:
            raise CertificateError(
                "no minimal cover picks one element from each of the three sides",
                {"components": list(comps)},
            )
    return MonoVerdict(comps, tuple(sides[i] for i in comps), triple)


def monochromatic_covers(c: Clutter, g: CoverGraph, max_rank: int = 10) -> list[dict[int, str]]:
    """Every choice of whole sides (at most one per component) that covers c."""
    if g.rank > max_rank:
        raise ValueError(f"rank {g.rank} exceeds the enumeration guard {max_rank}")
    out = []
    for choice in product((None, "U", "V"), repeat=g.rank):
        union = 0
        for i, side in enumerate(choice):
            if side:
                union |= _side_mask(g, i, side)
        if union and is_cover_mask(c, union):
            out.append({i: side for i, side in enumerate(choice) if side})
    return out
