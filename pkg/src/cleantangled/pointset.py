"""Sets of 0-1 points, cuboids, twisting and isomorphism up to twisting."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from fractions import Fraction

from .clutter import Clutter
from .lp import affine_rank, in_convex_hull, interior_point_test

Point = tuple[int, ...]


class PointSet:
    """A set of distinct points of {0,1}^dim.

    Points keep their insertion order, which fixes the member order of the
    cuboid; equality ignores it.
    """

    __slots__ = ("dim", "points")

    def __init__(self, dim: int, points: Iterable[Sequence[int]]):
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        pts = []
        seen = set()
        for p in points:
            p = tuple(int(v) for v in p)
            if len(p) != dim or any(v not in (0, 1) for v in p):
                raise ValueError(f"{p} is not a 0-1 point of dimension {dim}")
            if p in seen:
                raise ValueError(f"duplicate point {p}")
            seen.add(p)
            pts.append(p)
        self.dim = dim
        self.points = tuple(pts)

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> PointSet:
        strings = list(strings)
        if not strings:
            raise ValueError("cannot infer the dimension of an empty point list")
        return cls(len(strings[0]), [[int(ch) for ch in s] for s in strings])

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in set(self.points)

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and set(self.points) == set(other.points)

    def __hash__(self):
        return hash((self.dim, frozenset(self.points)))

    def __repr__(self):
        return f"PointSet({self.strings()})"

    def strings(self) -> list[str]:
        return ["".join(map(str, p)) for p in self.points]

    def sorted(self) -> PointSet:
        return PointSet(self.dim, sorted(self.points))

    def masks(self) -> list[int]:
        return [to_mask(p) for p in self.points]


def to_mask(p: Sequence[int]) -> int:
    return sum(1 << i for i, v in enumerate(p) if v)


def from_mask(m: int, dim: int) -> Point:
    return tuple(m >> i & 1 for i in range(dim))


def dumps(s: PointSet) -> str:
    return "\n".join([f"dim {s.dim}"] + s.strings()) + "\n"


def loads(text: str) -> PointSet:
    dim = None
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim"):
            dim = int(line.split()[1])
            continue
        if dim is None:
            raise ValueError(f"line {lineno}: point before 'dim' line")
        if len(line) != dim or set(line) - {"0", "1"}:
            raise ValueError(f"line {lineno}: expected a {dim}-character 0/1 string")
        pts.append([int(ch) for ch in line])
    if dim is None:
        raise ValueError("missing 'dim' line")
    return PointSet(dim, pts)


# cuboids ---------------------------------------------------------------------------


def cuboid(s: PointSet) -> Clutter:
    """Clutter on [2n]: coordinate i (1-based) becomes elements 2i-1 (value 1) and 2i (value 0)."""
    labels = list(range(1, 2 * s.dim + 1))
    members = []
    for p in s.points:
        m = 0
        for i, v in enumerate(p):
            m |= 1 << (2 * i if v else 2 * i + 1)
        members.append(m)
    return Clutter(labels, members)


def cuboid_points(c: Clutter) -> PointSet | None:
    """Inverse of ``cuboid`` for clutters on [2n] with the pairs {2i-1, 2i} as transversals."""
    if c.n % 2:
        return None
    pts = []
    for m in c.members:
        p = []
        for i in range(c.n // 2):
            a, b = m >> (2 * i) & 1, m >> (2 * i + 1) & 1
            if a + b != 1:
                return None
            p.append(a)
        pts.append(p)
    return PointSet(c.n // 2, pts)


# twisting and relabelling -------------------------------------------------------------


def twist(s: PointSet, q: Sequence[int]) -> PointSet:
    if len(q) != s.dim:
        raise ValueError("twist vector has the wrong dimension")
    return PointSet(s.dim, [tuple(a ^ b for a, b in zip(p, q)) for p in s.points])


def twist_coordinate(s: PointSet, i: int) -> PointSet:
    q = [0] * s.dim
    q[i] = 1
    return twist(s, q)


def permute(s: PointSet, perm: Sequence[int]) -> PointSet:
    """Move coordinate i to position ``perm[i]``."""
    out = []
    for p in s.points:
        r = [0] * s.dim
        for i, v in enumerate(p):
            r[perm[i]] = v
        out.append(r)
    return PointSet(s.dim, out)


def _column(masks: list[int], i: int) -> int:
    return sum(1 << r for r, m in enumerate(masks) if m >> i & 1)


def permutation_isomorphism(a: PointSet, b: PointSet) -> list[int] | None:
    """A coordinate permutation mapping ``a`` onto ``b`` exactly (no twisting)."""
    if a.dim != b.dim or len(a) != len(b):
        return None
    am, bm = a.masks(), b.masks()
    aw = [sum(m >> i & 1 for m in am) for i in range(a.dim)]
    bw = [sum(m >> i & 1 for m in bm) for i in range(b.dim)]
    if sorted(aw) != sorted(bw):
        return None
    order = sorted(range(a.dim), key=lambda i: (aw.count(aw[i]), i))
    perm = [-1] * a.dim
    used = [False] * a.dim
    target = Counter(bm)

    def consistent(dom: int, img: int) -> bool:
        left = Counter()
        for m in am:
            x = 0
            for i in range(a.dim):
                if dom >> i & 1 and m >> i & 1:
                    x |= 1 << perm[i]
            left[x] += 1
        return left == Counter(m & img for m in bm)

    def search(depth: int, dom: int, img: int) -> bool:
        if depth == a.dim:
            return True
        i = order[depth]
        for j in range(a.dim):
            if used[j] or bw[j] != aw[i]:
                continue
            perm[i] = j
            used[j] = True
            if consistent(dom | 1 << i, img | 1 << j) and search(depth + 1, dom | 1 << i, img | 1 << j):
                return True
            used[j] = False
        perm[i] = -1
        return False

    if not search(0, 0, 0):
        return None
    assert Counter(sum(1 << perm[i] for i in range(a.dim) if m >> i & 1) for m in am) == target
    return perm


def pointset_isomorphic(a: PointSet, b: PointSet) -> tuple[list[int], Point] | None:
    """Find (perm, q) with twist(permute(a, perm), q) == b, or None.

    Fixing the image of one point of ``a`` turns the problem into a pure
    permutation search between two sets that both contain the origin.
    """
    if a.dim != b.dim or len(a) != len(b) or not len(a):
        return None
    p0 = a.points[0]
    a0 = twist(a, p0)
    for b0 in b.points:
        perm = permutation_isomorphism(a0, twist(b, b0))
        if perm is not None:
            moved = [0] * a.dim
            for i, v in enumerate(p0):
                moved[perm[i]] = v
            q = tuple(x ^ y for x, y in zip(moved, b0))
            assert twist(permute(a, perm), q) == b
            return perm, q
    return None


def duplicate_coordinates_detect(s: PointSet) -> list[list[int]]:
    """Classes of coordinates whose columns are equal or complementary."""
    masks = s.masks()
    full = (1 << len(masks)) - 1
    classes: dict[int, list[int]] = {}
    for i in range(s.dim):
        col = _column(masks, i)
        key = min(col, full ^ col)
        classes.setdefault(key, []).append(i)
    return sorted(classes.values())


# geometry -----------------------------------------------------------------------------


def center(dim: int) -> tuple[Fraction, ...]:
    return (Fraction(1, 2),) * dim


def is_simplex(s: PointSet) -> bool:
    """True iff the points are affinely independent."""
    if not len(s):
        return False
    return affine_rank(s.points) == len(s) - 1


def is_full_simplex(s: PointSet) -> bool:
    return len(s) == s.dim + 1 and is_simplex(s)


def is_full_dimensional(s: PointSet) -> bool:
    return bool(len(s)) and affine_rank(s.points) == s.dim


def center_in_interior(s: PointSet) -> bool:
    return interior_point_test(s.points, center(s.dim))


def center_weights(s: PointSet):
    """Convex weights expressing the hypercube center, or None."""
    return in_convex_hull(s.points, center(s.dim))


def cube(dim: int) -> PointSet:
    return PointSet(dim, [from_mask(m, dim) for m in range(1 << dim)])
