"""Clutters over a labelled ground set.

Members are stored as integer bitmasks over element positions ``0..n-1``;
labels live in a sidecar tuple.  Public functions take and return labels,
the ``*_mask`` helpers work on positions.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Hashable, Iterable, Sequence
from itertools import combinations

from .errors import DegenerateClutterError

Label = Hashable


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def minimalize(masks: Iterable[int]) -> list[int]:
    """Inclusion-wise minimal sets among ``masks`` (first occurrence order kept)."""
    seen = []
    for m in masks:
        if m not in seen:
            seen.append(m)
    by_size = sorted(seen, key=popcount)
    keep = set()
    kept = []
    for m in by_size:
        if not any(k & m == k for k in kept):
            kept.append(m)
            keep.add(m)
    return [m for m in seen if m in keep]


class Clutter:
    """An antichain of subsets of a labelled ground set.

    Member order is preserved (it fixes the row order of the incidence
    matrix) but equality ignores it.
    """

    __slots__ = ("_index", "labels", "members")

    def __init__(self, labels: Sequence[Label], members: Iterable[int]):
        labels = tuple(labels)
        if not labels:
            raise ValueError("ground set must be nonempty")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        members = tuple(members)
        full = (1 << len(labels)) - 1
        for m in members:
            if m < 0 or m & ~full:
                raise ValueError(f"member {m:b} is not a subset of the ground set")
        if len(set(members)) != len(members):
            raise ValueError("members must be distinct")
        for a in members:
            for b in members:
                if a != b and a & b == a:
                    raise ValueError("members must form an antichain")
        self.labels = labels
        self.members = members
        self._index = {lab: i for i, lab in enumerate(labels)}

    # construction -----------------------------------------------------------

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[Label]], labels: Sequence[Label] | None = None) -> Clutter:
        sets = [list(s) for s in sets]
        if labels is None:
            found = {x for s in sets for x in s}
            labels = sorted(found) if found else [1]
        index = {lab: i for i, lab in enumerate(labels)}
        masks = []
        for s in sets:
            m = 0
            for x in s:
                if x not in index:
                    raise ValueError(f"unknown element {x!r}")
                m |= 1 << index[x]
            masks.append(m)
        return cls(labels, masks)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], labels: Sequence[Label] | None = None) -> Clutter:
        if labels is None:
            width = len(rows[0]) if rows else 1
            labels = list(range(1, width + 1))
        masks = []
        for row in rows:
            if len(row) != len(labels):
                raise ValueError("row length does not match the ground set")
            masks.append(sum(1 << j for j, v in enumerate(row) if v))
        return cls(labels, masks)

    # basic views --------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def is_empty_family(self) -> bool:
        return not self.members

    @property
    def has_empty_member(self) -> bool:
        return self.members == (0,)

    @property
    def is_degenerate(self) -> bool:
        return self.is_empty_family or self.has_empty_member

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[Label]) -> int:
        m = 0
        for x in labels:
            m |= 1 << self.index(x)
        return m

    def to_labels(self, mask: int) -> frozenset:
        return frozenset(self.labels[i] for i in bits(mask))

    def sets(self) -> list[frozenset]:
        return [self.to_labels(m) for m in self.members]

    def sorted_sets(self) -> list[list]:
        """Members as label lists in ground order, rows in input order."""
        return [[self.labels[i] for i in bits(m)] for m in self.members]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.sets())

    def __eq__(self, other):
        if not isinstance(other, Clutter):
            return NotImplemented
        return self.labels == other.labels and set(self.members) == set(other.members)

    def __hash__(self):
        return hash((self.labels, frozenset(self.members)))

    def __repr__(self):
        body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.sorted_sets())
        return f"Clutter(n={self.n}, [{body}])"

    def canonical_members(self) -> tuple[int, ...]:
        """Members sorted by bitmask; order-insensitive fingerprint."""
        return tuple(sorted(self.members))

    def with_members(self, masks: Iterable[int]) -> Clutter:
        return Clutter(self.labels, masks)

    def relabel(self, mapping) -> Clutter:
        return Clutter([mapping[x] for x in self.labels], self.members)

    def degree(self, i: int) -> int:
        return sum(1 for m in self.members if m >> i & 1)


# incidence ---------------------------------------------------------------------


def incidence_matrix(c: Clutter) -> list[list[int]]:
    """Rows follow member order, columns follow label order."""
    return [[m >> j & 1 for j in range(c.n)] for m in c.members]


# covers ------------------------------------------------------------------------


def is_cover_mask(c: Clutter, b: int) -> bool:
    return all(m & b for m in c.members)


def is_transversal(c: Clutter, s: Iterable[Label]) -> bool:
    """True iff ``s`` meets every member exactly once."""
    b = c.mask(s)
    return all(popcount(m & b) == 1 for m in c.members)


def _min_cover_at_most(members: list[int], k: int, chosen: int = 0) -> int | None:
    uncovered = [m for m in members if not m & chosen]
    if not uncovered:
        return chosen
    if k == 0:
        return None
    pivot = min(uncovered, key=popcount)
    for i in bits(pivot):
        found = _min_cover_at_most(uncovered, k - 1, chosen | 1 << i)
        if found is not None:
            return found
    return None


def minimum_cover_mask(c: Clutter) -> int:
    if c.has_empty_member:
        raise DegenerateClutterError("a clutter with the empty member has no cover")
    members = list(c.members)
    for k in range(c.n + 1):
        found = _min_cover_at_most(members, k)
        if found is not None:
            return found
    raise AssertionError("unreachable")


def covering_number(c: Clutter) -> int:
    """Minimum cardinality of a cover.

    The empty family has covering number 0; a clutter containing the empty
    member has no cover and raises ``DegenerateClutterError``.
    """
    return popcount(minimum_cover_mask(c))


def covering_number_at_least(c: Clutter, k: int) -> bool:
    """Cheaper test for ``covering_number(c) >= k`` (no empty member)."""
    if c.has_empty_member:
        return True
    return _min_cover_at_most(list(c.members), k - 1) is None


def minimal_cover_masks(c: Clutter) -> list[int]:
    """All minimal covers, by branching on an uncovered member.

    Each branch fixes the first element of the member that the cover uses,
    forbidding the earlier ones, so every minimal cover is produced once.
    Branches where an already chosen element loses all of its private
    members are cut since they can only lead to non-minimal covers.
    """
    members = list(c.members)
    if not members:
        return [0]
    if 0 in members:
        return []
    out = []

    def private_ok(chosen: int) -> bool:
        for i in bits(chosen):
            rest = chosen & ~(1 << i)
            if all(m & rest for m in members if m >> i & 1):
                return False
        return True

    def grow(chosen: int, forbidden: int):
        uncovered = [m for m in members if not m & chosen]
        if not uncovered:
            out.append(chosen)
            return
        pivot = None
        for m in uncovered:
            free = m & ~forbidden
            if not free:
                return
            if pivot is None or popcount(free) < popcount(pivot & ~forbidden):
                pivot = m
        options = bits(pivot & ~forbidden)
        banned = forbidden
        for i in options:
            nxt = chosen | 1 << i
            if private_ok(nxt):
                grow(nxt, banned)
            banned |= 1 << i

    grow(0, 0)
    out = sorted(set(out), key=lambda m: (popcount(m), bits(m)))
    return out


def blocker(c: Clutter) -> Clutter:
    """Clutter of minimal covers over the same ground set.

    b(empty family) = {empty set} and b({empty set}) = empty family.
    """
    return Clutter(c.labels, minimal_cover_masks(c))


# minors ------------------------------------------------------------------------


def compress(mask: int, keep: int) -> int:
    """Re-index the bits of ``mask`` that lie in ``keep`` consecutively."""
    out = 0
    j = 0
    for i in bits(keep):
        if mask >> i & 1:
            out |= 1 << j
        j += 1
    return out


def minor_masks(members: Sequence[int], delete: int, contract: int) -> list[int]:
    """Members of the minor, still indexed on the original ground positions."""
    return minimalize([m & ~contract for m in members if not m & delete])


def minor_mask(c: Clutter, delete: int, contract: int) -> Clutter:
    if delete & contract:
        raise ValueError("deleted and contracted sets must be disjoint")
    keep = c.full & ~(delete | contract)
    if not keep:
        raise ValueError("a minor must keep at least one element")
    labels = [c.labels[i] for i in bits(keep)]
    return Clutter(labels, [compress(m, keep) for m in minor_masks(c.members, delete, contract)])


def minor(c: Clutter, delete: Iterable[Label] = (), contract: Iterable[Label] = ()) -> Clutter:
    """The minor obtained by deleting ``delete`` and contracting ``contract``."""
    return minor_mask(c, c.mask(delete), c.mask(contract))


# duplication -------------------------------------------------------------------


def duplicate_element(c: Clutter, w: Label, new_label: Label | None = None) -> Clutter:
    i = c.index(w)
    if new_label is None:
        new_label = f"{w}'"
        while new_label in c._index:
            new_label += "'"
    if new_label in c._index:
        raise ValueError(f"label {new_label!r} already in use")
    bit = 1 << c.n
    members = [m | bit if m >> i & 1 else m for m in c.members]
    return Clutter(c.labels + (new_label,), members)


def column_mask(c: Clutter, i: int) -> int:
    """Column ``i`` of the incidence matrix, as a bitmask over member rows."""
    return sum(1 << r for r, m in enumerate(c.members) if m >> i & 1)


def deduplicate(c: Clutter) -> tuple[Clutter, list[list[Label]]]:
    """Keep one representative per class of identical columns.

    The representative is the first element of its class in ground order.
    Returns the reduced clutter and the classes (as label lists).
    """
    classes: dict[int, list[int]] = {}
    for i in range(c.n):
        classes.setdefault(column_mask(c, i), []).append(i)
    groups = sorted(classes.values())
    keep = sum(1 << g[0] for g in groups)
    dropped = c.full & ~keep
    # members restricted to the representatives; no member is lost since
    # duplicates carry identical membership
    reduced = Clutter([c.labels[i] for i in bits(keep)], [compress(m & ~dropped, keep) for m in c.members])
    return reduced, [[c.labels[i] for i in g] for g in groups]


# isomorphism -------------------------------------------------------------------


def _element_profile(c: Clutter, i: int) -> tuple:
    sizes = sorted(popcount(m) for m in c.members if m >> i & 1)
    return (len(sizes), tuple(sizes))


def _joint_refine(a: Clutter, b: Clutter) -> tuple[list[int], list[int]]:
    """Colour refinement run on both clutters with one shared palette."""
    cols = ([_element_profile(a, i) for i in range(a.n)], [_element_profile(b, i) for i in range(b.n)])
    palette: dict = {}
    cols = tuple([palette.setdefault(x, len(palette)) for x in side] for side in cols)
    for _ in range(a.n):
        palette = {}
        new = []
        for c, col in zip((a, b), cols):
            member_col = [tuple(sorted(col[i] for i in bits(m))) for m in c.members]
            sig = [
                (col[i], tuple(sorted(member_col[r] for r, m in enumerate(c.members) if m >> i & 1)))
                for i in range(c.n)
            ]
            new.append(sig)
        keys = sorted(set(new[0]) | set(new[1]))
        palette = {k: t for t, k in enumerate(keys)}
        refined = tuple([palette[x] for x in side] for side in new)
        if len(set(refined[0]) | set(refined[1])) == len(set(cols[0]) | set(cols[1])):
            break
        cols = refined
    return cols[0], cols[1]


def clutter_isomorphic(a: Clutter, b: Clutter) -> dict | None:
    """A label bijection mapping the members of ``a`` onto those of ``b``, or None."""
    if a.n != b.n or len(a.members) != len(b.members):
        return None
    if Counter(map(popcount, a.members)) != Counter(map(popcount, b.members)):
        return None
    ca, cb = _joint_refine(a, b)
    if Counter(ca) != Counter(cb):
        return None
    classes = Counter(ca)
    order = sorted(range(a.n), key=lambda i: (classes[ca[i]], ca[i], i))
    target = Counter(b.members)
    perm = [-1] * a.n
    used = [False] * b.n

    def consistent(assigned_a: int, assigned_b: int) -> bool:
        left = Counter()
        for m in a.members:
            img = 0
            for i in bits(m & assigned_a):
                img |= 1 << perm[i]
            left[img] += 1
        right = Counter(m & assigned_b for m in b.members)
        return left == right

    def search(depth: int, assigned_a: int, assigned_b: int) -> bool:
        if depth == a.n:
            return Counter(
                sum(1 << perm[i] for i in bits(m)) for m in a.members
            ) == target
        i = order[depth]
        for j in range(b.n):
            if used[j] or cb[j] != ca[i]:
                continue
            perm[i] = j
            used[j] = True
            if consistent(assigned_a | 1 << i, assigned_b | 1 << j):
                if search(depth + 1, assigned_a | 1 << i, assigned_b | 1 << j):
                    return True
            used[j] = False
        perm[i] = -1
        return False

    if not search(0, 0, 0):
        return None
    return {a.labels[i]: b.labels[perm[i]] for i in range(a.n)}


# text format -------------------------------------------------------------------


def _parse_label(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def dumps(c: Clutter) -> str:
    """Serialise in the ``n`` / ``labels`` / ``m`` line format (1-based indices)."""
    lines = [f"n {c.n}"]
    if c.labels != tuple(range(1, c.n + 1)):
        lines.append("labels " + " ".join(str(x) for x in c.labels))
    for m in c.members:
        lines.append(("m " + " ".join(str(i + 1) for i in bits(m))).rstrip())
    return "\n".join(lines) + "\n"


def loads(text: str) -> Clutter:
    n = None
    labels = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "n":
            if n is not None or len(rest) != 1:
                raise ValueError(f"line {lineno}: bad 'n' line")
            n = int(rest[0])
            if n < 1:
                raise ValueError(f"line {lineno}: n must be positive")
        elif head == "labels":
            labels = [_parse_label(t) for t in rest]
        elif head == "m":
            if n is None:
                raise ValueError(f"line {lineno}: member before 'n' line")
            idx = [int(t) for t in rest]
            if any(i < 1 or i > n for i in idx):
                raise ValueError(f"line {lineno}: element index out of range")
            rows.append(sum(1 << (i - 1) for i in set(idx)))
        else:
            raise ValueError(f"line {lineno}: unknown directive {head!r}")
    if n is None:
        raise ValueError("missing 'n' line")
    if labels is None:
        labels = list(range(1, n + 1))
    if len(labels) != n:
        raise ValueError("labels line does not list n labels")
    return Clutter(labels, rows)


def all_subsets(n: int, sizes: Iterable[int]) -> Iterable[int]:
    for k in sizes:
        for combo in combinations(range(n), k):
            yield sum(1 << i for i in combo)
