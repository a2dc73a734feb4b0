"""Exact rational linear programming.

Two-phase primal simplex on a dense ``Fraction`` tableau with Bland's rule.
Every optimum carries a dual certificate, and ``solve`` re-checks primal
feasibility, dual feasibility and equality of the two objectives before
returning.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import LpStatusError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_RELATIONS = ("<=", "=", ">=")


def _frac_vector(xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class LinearProgram:
    """``sense`` c.x subject to ``rows[i] . x  relations[i]  rhs[i]``.

    Variables are nonnegative except those listed in ``free``.
    """

    objective: Sequence[Fraction]
    rows: Sequence[Sequence[Fraction]] = ()
    relations: Sequence[str] = ()
    rhs: Sequence[Fraction] = ()
    sense: str = "max"
    free: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "objective", _frac_vector(self.objective))
        object.__setattr__(self, "rows", tuple(_frac_vector(r) for r in self.rows))
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "rhs", _frac_vector(self.rhs))
        object.__setattr__(self, "free", frozenset(self.free))
        n = len(self.objective)
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        if not len(self.rows) == len(self.relations) == len(self.rhs):
            raise ValueError("rows, relations and rhs must have equal length")
        for r in self.rows:
            if len(r) != n:
                raise ValueError("constraint row length differs from objective length")
        for rel in self.relations:
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
        if any(j < 0 or j >= n for j in self.free):
            raise ValueError("free variable index out of range")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add_rows(self, rows, relations, rhs) -> LinearProgram:
        return LinearProgram(
            self.objective,
            list(self.rows) + list(rows),
            list(self.relations) + list(relations),
            list(self.rhs) + list(rhs),
            self.sense,
            self.free,
        )

    def with_objective(self, objective, sense: str) -> LinearProgram:
        return LinearProgram(objective, self.rows, self.relations, self.rhs, sense, self.free)


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None
    dual: tuple[Fraction, ...] | None = None
    pivots: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


class _Tableau:
    """Dense tableau ``T x = b`` with an explicit basis."""

    def __init__(self, rows: list[list[Fraction]], b: list[Fraction], basis: list[int]):
        self.T = rows
        self.b = b
        self.basis = basis
        self.pivots: list[tuple[int, int]] = []

    def pivot(self, r: int, j: int) -> None:
        T, b = self.T, self.b
        piv = T[r][j]
        row = [v / piv for v in T[r]]
        T[r] = row
        b[r] = b[r] / piv
        for i in range(len(T)):
            if i != r:
                f = T[i][j]
                if f:
                    Ti = T[i]
                    for k, v in enumerate(row):
                        if v:
                            Ti[k] -= f * v
                    b[i] -= f * b[r]
        self.basis[r] = j
        self.pivots.append((r, j))

    def reduced_costs(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> list[Fraction | None]:
        cb = [cost[j] for j in self.basis]
        out = []
        for j in range(len(cost)):
            if not allowed[j]:
                out.append(None)
                continue
            out.append(cost[j] - sum((cb[i] * self.T[i][j] for i in range(len(self.T)) if cb[i]), Fraction(0)))
        return out

    def optimize(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> str:
        """Maximise ``cost . x`` with Bland's rule; returns OPTIMAL or UNBOUNDED."""
        while True:
            d = self.reduced_costs(cost, allowed)
            entering = next((j for j, dj in enumerate(d) if dj is not None and dj > 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.T):
                a = row[entering]
                if a > 0:
                    ratio = self.b[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)


def _standard_form(lp: LinearProgram):
    """Split free variables, add slacks and flip rows to nonnegative rhs."""
    n = lp.num_vars
    free = sorted(lp.free)
    cols = n + len(free)
    slack_of = {}
    for i, rel in enumerate(lp.relations):
        if rel != "=":
            slack_of[i] = cols
            cols += 1
    rows, b, signs = [], [], []
    for i, (row, rel, rhs) in enumerate(zip(lp.rows, lp.relations, lp.rhs)):
        full = list(row) + [-row[j] for j in free] + [Fraction(0)] * len(slack_of)
        if rel == "<=":
            full[slack_of[i]] = Fraction(1)
        elif rel == ">=":
            full[slack_of[i]] = Fraction(-1)
        s = -1 if rhs < 0 else 1
        rows.append([s * v for v in full])
        b.append(s * rhs)
        signs.append(s)
    sign_obj = 1 if lp.sense == "max" else -1
    cost = [sign_obj * c for c in lp.objective] + [-sign_obj * lp.objective[j] for j in free]
    cost += [Fraction(0)] * len(slack_of)
    return rows, b, signs, cost, free


def solve(lp: LinearProgram) -> LpResult:
    """Solve ``lp`` exactly; infeasible and unbounded are reported as statuses."""
    rows, b, signs, cost, free = _standard_form(lp)
    m = len(rows)
    ncols = len(cost)
    # artificial identity block; its final contents is the basis inverse
    tab_rows = [row + [Fraction(int(i == k)) for k in range(m)] for i, row in enumerate(rows)]
    tab = _Tableau(tab_rows, list(b), [ncols + i for i in range(m)])
    total = ncols + m

    phase1 = [Fraction(0)] * ncols + [Fraction(-1)] * m
    tab.optimize(phase1, [True] * total)
    if sum(tab.b[i] for i in range(m) if tab.basis[i] >= ncols) != 0:
        return LpResult(INFEASIBLE, pivots=tuple(tab.pivots))
    for i in range(m):
        if tab.basis[i] >= ncols:
            j = next((j for j in range(ncols) if tab.T[i][j] != 0), None)
            if j is not None:
                tab.pivot(i, j)

    allowed = [True] * ncols + [False] * m
    status = tab.optimize(cost + [Fraction(0)] * m, allowed)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, pivots=tuple(tab.pivots))

    xs = [Fraction(0)] * ncols
    for i, j in enumerate(tab.basis):
        if j < ncols:
            xs[j] = tab.b[i]
    n = lp.num_vars
    x = list(xs[:n])
    for k, j in enumerate(free):
        x[j] -= xs[n + k]

    cb = [cost[j] if j < ncols else Fraction(0) for j in tab.basis]
    w = [sum((cb[k] * tab.T[k][ncols + i] for k in range(m)), Fraction(0)) for i in range(m)]
    sign_obj = 1 if lp.sense == "max" else -1
    dual = tuple(sign_obj * signs[i] * w[i] for i in range(m))
    result = LpResult(OPTIMAL, _dot(lp.objective, x), tuple(x), dual, tuple(tab.pivots))
    problems = certificate_problems(lp, result)
    if problems:
        raise AssertionError("simplex produced an invalid certificate: " + "; ".join(problems))
    return result


def fmt_fraction(x) -> str:
    """Serialize a rational as "p/q" (denominator always written)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def certificate_problems(lp: LinearProgram, result: LpResult) -> list[str]:
    """Exact re-verification of an optimal result; empty list means valid."""
    out = []
    x, y = result.x, result.dual
    for j, v in enumerate(x):
        if j not in lp.free and v < 0:
            out.append(f"x[{j}] = {v} < 0")
    for i, (row, rel, rhs) in enumerate(zip(lp.rows, lp.relations, lp.rhs)):
        lhs = _dot(row, x)
        if (rel == "<=" and lhs > rhs) or (rel == ">=" and lhs < rhs) or (rel == "=" and lhs != rhs):
            out.append(f"row {i} violated: {lhs} {rel} {rhs}")
    maximize = lp.sense == "max"
    for i, rel in enumerate(lp.relations):
        pos_rel = "<=" if maximize else ">="
        if rel == pos_rel and y[i] < 0:
            out.append(f"dual[{i}] has wrong sign")
        if rel != "=" and rel != pos_rel and y[i] > 0:
            out.append(f"dual[{i}] has wrong sign")
    for j in range(lp.num_vars):
        col = _dot((r[j] for r in lp.rows), y)
        c = lp.objective[j]
        if j in lp.free:
            ok = col == c
        else:
            ok = col >= c if maximize else col <= c
        if not ok:
            out.append(f"dual constraint {j} violated")
    if _dot(lp.rhs, y) != result.value:
        out.append("primal and dual objectives differ")
    return out


def maximize_coordinate(
    lp: LinearProgram,
    index: int,
    sense: str = "max",
    value: Fraction | None = None,
    extra: Iterable[tuple[Sequence, str, Fraction]] = (),
) -> Fraction:
    """Optimise coordinate ``index`` over the optimal face of ``lp``.

    ``value`` pins the face level (defaults to the optimum of ``lp``);
    ``extra`` appends further ``(row, relation, rhs)`` constraints.
    Raises ``LpStatusError`` if the face is empty.
    """
    if value is None:
        base = solve(lp)
        if not base.optimal:
            raise LpStatusError(base.status)
        value = base.value
    extra = list(extra)
    face = lp.add_rows(
        [lp.objective] + [e[0] for e in extra],
        ["="] + [e[1] for e in extra],
        [value] + [e[2] for e in extra],
    )
    e = [Fraction(0)] * lp.num_vars
    e[index] = Fraction(1)
    res = solve(face.with_objective(e, sense))
    if not res.optimal:
        raise LpStatusError(res.status)
    return res.value


# geometry helpers ----------------------------------------------------------------


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    M = [[Fraction(v) for v in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points``."""
    if not points:
        raise ValueError("affine rank of an empty point list is undefined")
    p0 = [Fraction(v) for v in points[0]]
    return rank([[Fraction(v) - a for v, a in zip(p, p0)] for p in points[1:]])


def _hull_lp(points, target, step_dir=None) -> LinearProgram:
    dim = len(target)
    k = len(points)
    nvars = k + (step_dir is not None)
    rows, rels, rhs = [], [], []
    for i in range(dim):
        row = [Fraction(p[i]) for p in points]
        if step_dir is not None:
            row.append(-Fraction(step_dir[i]))
        rows.append(row)
        rels.append("=")
        rhs.append(Fraction(target[i]))
    rows.append([Fraction(1)] * k + ([Fraction(0)] if step_dir is not None else []))
    rels.append("=")
    rhs.append(Fraction(1))
    obj = [Fraction(0)] * k + ([Fraction(1)] if step_dir is not None else [])
    return LinearProgram(obj if nvars else [], rows, rels, rhs, "max")


def in_convex_hull(points: Sequence[Sequence], target: Sequence) -> tuple[Fraction, ...] | None:
    """Convex weights expressing ``target`` in terms of ``points``, or None."""
    if not points:
        return None
    res = solve(_hull_lp(points, target))
    return res.x if res.optimal else None


def max_step(points: Sequence[Sequence], target: Sequence, direction: Sequence) -> Fraction | None:
    """Largest t >= 0 with target + t*direction in conv(points); None if target is outside."""
    res = solve(_hull_lp(points, target, direction))
    if res.status == INFEASIBLE:
        return None
    if res.status == UNBOUNDED:
        raise AssertionError("a polytope cannot contain an unbounded ray")
    return res.value


def interior_point_test(points: Sequence[Sequence], target: Sequence) -> bool:
    """True iff ``target`` lies in the interior of conv(points) in full space.

    The hull must be full-dimensional and admit a strictly positive step
    from ``target`` along every signed unit direction; the step lengths are
    LP optima, so no tolerance is involved.
    """
    dim = len(target)
    if not points or affine_rank(points) != dim:
        return False
    for i in range(dim):
        for s in (1, -1):
            e = [0] * dim
            e[i] = s
            t = max_step(points, target, e)
            if t is None or t <= 0:
                return False
    return True
