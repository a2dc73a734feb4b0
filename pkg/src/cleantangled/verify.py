"""Executable theorem checks with pass / fail / vacuous outcomes and certificates."""

from __future__ import annotations

import random
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .binary import (
    is_affine_binary_space,
    is_binary_clutter,
    pg_properties_check,
    pg_recursive_decompose,
    pg_simplex_check,
)
from .clutter import Clutter, blocker, covering_number, dumps, minor_mask
from .corpus import clutters_up_to_isomorphism
from .errors import CertificateError, GuardError
from .lp import fmt_fraction
from .packing import (
    Clause,
    TautologyError,
    core_combinatorial_indices,
    core_indices_lp,
    cover_graph,
    is_tangled,
    is_valid_inequality,
    max_fractional_packing,
    monochromatic_cover_check,
    monochromatic_covers,
    resolvent,
    setcore,
    unique_value_two_packing,
)
from .pointset import PointSet, cuboid, is_simplex
from .recognition import (
    find_l7_minor,
    geometric_trichotomy,
    is_clean,
    is_ideal,
    simplex_pg_equivalence,
)

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"


@dataclass
class Verdict:
    theorem: str
    instance: str
    outcome: str
    reason: str = ""
    certificate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "outcome": self.outcome,
            "reason": self.reason,
            "certificate": self.certificate,
        }


class Context:
    """Per-instance cache of the expensive hypothesis checks."""

    def __init__(self, c: Clutter, name: str = "", budget: int | None = 200_000):
        self.c = c
        self.name = name
        self.budget = budget
        self._clean = None
        self._tangled = None

    def clean(self) -> tuple[bool | None, str]:
        if self._clean is None:
            if not self.c.is_degenerate and is_binary_clutter(self.c):
                self._clean = (True, "binary")
            else:
                v = is_clean(self.c, self.budget)
                self._clean = (v.clean, v.status)
        return self._clean

    def tangled(self) -> bool:
        if self._tangled is None:
            self._tangled = is_tangled(self.c)
        return self._tangled

    def clean_tangled(self) -> str | None:
        """None when the hypothesis holds, else the reason it does not."""
        if not self.tangled():
            return "not tangled"
        ok, how = self.clean()
        if ok is None:
            return "cleanness inconclusive within budget"
        if not ok:
            return "not clean"
        return None


def _fail_from(theorem: str, ctx: Context, exc: CertificateError) -> Verdict:
    return Verdict(theorem, ctx.name, FAIL, str(exc), dict(exc.certificate))


def verify_dense(ctx: Context) -> Verdict:
    c = ctx.c
    if c.is_degenerate or covering_number(c) < 2:
        return Verdict("dense", ctx.name, VACUOUS, "covering number below two")
    ok, how = ctx.clean()
    if ok is None:
        return Verdict("dense", ctx.name, VACUOUS, "cleanness inconclusive within budget")
    if not ok:
        return Verdict("dense", ctx.name, VACUOUS, "not clean")
    y = max_fractional_packing(c)
    cert = {"value": fmt_fraction(y.value), "packing": [[i, w] for i, w in y.report()]}
    return Verdict("dense", ctx.name, PASS if y.value >= 2 else FAIL, "", cert)


def _clean_tangled_gate(theorem: str, ctx: Context) -> Verdict | None:
    why = ctx.clean_tangled()
    return None if why is None else Verdict(theorem, ctx.name, VACUOUS, why)


def verify_setcore(ctx: Context) -> Verdict:
    gate = _clean_tangled_gate("setcore", ctx)
    if gate:
        return gate
    try:
        s = setcore(ctx.c)
    except CertificateError as exc:
        return _fail_from("setcore", ctx, exc)
    return Verdict("setcore", ctx.name, PASS, "", {"setcore": s.strings()})


def verify_core_converse(ctx: Context) -> Verdict:
    gate = _clean_tangled_gate("core-converse", ctx)
    if gate:
        return gate
    try:
        g = cover_graph(ctx.c)
    except CertificateError as exc:
        return _fail_from("core-converse", ctx, exc)
    lp = core_indices_lp(ctx.c)
    comb = core_combinatorial_indices(ctx.c, g)
    cert = {"lp": [i + 1 for i in lp], "combinatorial": [i + 1 for i in comb]}
    return Verdict("core-converse", ctx.name, PASS if lp == comb else FAIL, "", cert)


PARITY_EVEN = PointSet.from_strings(["000", "110", "101", "011"])
PARITY_ODD = PointSet.from_strings(["100", "010", "001", "111"])


def verify_small_rank(ctx: Context) -> Verdict:
    gate = _clean_tangled_gate("small-rank", ctx)
    if gate:
        return gate
    c = ctx.c
    try:
        g = cover_graph(c)
        s = setcore(c, g)
    except CertificateError as exc:
        return _fail_from("small-rank", ctx, exc)
    cert = {"rank": g.rank, "setcore": s.strings()}
    if g.rank == 1:
        ok = s == PointSet(1, [(0,), (1,)])
    elif g.rank == 2:
        ok = s == PointSet(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    elif g.rank == 3:
        if any(not a & b for a in c.members for b in c.members if a != b):
            return Verdict("small-rank", ctx.name, VACUOUS, "rank 3 with disjoint members", cert)
        ok = s in (PARITY_EVEN, PARITY_ODD)
    else:
        return Verdict("small-rank", ctx.name, VACUOUS, "rank above 3", cert)
    return Verdict("small-rank", ctx.name, PASS if ok else FAIL, "", cert)


def verify_unique_simplex(ctx: Context) -> Verdict:
    gate = _clean_tangled_gate("unique-simplex", ctx)
    if gate:
        return gate
    try:
        y = unique_value_two_packing(ctx.c, check=False)
        simplex = is_simplex(setcore(ctx.c))
    except CertificateError as exc:
        return _fail_from("unique-simplex", ctx, exc)
    cert = {"unique": y is not None, "simplex": simplex}
    if y is not None:
        cert["packing"] = [[i, w] for i, w in y.report()]
    return Verdict("unique-simplex", ctx.name, PASS if simplex == (y is not None) else FAIL, "", cert)


def verify_main_pg(ctx: Context) -> Verdict:
    gate = _clean_tangled_gate("main-pg", ctx)
    if gate:
        return gate
    try:
        r = simplex_pg_equivalence(ctx.c)
    except CertificateError as exc:
        return _fail_from("main-pg", ctx, exc)
    cert = {"rank": r.rank, "simplex": r.simplex, "pg_k": r.pg_k, "setcore": r.setcore.strings()}
    if r.packing is not None:
        cert["packing"] = [fmt_fraction(w) for w in r.packing]
    return Verdict("main-pg", ctx.name, PASS, "", cert)


def verify_main_l7(ctx: Context) -> Verdict:
    gate = _clean_tangled_gate("main-l7", ctx)
    if gate:
        return gate
    try:
        g = cover_graph(ctx.c)
        s = setcore(ctx.c, g)
    except CertificateError as exc:
        return _fail_from("main-l7", ctx, exc)
    if not is_simplex(s):
        return Verdict("main-l7", ctx.name, VACUOUS, "setcore hull is not a simplex")
    if g.rank <= 3:
        return Verdict("main-l7", ctx.name, VACUOUS, "rank at most 3")
    found = find_l7_minor(ctx.c, budget=ctx.budget and ctx.budget * 10)
    if found.status == "inconclusive":
        raise GuardError("L7 minor search exhausted its budget")
    if found.witness is None:
        return Verdict("main-l7", ctx.name, FAIL, "no L7 minor", {"rank": g.rank, "nodes": found.nodes})
    return Verdict("main-l7", ctx.name, PASS, "", found.witness.to_dict(ctx.c))


def verify_mono(ctx: Context) -> Verdict:
    gate = _clean_tangled_gate("mono", ctx)
    if gate:
        return gate
    try:
        g = cover_graph(ctx.c)
    except CertificateError as exc:
        return _fail_from("mono", ctx, exc)
    checked = []
    for sides in monochromatic_covers(ctx.c, g):
        try:
            v = monochromatic_cover_check(ctx.c, g, sides)
        except CertificateError as exc:
            return _fail_from("mono", ctx, exc)
        checked.append(
            {"components": [i + 1 for i in v.components], "sides": list(v.sides), "triple": list(map(str, v.triple or ()))}
        )
    if not checked:
        return Verdict("mono", ctx.name, VACUOUS, "no monochromatic cover")
    return Verdict("mono", ctx.name, PASS, "", {"covers": checked})


def verify_main_geometric(ctx: Context) -> Verdict:
    gate = _clean_tangled_gate("main-geometric", ctx)
    if gate:
        return gate
    try:
        s = setcore(ctx.c)
        if not is_simplex(s):
            return Verdict("main-geometric", ctx.name, VACUOUS, "setcore hull is not a simplex")
        r = geometric_trichotomy(ctx.c)
    except CertificateError as exc:
        return _fail_from("main-geometric", ctx, exc)
    return Verdict("main-geometric", ctx.name, PASS, "", {"cases": r.cases, "witness": r.witness})


def verify_blocker_involution(ctx: Context) -> Verdict:
    b = blocker(ctx.c)
    ok = blocker(b) == ctx.c
    return Verdict("blocker-involution", ctx.name, PASS if ok else FAIL)


# point-set and k-indexed checks ------------------------------------------------------------------


def verify_binary_cuboid(s: PointSet, name: str = "") -> Verdict:
    a = is_affine_binary_space(s)
    b = is_binary_clutter(cuboid(s))
    return Verdict("binary-cuboid", name, PASS if a == b else FAIL, "", {"affine_binary": a, "binary_cuboid": b})


def all_clauses(dim: int):
    for signs in product((None, "+", "-"), repeat=dim):
        pos = [i for i, t in enumerate(signs) if t == "+"]
        neg = [i for i, t in enumerate(signs) if t == "-"]
        if pos or neg:
            yield Clause(pos, neg)


def verify_resolution(s: PointSet, name: str = "", trials: int = 10_000, seed: int = 0) -> Verdict:
    """Resolvents of valid clauses are valid; exhaustive for dim <= 4, sampled above."""
    if s.dim <= 4:
        valid = [cl for cl in all_clauses(s.dim) if is_valid_inequality(s, cl)]
        pairs = [(a, b, k) for a in valid for b in valid for k in a.pos & b.neg]
    else:
        rng = random.Random(seed)
        pairs = []
        while len(pairs) < trials:
            a = _random_clause(rng, s.dim)
            b = _random_clause(rng, s.dim)
            common = sorted(a.pos & b.neg)
            if common and is_valid_inequality(s, a) and is_valid_inequality(s, b):
                pairs.append((a, b, rng.choice(common)))
            elif not common and rng.random() < 0.01:
                pairs.append(None)
        pairs = [p for p in pairs if p is not None]
    tested = 0
    for a, b, k in pairs:
        try:
            r = resolvent(a, b, k)
        except TautologyError:
            continue
        tested += 1
        if not is_valid_inequality(s, r):
            cert = {"first": _clause_dict(a), "second": _clause_dict(b), "pivot": k + 1, "resolvent": _clause_dict(r)}
            return Verdict("resolution", name, FAIL, "resolvent not valid", cert)
    if not tested:
        return Verdict("resolution", name, VACUOUS, "no resolvable pair of valid clauses")
    return Verdict("resolution", name, PASS, "", {"resolvents": tested})


def _random_clause(rng: random.Random, dim: int) -> Clause:
    while True:
        signs = [rng.choice((None, "+", "-")) for _ in range(dim)]
        pos = [i for i, t in enumerate(signs) if t == "+"]
        neg = [i for i, t in enumerate(signs) if t == "-"]
        if pos or neg:
            return Clause(pos, neg)


def _clause_dict(cl: Clause) -> dict:
    return {"pos": sorted(i + 1 for i in cl.pos), "neg": sorted(i + 1 for i in cl.neg)}


def verify_pg_props(k: int) -> Verdict:
    r = pg_properties_check(k)
    cert = {"cocycle_weights": r.cocycle_weights, "cycles_checked": r.cycles_checked}
    return Verdict("pg-props", f"k={k}", PASS if r.ok else FAIL, "", cert)


def verify_pg_simplex(k: int) -> Verdict:
    r = pg_simplex_check(k)
    cert = {"points": r.points, "dimension": r.dimension, "weight": fmt_fraction(r.expected_weight)}
    return Verdict("pg-simplex", f"k={k}", PASS if r.ok else FAIL, "", cert)


def verify_pg_recursive(k: int) -> Verdict:
    ws = pg_recursive_decompose(k)
    bad = [w.pivot + 1 for w in ws if not w.ok]
    return Verdict("pg-recursive", f"k={k}", FAIL if bad else PASS, "", {"pivots": len(ws), "failed": bad})


CLUTTER_CHECKS: dict[str, Callable[[Context], Verdict]] = {
    "dense": verify_dense,
    "setcore": verify_setcore,
    "main-pg": verify_main_pg,
    "main-l7": verify_main_l7,
    "core-converse": verify_core_converse,
    "small-rank": verify_small_rank,
    "unique-simplex": verify_unique_simplex,
    "mono": verify_mono,
    "main-geometric": verify_main_geometric,
}
POINTSET_CHECKS = {"binary-cuboid": verify_binary_cuboid, "resolution": verify_resolution}
K_CHECKS = {"pg-props": verify_pg_props, "pg-simplex": verify_pg_simplex, "pg-recursive": verify_pg_recursive}
THEOREMS = list(CLUTTER_CHECKS) + list(POINTSET_CHECKS) + list(K_CHECKS)


# sweep -----------------------------------------------------------------------------------------


@dataclass
class SweepStats:
    n: int
    clutters: int = 0
    degenerate: int = 0
    tangled: int = 0
    clean: int = 0
    clean_tangled: int = 0
    ideal: int = 0
    binary: int = 0
    outcomes: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "clutters": self.clutters,
            "degenerate": self.degenerate,
            "tangled": self.tangled,
            "clean": self.clean,
            "clean_tangled": self.clean_tangled,
            "ideal": self.ideal,
            "binary": self.binary,
            "outcomes": self.outcomes,
            "violations": self.violations,
        }


def sweep_one(c: Clutter, name: str) -> tuple[dict, list[Verdict]]:
    """Classify one clutter and run every applicable clutter verifier on it."""
    ctx = Context(c, name, budget=None)
    flags = {"degenerate": c.is_degenerate}
    verdicts = [verify_blocker_involution(ctx)]
    if c.is_degenerate:
        return flags, verdicts
    flags["tangled"] = ctx.tangled()
    flags["clean"] = bool(ctx.clean()[0])
    flags["binary"] = is_binary_clutter(c)
    flags["ideal"] = bool(is_ideal(c).ideal)
    if flags["ideal"] and not flags["clean"]:
        verdicts.append(Verdict("ideal-clean", name, FAIL, "ideal clutter with a delta or eoh-blocker minor"))
    for check in CLUTTER_CHECKS.values():
        verdicts.append(check(ctx))
    return flags, verdicts


def sweep(n: int, jobs: int = 1) -> SweepStats:
    clutters = clutters_up_to_isomorphism(n)
    names = [f"n{n}-{i:04d}" for i in range(len(clutters))]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(sweep_one, clutters, names))
    else:
        results = [sweep_one(c, nm) for c, nm in zip(clutters, names)]
    stats = SweepStats(n)
    for c, (flags, verdicts) in zip(clutters, results):
        stats.clutters += 1
        stats.degenerate += flags["degenerate"]
        for key in ("tangled", "clean", "ideal", "binary"):
            setattr(stats, key, getattr(stats, key) + flags.get(key, False))
        stats.clean_tangled += flags.get("tangled", False) and flags.get("clean", False)
        for v in verdicts:
            per = stats.outcomes.setdefault(v.theorem, {PASS: 0, FAIL: 0, VACUOUS: 0})
            per[v.outcome] += 1
            if v.outcome == FAIL:
                stats.violations.append({"clutter": dumps(c), **v.to_dict()})
    return stats


def minor_blocker_duality(c: Clutter, delete: int, contract: int) -> bool:
    """b(c \\ I / J) = b(c) / I \\ J."""
    return blocker(minor_mask(c, delete, contract)) == minor_mask(blocker(c), contract, delete)


__all__ = [
    "CLUTTER_CHECKS",
    "FAIL",
    "K_CHECKS",
    "PASS",
    "POINTSET_CHECKS",
    "THEOREMS",
    "VACUOUS",
    "Context",
    "SweepStats",
    "Verdict",
    "minor_blocker_duality",
    "sweep",
    "sweep_one",
]
