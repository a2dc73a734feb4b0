"""The analysis pipeline behind ``cleantangled analyze``."""

from __future__ import annotations

import json

from .binary import is_binary_clutter, is_pg_cocycle
from .clutter import Clutter, covering_number
from .corpus import instance_hash
from .errors import CertificateError, GuardError
from .lp import fmt_fraction
from .packing import (
    core_combinatorial_indices,
    core_indices_lp,
    cover_graph,
    is_tangled,
    max_fractional_packing,
    setcore,
    unique_value_two_packing,
)
from .pointset import is_simplex
from .recognition import find_l7_minor, geometric_trichotomy, is_clean, is_ideal

SCHEMA_VERSION = 1


def skipped(reason: str) -> dict:
    return {"skipped": reason}


def analyze(c: Clutter, name: str, budget: int | None = 200_000, strict_clean: bool = False) -> dict:
    """Run every stage; a stage that cannot run records why instead of a value.

    Raises GuardError only when ``strict_clean`` is set and the cleanness
    search runs out of budget.
    """
    rep: dict = {"schema_version": SCHEMA_VERSION, "instance": {"name": name, "sha256": instance_hash(c)}}
    rep["n"] = c.n
    rep["members"] = len(c.members)
    stages = ["tau", "tangled", "cleanness", "rank", "components", "packing", "core", "setcore",
              "simplex", "unique_packing", "pg_k", "minors", "ideal", "trichotomy"]

    def skip_rest(reason: str):
        for s in stages:
            rep.setdefault(s, skipped(reason))
        return rep

    if c.is_degenerate:
        return skip_rest("degenerate clutter")
    rep["tau"] = covering_number(c)
    rep["binary"] = is_binary_clutter(c)

    if rep["binary"]:
        rep["cleanness"] = {"status": "clean", "by": "binary"}
    else:
        v = is_clean(c, budget)
        rep["cleanness"] = {"status": v.status, "by": "minor search", "nodes": v.nodes}
        if v.witness is not None:
            rep["cleanness"]["witness"] = v.witness.to_dict(c)
    status = rep["cleanness"]["status"]
    if strict_clean and status == "inconclusive":
        raise GuardError("cleanness search exhausted its budget")

    rep["tangled"] = is_tangled(c)
    y = max_fractional_packing(c)
    rep["packing"] = {"value": fmt_fraction(y.value), "weights": [w for _, w in y.report()]}
    if not rep["tangled"]:
        _non_ideal(rep, c, budget)
        return skip_rest("not tangled")
    if strict_clean and status != "clean":
        return skip_rest("not clean")

    try:
        g = cover_graph(c)
    except CertificateError as exc:
        rep["rank"] = {"error": str(exc), "certificate": exc.certificate}
        _non_ideal(rep, c, budget)
        return skip_rest("cover graph not bipartite or has isolated vertex")
    rep["rank"] = g.rank
    rep["components"] = [
        {"U": [str(x) for x in c.labels if x in u], "V": [str(x) for x in c.labels if x in v]}
        for u, v in g.components
    ]

    try:
        lp_core = core_indices_lp(c)
        comb = core_combinatorial_indices(c, g)
        rep["core"] = {"lp": [i + 1 for i in lp_core], "combinatorial": [i + 1 for i in comb], "agree": lp_core == comb}
        s = setcore(c, g)
    except CertificateError as exc:
        rep["core"] = rep.get("core") or {"error": str(exc), "certificate": exc.certificate}
        _non_ideal(rep, c, budget)
        return skip_rest("core stage failed")
    rep["setcore"] = s.strings()
    rep["simplex"] = is_simplex(s)
    u = unique_value_two_packing(c, check=False)
    rep["unique_packing"] = {"unique": u is not None, "weights": [w for _, w in u.report()] if u else None}
    rep["pg_k"] = is_pg_cocycle(s)
    _non_ideal(rep, c, budget)
    if rep["simplex"] and status == "clean":
        try:
            t = geometric_trichotomy(c, budget, known_non_ideal=_known_non_ideal(rep))
            rep["trichotomy"] = {"cases": t.cases, "witness": t.witness}
        except CertificateError as exc:
            rep["trichotomy"] = {"error": str(exc), "certificate": exc.certificate}
    return skip_rest("setcore hull not a simplex" if not rep["simplex"] else "cleanness not established")


def _non_ideal(rep: dict, c: Clutter, budget: int | None) -> None:
    """Fill the minors and ideal fields (L7 search first, then vertex enumeration)."""
    if c.n >= 7:
        found = find_l7_minor(c, budget and budget * 10)
        rep["minors"] = {"L7": found.witness.to_dict(c) if found.witness else found.status}
    else:
        rep["minors"] = {"L7": "absent"}
    if isinstance(rep["minors"]["L7"], dict):
        rep["ideal"] = {"ideal": False, "by": "L7 minor"}
        return
    try:
        v = is_ideal(c, max_bases=budget)
    except GuardError as exc:
        rep["ideal"] = skipped(str(exc))
        return
    if v.ideal is None:
        rep["ideal"] = skipped("basis budget exhausted")
    elif v.ideal:
        rep["ideal"] = {"ideal": True, "vertices": v.vertices}
    else:
        rep["ideal"] = {"ideal": False, "by": "fractional vertex", "vertex": [fmt_fraction(x) for x in v.fractional_vertex]}


def _known_non_ideal(rep: dict) -> tuple[bool, dict | None] | None:
    ideal = rep["ideal"]
    if "ideal" not in ideal:
        return None
    if ideal["ideal"]:
        return False, None
    l7 = rep["minors"]["L7"]
    if isinstance(l7, dict):
        return True, l7
    return True, {"kind": "fractional-vertex", "x": ideal["vertex"]}


def to_json(rep: dict) -> str:
    return json.dumps(rep, sort_keys=True, indent=2) + "\n"


def to_text(rep: dict) -> str:
    lines = []
    for key, value in rep.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"
