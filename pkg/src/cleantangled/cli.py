"""Command-line interface.

Exit codes: 0 pass, 1 failure with certificate, 2 usage error, 3 guard or
budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus
from . import verify as V
from .clutter import Clutter, blocker, dumps, minor
from .errors import GuardError
from .pointset import loads as loads_points
from .recognition import find_minor_isomorphic
from .report import analyze, to_json, to_text

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _labels(c: Clutter, spec: str | None) -> list:
    if not spec:
        return []
    by_str = {str(x): x for x in c.labels}
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if tok not in by_str:
            raise UsageError(f"unknown element {tok!r}")
        out.append(by_str[tok])
    return out


def cmd_gen(args) -> int:
    try:
        c = corpus.gen(args.family, *args.params)
    except GuardError:
        raise
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    _emit(dumps(c), args.output)
    return EXIT_PASS


def _analyze_one(token: str, budget, strict: bool) -> tuple[str, dict, float]:
    name, c = corpus.resolve(token)
    t = time.perf_counter()
    rep = analyze(c, name, budget, strict)
    return name, rep, time.perf_counter() - t


def cmd_analyze(args) -> int:
    results = _map(args.jobs, _analyze_one, args.instances, [args.budget] * len(args.instances),
                   [args.strict_clean] * len(args.instances))
    for name, rep, secs in sorted(results, key=lambda r: r[0]):
        if args.json:
            sys.stdout.write(to_json(rep))
        else:
            sys.stdout.write(to_text(rep) + f"time: {secs:.3f}s\n\n")
    if args.strict_clean and any(r[1]["cleanness"].get("status") == "not-clean" for r in results):
        return EXIT_FAIL
    return EXIT_PASS


def _map(jobs: int, fn, *iterables):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(fn, *iterables))
    return list(map(fn, *iterables))


def _verify_instance(theorem: str, token: str, budget) -> dict:
    name, c = corpus.resolve(token)
    return V.CLUTTER_CHECKS[theorem](V.Context(c, name, budget)).to_dict()


def _verify_pointset(theorem: str, token: str) -> dict:
    sets = corpus.pointset_corpus()
    if token in sets:
        s, name = sets[token], token
    else:
        path = Path(token)
        if not path.exists():
            raise UsageError(f"no point set named {token!r}")
        s, name = loads_points(path.read_text()), path.name
    return V.POINTSET_CHECKS[theorem](s, name).to_dict()


def _verify_k(theorem: str, token: str) -> dict:
    try:
        k = int(token)
    except ValueError as exc:
        raise UsageError(f"{theorem} takes integers k, got {token!r}") from exc
    return V.K_CHECKS[theorem](k).to_dict()


def cmd_verify(args) -> int:
    th = args.theorem
    if th in V.K_CHECKS:
        tokens = args.instances or (["2", "3", "4"] if th == "pg-props" else ["1", "2", "3", "4"])
        results = _map(args.jobs, _verify_k, [th] * len(tokens), tokens)
    elif th in V.POINTSET_CHECKS:
        tokens = args.instances or list(corpus.pointset_corpus())
        results = _map(args.jobs, _verify_pointset, [th] * len(tokens), tokens)
    else:
        if args.sweep is not None:
            if args.sweep > 5:
                raise GuardError("sweep is limited to n <= 5")
            clutters = corpus.clutters_up_to_isomorphism(args.sweep)
            names = [f"n{args.sweep}-{i:04d}" for i in range(len(clutters))]
            results = [V.CLUTTER_CHECKS[th](V.Context(c, nm, args.budget)).to_dict() for c, nm in zip(clutters, names)]
        else:
            tokens = args.instances or list(corpus.CORPUS)
            results = _map(args.jobs, _verify_instance, [th] * len(tokens), tokens, [args.budget] * len(tokens))
    results.sort(key=lambda r: r["instance"])
    if args.json:
        sys.stdout.write(json.dumps({"schema_version": 1, "theorem": th, "results": results}, sort_keys=True, indent=2) + "\n")
    else:
        for r in results:
            extra = f" ({r['reason']})" if r["reason"] else ""
            sys.stdout.write(f"{r['theorem']} {r['instance']}: {r['outcome']}{extra}\n")
            if r["outcome"] == V.FAIL:
                sys.stdout.write("  certificate: " + json.dumps(r["certificate"], sort_keys=True) + "\n")
    return EXIT_FAIL if any(r["outcome"] == V.FAIL for r in results) else EXIT_PASS


def cmd_sweep(args) -> int:
    if not 1 <= args.n <= 5:
        raise GuardError("sweep is limited to 1 <= n <= 5")
    stats = V.sweep(args.n, args.jobs)
    d = stats.to_dict()
    if args.json:
        sys.stdout.write(json.dumps({"schema_version": 1, **d}, sort_keys=True, indent=2) + "\n")
    else:
        for key in ("n", "clutters", "degenerate", "tangled", "clean", "clean_tangled", "ideal", "binary"):
            sys.stdout.write(f"{key}: {d[key]}\n")
        for th, counts in d["outcomes"].items():
            sys.stdout.write(f"{th}: pass {counts['pass']}, fail {counts['fail']}, vacuous {counts['vacuous']}\n")
        sys.stdout.write(f"violations: {len(d['violations'])}\n")
        for v in d["violations"]:
            sys.stdout.write(json.dumps(v, sort_keys=True) + "\n")
    return EXIT_FAIL if stats.violations else EXIT_PASS


def cmd_blocker(args) -> int:
    _, c = corpus.resolve(args.instance)
    _emit(dumps(blocker(c)), args.output)
    return EXIT_PASS


def cmd_minor(args) -> int:
    _, c = corpus.resolve(args.instance)
    d, j = _labels(c, args.delete), _labels(c, args.contract)
    if set(d) & set(j):
        raise UsageError("delete and contract sets must be disjoint")
    _emit(dumps(minor(c, d, j)), args.output)
    return EXIT_PASS


def cmd_find_minor(args) -> int:
    _, c = corpus.resolve(args.instance)
    _, target = corpus.resolve(args.target)
    res = find_minor_isomorphic(c, target, args.budget)
    out = {"schema_version": 1, "status": res.status, "nodes": res.nodes,
           "witness": res.witness.to_dict(c) if res.witness else None}
    if args.json:
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(f"status: {res.status}\n")
        if res.witness:
            w = res.witness.to_dict(c)
            sys.stdout.write(f"delete: {' '.join(w['delete'])}\ncontract: {' '.join(w['contract'])}\n")
            sys.stdout.write("map: " + " ".join(f"{k}->{v}" for k, v in w["map"].items()) + "\n")
    if res.status == "inconclusive":
        return EXIT_GUARD
    return EXIT_PASS if res.witness else EXIT_FAIL


def _budget(text: str):
    if text.lower() in ("none", "inf", "unlimited"):
        return None
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cleantangled", description="Clean tangled clutters: cores, setcores, minors.")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent instances")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, budget=200_000):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--budget", type=_budget, default=budget, help="search node budget ('none' for unlimited)")

    g = sub.add_parser("gen", help="write a built-in instance in clutter format")
    g.add_argument("family", help="q6 | q | l7 | square | delta N | eoh N | pg-cuboid K | cuboid FILE")
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="full pipeline report")
    a.add_argument("instances", nargs="+", help="clutter file, corpus name, or family:param")
    a.add_argument("--strict-clean", action="store_true", help="require cleanness before the core stages")
    common(a)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run a theorem verifier")
    v.add_argument("theorem", choices=V.THEOREMS)
    v.add_argument("instances", nargs="*", help="instances (clutters, point sets or k values by theorem)")
    v.add_argument("--sweep", type=int, help="run on every clutter with this many elements")
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="classify all clutters on n <= 5 elements and check every theorem")
    s.add_argument("n", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sweep)

    b = sub.add_parser("blocker", help="write the blocker")
    b.add_argument("instance")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_blocker)

    m = sub.add_parser("minor", help="write c \\ delete / contract")
    m.add_argument("instance")
    m.add_argument("--delete", default="", help="comma-separated elements")
    m.add_argument("--contract", default="", help="comma-separated elements")
    m.add_argument("-o", "--output")
    m.set_defaults(func=cmd_minor)

    f = sub.add_parser("find-minor", help="search for a minor isomorphic to a target")
    f.add_argument("instance")
    f.add_argument("--target", required=True)
    common(f, budget=2_000_000)
    f.set_defaults(func=cmd_find_minor)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except GuardError as exc:
        sys.stderr.write(f"guard: {exc}\n")
        return EXIT_GUARD
    except (UsageError, FileNotFoundError, KeyError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
