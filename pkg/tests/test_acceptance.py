"""Acceptance criteria; each test records one PASS/FAIL line with its runtime."""

import random
import time
from fractions import Fraction
from itertools import product

from cleantangled.binary import (
    cocycle_space,
    is_affine_binary_space,
    is_binary_clutter,
    is_pg_cocycle,
    pg,
    pg_simplex_check,
)
from cleantangled.cli import main
from cleantangled.clutter import (
    Clutter,
    blocker,
    covering_number,
    incidence_matrix,
    minimalize,
    minor_mask,
)
from cleantangled.corpus import (
    CORPUS,
    Q_MATRIX,
    SQUARE,
    _antichains,
    clutters_up_to_isomorphism,
    named,
    pg_cuboid,
    q,
    q6,
)
from cleantangled.packing import (
    core_indices,
    cover_graph,
    is_tangled,
    setcore,
    unique_value_two_packing,
)
from cleantangled.pointset import PointSet, cuboid, is_simplex, pointset_isomorphic
from cleantangled.recognition import (
    find_minor_isomorphic,
    is_clean,
    is_ideal,
    is_vertex,
    l7,
    simplex_pg_equivalence,
)
from cleantangled.verify import (
    FAIL,
    Context,
    verify_core_converse,
    verify_mono,
    verify_resolution,
    verify_small_rank,
)

half = Fraction(1, 2)
Q6_POINTS = PointSet.from_strings(["000", "110", "101", "011"])


class Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.secs = time.perf_counter() - self.t


def _clean_tangled(c: Clutter) -> bool:
    return is_tangled(c) and bool(Context(c, budget=None).clean()[0])


def test_1a_q6(acceptance):
    with Timer() as t:
        c = q6()
        checks = {
            "tau": covering_number(c) == 2,
            "tangled": is_tangled(c),
            "clean": is_clean(c).clean is True,
            "rank": cover_graph(c).rank == 3,
            "core": core_indices(c) == (0, 1, 2, 3),
            "setcore": pointset_isomorphic(setcore(c), Q6_POINTS) is not None,
            "simplex": is_simplex(setcore(c)),
            "packing": unique_value_two_packing(c).weights == (half,) * 4,
            "pg": is_pg_cocycle(setcore(c)) == 2,
        }
    bad = [k for k, v in checks.items() if not v]
    ok = not bad and t.secs < 1
    assert acceptance("1a Q6 reproduction (< 1 s)", ok, f"{t.secs:.2f}s failed={bad}")


def test_1b_q(acceptance):
    with Timer() as t:
        c = q()
        checks = {
            "matrix": incidence_matrix(c) == [list(r) for r in Q_MATRIX],
            "rank": cover_graph(c).rank == 3,
            "core": core_indices(c) == (0, 1, 2, 3),
            "packing": unique_value_two_packing(c).weights == (half,) * 4 + (Fraction(0),) * 4,
            "setcore": pointset_isomorphic(setcore(c), setcore(q6())) is not None,
        }
    bad = [k for k, v in checks.items() if not v]
    ok = not bad and t.secs < 1
    assert acceptance("1b Q reproduction (< 1 s)", ok, f"{t.secs:.2f}s failed={bad}")


def test_1c_l7(acceptance):
    with Timer() as t:
        c = l7()
        v = is_ideal(c)
        M = [[m >> j & 1 for j in range(7)] for m in c.members]
        checks = {
            "self-blocking": blocker(c) == c,
            "tau": covering_number(c) == 3,
            "binary": is_binary_clutter(c),
            "non-ideal": v.ideal is False and is_vertex(M, v.fractional_vertex),
            "clean": is_clean(c, budget=200_000).clean is True,
        }
    bad = [k for k, v in checks.items() if not v]
    ok = not bad and t.secs < 10
    assert acceptance("1c L7 reproduction (< 10 s)", ok, f"{t.secs:.2f}s failed={bad}")


def test_2_projective_geometry(acceptance):
    bad = []
    with Timer() as t:
        for k in range(1, 5):
            s = cocycle_space(pg(k))
            if len(s) != 1 << k:
                bad.append((k, "size"))
            if {sum(p) for p in s.points if any(p)} != {1 << (k - 1)}:
                bad.append((k, "weights"))
            r = pg_simplex_check(k)
            if not (r.full_simplex and r.center_interior):
                bad.append((k, "simplex"))
            if r.packing != (Fraction(1, 1 << (k - 1)),) * (1 << k):
                bad.append((k, "packing"))
    ok = not bad and t.secs < 30
    assert acceptance("2 projective geometry k=1..4 (< 30 s)", ok, f"{t.secs:.2f}s failed={bad}")


def test_3_simplex_pg_biconditional(acceptance):
    bad = []
    with Timer() as t:
        for name, c in [("q6", q6()), ("q", q())] + [(f"pg{k}", pg_cuboid(k)) for k in (1, 2, 3)]:
            r = simplex_pg_equivalence(c)
            if not r.simplex or r.pg_k is None:
                bad.append(name)
        ctl = simplex_pg_equivalence(cuboid(SQUARE))
        if ctl.simplex or ctl.pg_k is not None:
            bad.append("square")
    ok = not bad and t.secs < 10
    assert acceptance("3 simplex/PG biconditional + control (< 10 s)", ok, f"{t.secs:.2f}s failed={bad}")


def test_4_pg3_l7_minor(acceptance):
    with Timer() as t:
        c = pg_cuboid(3)
        res = find_minor_isomorphic(c, l7())
        replayed = res.witness is not None and res.witness.replay(c, l7())
    ok = replayed and t.secs < 60
    assert acceptance("4 L7 minor of cuboid(cocycle(PG)) k=3 (< 60 s)", ok, f"{t.secs:.2f}s nodes={res.nodes}")


def _duality_holds(c: Clutter, d: int, j: int) -> bool:
    return blocker(minor_mask(c, d, j)) == minor_mask(blocker(c), j, d)


def test_5a_blocker_involution_and_duality(acceptance):
    failures = 0
    checked = 0
    with Timer() as t:
        for n in range(1, 5):
            labels = list(range(1, n + 1))
            for members in _antichains(n):
                c = Clutter(labels, members)
                failures += blocker(blocker(c)) != c
                for assign in product((0, 1, 2), repeat=n):
                    d = sum(1 << i for i, a in enumerate(assign) if a == 1)
                    j = sum(1 << i for i, a in enumerate(assign) if a == 2)
                    if d | j == c.full:
                        continue
                    failures += not _duality_holds(c, d, j)
                    checked += 1
        rng = random.Random(20261016)
        for _ in range(1000):
            n = rng.randint(1, 8)
            masks = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 10))]
            c = Clutter(list(range(1, n + 1)), minimalize(masks))
            failures += blocker(blocker(c)) != c
            d = j = 0
            for i in range(n):
                r = rng.random()
                d |= (r < 0.3) << i
                j |= (0.3 <= r < 0.6) << i
            if d | j != c.full:
                failures += not _duality_holds(c, d, j)
                checked += 1
    assert acceptance(
        "5a blocker involution + minor-blocker duality", failures == 0, f"{t.secs:.2f}s checks={checked} failures={failures}"
    )


def _sweep_clean_tangled(max_n: int):
    for n in range(1, max_n + 1):
        for i, c in enumerate(clutters_up_to_isomorphism(n)):
            if not c.is_degenerate and _clean_tangled(c):
                yield f"n{n}-{i}", c


def test_5b_core_lp_equals_combinatorial(acceptance):
    instances = list(_sweep_clean_tangled(4)) + [(k, named(k)) for k in CORPUS]
    fails, ran = [], 0
    with Timer() as t:
        for name, c in instances:
            v = verify_core_converse(Context(c, name, budget=None))
            ran += v.outcome == "pass"
            if v.outcome == FAIL:
                fails.append(name)
    assert acceptance("5b LP core = combinatorial core", not fails and ran > 0, f"{t.secs:.2f}s instances={ran} failures={fails}")


def test_5c_small_rank_setcores(acceptance):
    fails, ran = [], 0
    with Timer() as t:
        for name, c in _sweep_clean_tangled(4):
            v = verify_small_rank(Context(c, name, budget=None))
            ran += v.outcome == "pass"
            if v.outcome == FAIL:
                fails.append(name)
    assert acceptance("5c small-rank setcore shapes", not fails and ran > 0, f"{t.secs:.2f}s instances={ran} failures={fails}")


def _random_point_set(rng: random.Random) -> PointSet:
    dim = rng.randint(1, 5)
    masks = rng.sample(range(1 << dim), rng.randint(1, min(1 << dim, 12)))
    return PointSet(dim, [tuple(m >> i & 1 for i in range(dim)) for m in sorted(masks)])


def test_5d_affine_space_iff_binary_cuboid(acceptance):
    rng = random.Random(5)
    fails = 0
    positives = 0
    with Timer() as t:
        for _ in range(200):
            s = _random_point_set(rng)
            a = is_affine_binary_space(s)
            positives += a
            fails += a != is_binary_clutter(cuboid(s))
    assert acceptance("5d affine binary space <=> binary cuboid (200 sets)", fails == 0, f"{t.secs:.2f}s affine={positives} failures={fails}")


def test_5e_resolution_soundness(acceptance):
    from cleantangled.packing import TautologyError, is_valid_inequality, resolvent
    from cleantangled.verify import all_clauses

    rng = random.Random(7)
    trials = fails = resolved = 0
    cache = {}
    with Timer() as t:
        while trials < 10_000:
            s = _random_point_set(rng)
            key = (s.dim, s.points)
            if key not in cache:
                cache[key] = [cl for cl in all_clauses(s.dim) if is_valid_inequality(s, cl)]
            valid = cache[key]
            if not valid:
                continue
            # rejection-sample a resolvable pair of valid clauses
            for _ in range(50):
                a, b = rng.choice(valid), rng.choice(valid)
                if a.pos & b.neg:
                    break
            else:
                continue
            k = rng.choice(sorted(a.pos & b.neg))
            trials += 1
            try:
                r = resolvent(a, b, k)
            except TautologyError:
                continue
            resolved += 1
            fails += not is_valid_inequality(s, r)
        # corpus point sets through the verifier as well
        fails += verify_resolution(cocycle_space(pg(3))).outcome == FAIL
    assert acceptance("5e resolution soundness (10^4 trials)", fails == 0, f"{t.secs:.2f}s resolvents={resolved} failures={fails}")


def test_5f_monochromatic_covers(acceptance):
    fails, ran = [], 0
    with Timer() as t:
        for name in CORPUS:
            v = verify_mono(Context(named(name), name))
            ran += v.outcome == "pass"
            if v.outcome == FAIL:
                fails.append(name)
    assert acceptance("5f monochromatic cover theorem on corpus", not fails and ran > 0, f"{t.secs:.2f}s instances={ran} failures={fails}")


def test_6_determinism(acceptance, capsys):
    diffs = []
    with Timer() as t:
        for name in CORPUS:
            outs = []
            for _ in range(2):
                main(["analyze", name, "--json"])
                outs.append(capsys.readouterr().out)
            if outs[0] != outs[1] or not outs[0]:
                diffs.append(name)
    assert acceptance("6 analyze --json byte-identical across runs", not diffs, f"{t.secs:.2f}s differing={diffs}")
