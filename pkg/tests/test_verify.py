import pytest

from cleantangled.clutter import Clutter
from cleantangled.corpus import CORPUS, named, pointset_corpus
from cleantangled.pointset import PointSet
from cleantangled.verify import (
    CLUTTER_CHECKS,
    FAIL,
    K_CHECKS,
    PASS,
    POINTSET_CHECKS,
    VACUOUS,
    Context,
    minor_blocker_duality,
    sweep,
    verify_dense,
    verify_main_l7,
    verify_mono,
    verify_resolution,
    verify_small_rank,
)


@pytest.mark.parametrize("name", list(CORPUS))
def test_no_clutter_check_fails_on_corpus(name):
    ctx = Context(named(name), name)
    for theorem, check in CLUTTER_CHECKS.items():
        v = check(ctx)
        assert v.outcome != FAIL, (theorem, v.reason, v.certificate)


def test_expected_passes():
    ctx = Context(named("q6"), "q6")
    assert verify_small_rank(ctx).outcome == PASS
    assert verify_mono(ctx).outcome == PASS
    v = verify_main_l7(Context(named("pg-cuboid-3"), "pg-cuboid-3"))
    assert v.outcome == PASS and v.certificate["kind"] == "L7"


def test_vacuous_reasons():
    assert verify_dense(Context(named("delta-3"))).outcome == VACUOUS
    v = verify_small_rank(Context(named("l7")))
    assert v.outcome == VACUOUS and v.reason == "not tangled"
    v = verify_small_rank(Context(named("delta-4")))
    assert v.reason == "not clean"


def test_dense_fails_on_a_forged_context():
    # pretend delta(3) is clean: its packing value 3/2 must then be reported as a failure
    ctx = Context(named("delta-3"))
    ctx._clean = (True, "forced")
    v = verify_dense(ctx)
    assert v.outcome == FAIL and v.certificate["value"] == "3/2"


@pytest.mark.parametrize("name", list(pointset_corpus()))
def test_pointset_checks(name):
    s = pointset_corpus()[name]
    for check in POINTSET_CHECKS.values():
        assert check(s, name).outcome != FAIL


def test_resolution_sampled_branch():
    s = PointSet.from_strings(["00000", "11000", "10100", "01111"])
    v = verify_resolution(s, trials=300)
    assert v.outcome == PASS


@pytest.mark.parametrize("k", [2, 3])
def test_k_checks(k):
    for check in K_CHECKS.values():
        assert check(k).outcome == PASS


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sweep_zero_violations(n):
    stats = sweep(n)
    assert stats.violations == []
    assert stats.clutters == [3, 5, 10, 30][n - 1]


def test_sweep_counts_n4():
    d = sweep(4).to_dict()
    assert d["degenerate"] == 2
    assert d["clean_tangled"] >= 1
    assert d["outcomes"]["blocker-involution"][PASS] == 30


def test_sweep_parallel_matches_serial():
    assert sweep(3, jobs=2).to_dict() == sweep(3).to_dict()


def test_minor_blocker_duality_example():
    c = named("q6")
    assert minor_blocker_duality(c, 0b000001, 0b000100)
    assert minor_blocker_duality(Clutter([1, 2], [0b11]), 0, 0b01)
