import pytest

from cleantangled.clutter import Clutter, clutter_isomorphic
from cleantangled.corpus import (
    CORPUS,
    clutters_up_to_isomorphism,
    gen,
    instance_hash,
    named,
    pointset_corpus,
    resolve,
)
from cleantangled.errors import GuardError
from cleantangled.pointset import dumps as dump_points

PINNED = {
    "q6": "1203527952c6de81cdeffbb661b5d2fe59e1f60e3f54bc0dc662ba0202f222e7",
    "q": "937f85a9e4ff831bf0e362cd02a409057a4b2427f438c3bc6bad93e5e07ea63f",
    "l7": "a18ac9cc2d924ff32b529e7913fa03aad9aa6bbf4318bd95078ac88d1ca675aa",
    "delta-3": "f332ccf2169f497ba27f6f9d709d8fd585cb71f49968884e6f09f6f17fa51594",
    "delta-4": "4bc8381db83eae1d997036da0d626d5bc5eac16bee261b198f0daf0d4613b415",
    "eoh-5": "d9a05f4aedef7dda8376d6273b7abf309981a3eaa377c533b86974a93fa997c0",
    "eoh-7": "885baacd79e48570e110f78c7f35bf373af73d6e47728fb334ad60f4526aafd6",
    "pg-cuboid-1": "3b4c5661deb9982b8e960865367d6511fbcc2fd565b8ff7501bfc91b2b809244",
    "pg-cuboid-2": "e35adcb2e9e0bec893d3d27a297353ed19330eed5ffd6ac2641087c35bcd25a0",
    "pg-cuboid-3": "6a38ce82877e4f20ed1177ba6f8a0424acdbd4381d816e9390a004b0df800064",
    "square": "5043188c412613971da4f3ac0ea3b75468853862a6ad8996592f60f4a47df179",
}


def test_corpus_names_are_pinned():
    assert list(CORPUS) == list(PINNED)


@pytest.mark.parametrize("name", list(PINNED))
def test_instance_hash_pinned(name):
    assert instance_hash(named(name)) == PINNED[name]


def test_pg_cuboid_2_is_q6_up_to_isomorphism():
    assert clutter_isomorphic(named("pg-cuboid-2"), named("q6")) is not None


def test_gen_families():
    assert gen("delta", "5").n == 5
    assert gen("eoh", "7").n == 7
    assert gen("Q6") == named("q6")
    with pytest.raises(ValueError):
        gen("nope")
    with pytest.raises(ValueError):
        gen("delta")
    with pytest.raises(GuardError):
        gen("pg-cuboid", "6")


def test_gen_cuboid_from_file(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(dump_points(pointset_corpus()["pg-2"]))
    assert gen("cuboid", str(f)) == named("pg-cuboid-2")


def test_resolve_tokens(tmp_path):
    assert resolve("q6")[1] == named("q6")
    assert resolve("delta:4")[1] == named("delta-4")
    f = tmp_path / "c.txt"
    from cleantangled.clutter import dumps

    f.write_text(dumps(named("l7")))
    name, c = resolve(str(f))
    assert name == "c.txt" and c == named("l7")
    with pytest.raises(FileNotFoundError):
        resolve(str(tmp_path / "missing"))


@pytest.mark.parametrize("n,count", [(1, 3), (2, 5), (3, 10), (4, 30), (5, 210)])
def test_isomorphism_class_counts(n, count):
    # counts of antichains of subsets of [n] up to permutation, including {} and {{}}
    assert len(clutters_up_to_isomorphism(n)) == count


def test_enumeration_reps_are_pairwise_non_isomorphic():
    reps = clutters_up_to_isomorphism(4)
    for i, a in enumerate(reps):
        for b in reps[i + 1 :]:
            assert clutter_isomorphic(a, b) is None


def test_enumeration_guard():
    with pytest.raises(GuardError):
        clutters_up_to_isomorphism(6)


def test_degenerate_reps_present():
    reps = clutters_up_to_isomorphism(2)
    assert Clutter([1, 2], []) in reps and Clutter([1, 2], [0]) in reps
