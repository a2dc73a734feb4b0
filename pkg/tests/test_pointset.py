import pytest
from conftest import point_sets
from hypothesis import given, settings
from hypothesis import strategies as st

from cleantangled.clutter import Clutter, clutter_isomorphic
from cleantangled.corpus import q6
from cleantangled.pointset import (
    PointSet,
    center_in_interior,
    center_weights,
    cube,
    cuboid,
    cuboid_points,
    dumps,
    duplicate_coordinates_detect,
    is_full_simplex,
    is_simplex,
    loads,
    permute,
    pointset_isomorphic,
    twist,
    twist_coordinate,
)

Q6_SET = PointSet.from_strings(["000", "110", "101", "011"])


def test_cuboid_of_q6_set_is_q6():
    c = cuboid(Q6_SET)
    assert c == q6()


def test_cuboid_single_point():
    c = cuboid(PointSet.from_strings(["0"]))
    assert c.sets() == [frozenset({2})]


def test_cuboid_points_inverse():
    assert cuboid_points(cuboid(Q6_SET)) == Q6_SET
    assert cuboid_points(Clutter.from_sets([[1, 2]], labels=[1, 2])) is None


def test_twist_examples():
    assert twist(Q6_SET, (0, 0, 0)) == Q6_SET
    assert twist(Q6_SET, (1, 1, 0)) == Q6_SET
    assert twist_coordinate(PointSet.from_strings(["0"]), 0) == PointSet.from_strings(["1"])


def test_isomorphism_by_twist():
    other = PointSet.from_strings(["111", "001", "010", "100"])
    perm, q = pointset_isomorphic(Q6_SET, other)
    assert twist(permute(Q6_SET, perm), q) == other


def test_not_isomorphic():
    a = PointSet.from_strings(["00", "11"])
    b = PointSet.from_strings(["00", "10"])
    assert pointset_isomorphic(a, b) is None


@given(point_sets(max_dim=5), st.randoms(use_true_random=False))
@settings(max_examples=150, deadline=None)
def test_isomorphism_recovers_random_relabel_and_twist(s, rnd):
    perm = list(range(s.dim))
    rnd.shuffle(perm)
    q = tuple(rnd.randint(0, 1) for _ in range(s.dim))
    target = twist(permute(s, perm), q)
    found = pointset_isomorphic(s, target)
    assert found is not None
    p2, q2 = found
    assert twist(permute(s, p2), q2) == target


@given(point_sets(max_dim=4))
@settings(max_examples=100, deadline=None)
def test_pointset_iso_agrees_with_cuboid_iso_when_positive(s):
    # relabel + twist of S gives an isomorphic cuboid
    t = twist_coordinate(s, 0)
    assert clutter_isomorphic(cuboid(s), cuboid(t)) is not None


def test_duplicate_coordinates():
    assert duplicate_coordinates_detect(Q6_SET) == [[0], [1], [2]]
    assert duplicate_coordinates_detect(PointSet.from_strings(["00", "11"])) == [[0, 1]]
    assert duplicate_coordinates_detect(PointSet.from_strings(["01", "10"])) == [[0, 1]]


def test_simplex_tests():
    assert is_simplex(Q6_SET) and is_full_simplex(Q6_SET)
    assert not is_simplex(cube(2))
    assert is_simplex(PointSet.from_strings(["101"]))


def test_center_interior():
    assert center_in_interior(Q6_SET)
    assert not center_in_interior(PointSet.from_strings(["00", "11"]))
    assert center_weights(cube(2)) is not None


def test_text_roundtrip_and_errors():
    assert loads(dumps(Q6_SET)) == Q6_SET
    with pytest.raises(ValueError):
        loads("000\n")
    with pytest.raises(ValueError):
        loads("dim 2\n012\n")


def test_constructor_checks():
    with pytest.raises(ValueError):
        PointSet(2, [(0, 1), (0, 1)])
    with pytest.raises(ValueError):
        PointSet(2, [(0, 2)])
