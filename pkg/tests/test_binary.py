from fractions import Fraction

import numpy as np
import pytest
from conftest import point_sets
from hypothesis import given, settings

from cleantangled.binary import (
    BinaryMatroid,
    cocycle_space,
    cycle_space,
    dumps_matrix,
    gf2_nullspace,
    gf2_rank,
    is_affine_binary_space,
    is_binary_clutter,
    is_binary_space,
    is_pg_cocycle,
    loads_matrix,
    pg,
    pg_minor_check,
    pg_properties_check,
    pg_recursive_decompose,
    pg_simplex_check,
    triangle_decomposition,
)
from cleantangled.clutter import Clutter
from cleantangled.corpus import SQUARE, q, q6
from cleantangled.errors import GuardError
from cleantangled.pointset import PointSet, cuboid
from cleantangled.recognition import delta, l7, odd_hole


def test_pg_columns():
    assert pg(2).matrix.tolist() == [[0, 1, 1], [1, 0, 1]]
    assert pg(3).n == 7 and pg(3).rank == 3
    with pytest.raises(ValueError):
        pg(0)


def test_pg2_spaces():
    assert cycle_space(pg(2)) == PointSet.from_strings(["000", "111"])
    assert cocycle_space(pg(2)) == PointSet.from_strings(["000", "011", "101", "110"])


def test_cycle_cocycle_orthogonal():
    m = pg(3)
    for p in cycle_space(m).points:
        for r in cocycle_space(m).points:
            assert sum(a * b for a, b in zip(p, r)) % 2 == 0


def test_gf2_rank_and_nullspace():
    A = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    assert gf2_rank(A) == 2
    ns = gf2_nullspace(A)
    assert ns.shape[0] == 1
    assert not np.any(A @ ns.T % 2)


def test_matroid_validation():
    with pytest.raises(ValueError):
        BinaryMatroid(np.array([[2]]))


def test_binary_clutters():
    assert is_binary_clutter(q6())
    assert is_binary_clutter(l7())
    assert not is_binary_clutter(q())
    assert not is_binary_clutter(delta(3))  # triangle: the three edges cancel
    assert not is_binary_clutter(delta(4))
    assert not is_binary_clutter(odd_hole(5))
    with pytest.raises(ValueError):
        is_binary_clutter(Clutter([1], []))


def test_affine_spaces():
    assert is_affine_binary_space(PointSet.from_strings(["100", "010", "001", "111"]))
    assert is_binary_space(PointSet.from_strings(["000", "110"]))
    assert not is_binary_space(PointSet.from_strings(["100", "010"]))
    assert not is_affine_binary_space(PointSet.from_strings(["000", "100", "110"]))


@given(point_sets(max_dim=5))
@settings(max_examples=200, deadline=None)
def test_affine_space_iff_binary_cuboid(s):
    assert is_affine_binary_space(s) == is_binary_clutter(cuboid(s))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_pg_cocycle_weights_and_size(k):
    s = cocycle_space(pg(k))
    assert len(s) == 1 << k
    assert {sum(p) for p in s.points if any(p)} == {1 << (k - 1)}


@pytest.mark.parametrize("k", [2, 3, 4])
def test_pg_properties(k):
    rep = pg_properties_check(k)
    assert rep.ok
    assert rep.cocycle_weights == [0, 1 << (k - 1)]


def test_triangle_decomposition_fano():
    m = pg(3)
    tris = triangle_decomposition(m, 0b1111000)
    acc = 0
    for t in tris:
        acc ^= sum(1 << i for i in t)
    assert acc == 0b1111000


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_pg_simplex(k):
    rep = pg_simplex_check(k)
    assert rep.ok
    assert rep.packing == (Fraction(1, 1 << (k - 1)),) * (1 << k)


def test_pg_simplex_guard():
    with pytest.raises(GuardError):
        pg_simplex_check(5)


@pytest.mark.parametrize("k", [2, 3])
def test_pg_recursive(k):
    assert all(w.ok for w in pg_recursive_decompose(k))
    assert pg_minor_check(k)


def test_is_pg_cocycle():
    assert is_pg_cocycle(cocycle_space(pg(3))) == 3
    assert is_pg_cocycle(PointSet.from_strings(["000", "110", "101", "011"])) == 2
    assert is_pg_cocycle(SQUARE) is None


def test_matrix_format_roundtrip():
    A = pg(3).matrix
    assert np.array_equal(loads_matrix(dumps_matrix(A)), A)
    with pytest.raises(ValueError):
        loads_matrix("1 2\n")
