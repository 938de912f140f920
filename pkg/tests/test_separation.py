"""Disjointness certificates and separating functionals.

Each verdict is re-derived in the test body from the returned numbers:
bounds are recomputed as exact dot products over the vertex lists, gaps
are compared as rationals, and sign conditions are checked generator by
generator.
"""

import random
from fractions import Fraction as F

import pytest

from conedom.cones import Cone
from conedom.instances import (
    rand_bounded_disjoint_pair,
    rand_disjoint_pair,
    rand_pointed_cone,
)
from conedom.linalg import hull_membership, vdot
from conedom.separation import (
    hulls_disjoint,
    proper_separator,
    separator_sign_check,
    strict_separator,
)
from conedom.sets import (
    ChainSet,
    DecomposableSet,
    FinitePointSet,
    Polyhedron,
    materialize,
    poly_contains,
    upward_hull,
)

ORTHANT = Cone.build(2, [[1, 0], [0, 1]], True)


def assert_disjoint_certificate(x, y, res):
    pts = materialize(y).points if isinstance(y, DecomposableSet) else y.points
    f = res.functional
    assert all(vdot(f, v) <= res.x_bound for v in x.vertices.points)
    assert all(vdot(f, r) <= 0 for r in x.rays)
    assert all(vdot(f, p) >= res.y_bound for p in pts)
    assert res.x_bound < res.y_bound


class TestHullsDisjoint:
    def test_disjoint_with_certificate(self):
        x = Polyhedron.build([(3, 3)], [(1, 0), (0, 1)])
        y = FinitePointSet.build([(0, 0), (1, 0), (0, 1)])
        res = hulls_disjoint(x, y)
        assert res.disjoint
        assert_disjoint_certificate(x, y, res)

    def test_overlap_returns_a_common_point(self):
        x = Polyhedron.build([(0, 0)], [(1, 0), (0, 1)])
        y = FinitePointSet.build([(1, 1), (2, 2)])
        res = hulls_disjoint(x, y)
        assert not res.disjoint
        assert poly_contains(x, res.common_point)
        assert hull_membership(res.common_point, y.points).member

    def test_decomposable_second_set(self):
        x = Polyhedron.build([(10, 10)], [(1, 0), (0, 1)])
        c1 = ChainSet.build([(0, 0), (1, 1)], ORTHANT)
        c2 = ChainSet.build([(0, 0), (2, 3)], ORTHANT)
        y = DecomposableSet((c1, c2))
        res = hulls_disjoint(x, y)
        assert res.disjoint
        assert_disjoint_certificate(x, y, res)

    def test_touching_sets_are_not_disjoint(self):
        x = Polyhedron.build([(1, 1)], [(1, 0), (0, 1)])
        y = FinitePointSet.build([(0, 0), (2, 2)])
        res = hulls_disjoint(x, y)
        assert not res.disjoint
        assert res.common_point is not None

    def test_dimension_mismatch(self):
        x = Polyhedron.build([(0, 0)])
        y = FinitePointSet.build([(1, 1, 1)])
        with pytest.raises(ValueError):
            hulls_disjoint(x, y)

    def test_random_constructed_pairs_verify(self):
        rng = random.Random(211)
        for _ in range(25):
            x, y, _draw = rand_disjoint_pair(rng, 2, 3, 2, 4)
            res = hulls_disjoint(x, y)
            assert res.disjoint
            assert_disjoint_certificate(x, y, res)


class TestStrictSeparator:
    def test_integer_functional_with_unit_gap(self):
        x = Polyhedron.build([(3, 3)], [(1, 0), (0, 1)])
        y = Polyhedron.build([(0, 0), (1, 0)])
        res = strict_separator(x, y)
        f = res.functional
        assert all(c.denominator == 1 for c in f)
        assert any(c != 0 for c in f)
        assert max(vdot(f, v) for v in x.vertices.points) == res.sup_x
        assert min(vdot(f, w) for w in y.vertices.points) == res.inf_y
        assert all(vdot(f, r) <= 0 for r in x.rays)
        assert res.inf_y - res.sup_x >= 1
        assert res.kind == "strictly_separated"
        assert separator_sign_check(f, ORTHANT)

    def test_intersecting_sets_are_refused(self):
        x = Polyhedron.build([(0, 0)], [(1, 0), (0, 1)])
        y = Polyhedron.build([(1, 1)])
        with pytest.raises(ValueError, match="intersect"):
            strict_separator(x, y)

    def test_unbounded_second_set_is_refused(self):
        x = Polyhedron.build([(3, 3)])
        y = Polyhedron.build([(0, 0)], [(1, 0)])
        with pytest.raises(ValueError, match="bounded"):
            strict_separator(x, y)

    def test_random_pairs_always_separate(self):
        rng = random.Random(223)
        for _ in range(25):
            x, y, draw = rand_bounded_disjoint_pair(rng, rng.choice((2, 3)), 3, 4)
            res = strict_separator(x, y)
            f = res.functional
            assert all(c.denominator == 1 for c in f)
            assert res.inf_y - res.sup_x >= 1
            assert max(vdot(f, v) for v in x.vertices.points) == res.sup_x
            assert min(vdot(f, w) for w in y.vertices.points) == res.inf_y
            assert separator_sign_check(f, draw.cone)


class TestProperSeparator:
    def test_touching_at_the_boundary(self):
        # X is the orthant; Y reaches X only at the origin, a boundary
        # point, so weak separation with one strict pair must exist.
        x = upward_hull(FinitePointSet.build([(0, 0)]), ORTHANT)
        y = DecomposableSet((ChainSet.build([(-2, -2), (0, 0)], ORTHANT),))
        res = proper_separator(x, y, ORTHANT)
        assert res.kind == "properly_separated"
        f = res.functional
        pts = materialize(y).points
        assert res.sup_x == max(vdot(f, v) for v in x.vertices.points)
        assert res.inf_y == min(vdot(f, p) for p in pts)
        wx, wy = res.witness_pair
        assert vdot(f, wx) < vdot(f, wy)
        assert all(vdot(f, r) <= 0 for r in x.rays)

    def test_point_in_the_relative_interior_is_refused(self):
        x = upward_hull(FinitePointSet.build([(0, 0)]), ORTHANT)
        y = DecomposableSet((ChainSet.build([(1, 1)], ORTHANT),))
        with pytest.raises(ValueError, match="relative interior"):
            proper_separator(x, y, ORTHANT)

    def test_non_upward_first_set_is_refused(self):
        x = Polyhedron.build([(0, 0), (1, 1)])  # bounded, not upward
        y = DecomposableSet((ChainSet.build([(5, 5)], ORTHANT),))
        with pytest.raises(ValueError, match="upward"):
            proper_separator(x, y, ORTHANT)


class TestSeparatorSignCheck:
    def test_nonpositive_on_generators(self):
        assert separator_sign_check((F(-1), F(-1)), ORTHANT)
        assert separator_sign_check((F(0), F(-1)), ORTHANT)
        assert not separator_sign_check((F(1), F(-1)), ORTHANT)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            separator_sign_check((F(1),), ORTHANT)
