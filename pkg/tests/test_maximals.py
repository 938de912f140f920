"""Relations, preorders, grid demand, and the convexification checks.

Frozen utility values are recomputed in comments; every demand or
maximal-set expectation is either derived by an inline brute-force
enumeration or written out as a one-line hand computation.
"""

import random
from fractions import Fraction as F

import pytest

from conedom.cones import Cone
from conedom.linalg import ZERO, vdot
from conedom.maximals import (
    FiniteRelation,
    GridDomain,
    PriceSystem,
    TotalPreorder,
    UTILITIES,
    budget_set,
    check_antichain_quasiconcavity,
    check_boundary_and_antichain,
    check_convexification_invariance,
    check_local_nonsatiation,
    check_maximizer_convexity,
    convexified_maximals,
    demand,
    find_quasiconcavity_violation,
    linear_utility,
    maximals,
    min_utility,
    orthant_cone,
    ratio_utility,
)
from conedom.sets import FinitePointSet


def unit_grid(high: int) -> GridDomain:
    return GridDomain(F(1), ((F(0), F(high)), (F(0), F(high))))


class TestRelations:
    def test_holds_and_upper_set(self):
        ground = FinitePointSet.build([(0,), (1,)])
        rel = FiniteRelation(ground, ((True, False), (True, True)))
        assert rel.holds((F(1),), (F(0),))
        assert not rel.holds((F(0),), (F(1),))
        assert rel.upper_set((F(0),)) == ((F(0),), (F(1),))

    def test_unknown_point_raises(self):
        ground = FinitePointSet.build([(0,)])
        rel = FiniteRelation(ground, ((True,),))
        with pytest.raises(ValueError):
            rel.index((F(5),))

    def test_total_preorder_rejects_a_partial_matrix(self):
        ground = FinitePointSet.build([(0,), (1,)])
        with pytest.raises(ValueError, match="total"):
            TotalPreorder(ground, ((True, False), (False, True)))

    def test_total_preorder_rejects_an_intransitive_matrix(self):
        ground = FinitePointSet.build([(0,), (1,), (2,)])
        # 0 >= 1, 1 >= 2, but not 0 >= 2 (and 2 >= 0 to keep it total).
        related = (
            (True, True, False),
            (False, True, True),
            (True, False, True),
        )
        with pytest.raises(ValueError, match="transitive"):
            TotalPreorder(ground, related)

    def test_utility_matrix_consistency_is_enforced(self):
        ground = FinitePointSet.build([(0,), (1,)])
        with pytest.raises(ValueError, match="utility"):
            TotalPreorder(
                ground,
                ((True, True), (False, True)),
                utility_values=(F(0), F(1)),  # says 1 is better; matrix disagrees
            )

    def test_from_utility_matches_value_comparison(self):
        ground = FinitePointSet.build([(0,), (1,), (2,)])
        values = {(F(0),): F(5), (F(1),): F(5), (F(2),): F(1)}
        pre = TotalPreorder.from_utility(ground, values.__getitem__)
        assert pre.holds((F(0),), (F(1),)) and pre.holds((F(1),), (F(0),))
        assert pre.holds((F(0),), (F(2),)) and not pre.holds((F(2),), (F(0),))


class TestMaximals:
    def test_top_level_of_a_preorder(self):
        ground = FinitePointSet.build([(0,), (1,), (2,)])
        values = {(F(0),): F(1), (F(1),): F(0), (F(2),): F(1)}
        pre = TotalPreorder.from_utility(ground, values.__getitem__)
        assert maximals(pre, ground).sorted_points() == ((F(0),), (F(2),))

    def test_preorder_rule_matches_the_raw_definition(self):
        rng = random.Random(41)
        for _ in range(30):
            pts = FinitePointSet.build(
                [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(6)]
            )
            pool = [F(k) for k in range(4)]
            values = {p: rng.choice(pool) for p in pts.points}
            pre = TotalPreorder.from_utility(pts, values.__getitem__)
            raw = FiniteRelation(pts, pre.related)
            subset = FinitePointSet(
                tuple(p for p in pts.points if rng.random() < 0.7) or pts.points[:1]
            )
            assert (
                maximals(pre, subset).sorted_points()
                == maximals(raw, subset).sorted_points()
            )

    def test_convexification_can_add_hull_points(self):
        # Upper set at the top level is {0, 2}; its hull contains 1, so the
        # convexified relation makes 1 equivalent to the top.
        ground = FinitePointSet.build([(0,), (1,), (2,)])
        values = {(F(0),): F(1), (F(1),): F(0), (F(2),): F(1)}
        pre = TotalPreorder.from_utility(ground, values.__getitem__)
        assert convexified_maximals(pre, ground).sorted_points() == (
            (F(0),),
            (F(1),),
            (F(2),),
        )

    def test_maximals_always_survive_convexification(self):
        rng = random.Random(43)
        for _ in range(20):
            pts = FinitePointSet.build(
                [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(6)]
            )
            pool = [F(k) for k in range(3)]
            values = {p: rng.choice(pool) for p in pts.points}
            pre = TotalPreorder.from_utility(pts, values.__getitem__)
            assert set(maximals(pre, pts).points) <= set(
                convexified_maximals(pre, pts).points
            )


class TestGridDomain:
    def test_points_and_membership(self):
        grid = GridDomain(F(1, 2), ((F(0), F(1)), (F(0), F(1))))
        assert len(grid.points()) == 9
        assert (F(1, 2), F(1)) in grid
        assert (F(1, 3), F(0)) not in grid  # off the lattice
        assert (F(2), F(0)) not in grid  # outside the box

    def test_axis_values(self):
        grid = GridDomain(F(1), ((F(0), F(2)), (F(0), F(1))))
        assert grid.axis_values(0) == (F(0), F(1), F(2))
        assert grid.axis_values(1) == (F(0), F(1))

    def test_upper_face(self):
        grid = unit_grid(2)
        assert grid.upper_face((F(2), F(0)))
        assert grid.upper_face((F(1), F(2)))
        assert not grid.upper_face((F(1), F(1)))

    def test_invalid_step_rejected(self):
        with pytest.raises(ValueError):
            GridDomain(F(0), ((F(0), F(1)),))


class TestUtilities:
    def test_ratio_utility_frozen_values(self):
        # u(x1,x2) = x1*x2/(x1+1) - 5*x1 + x2.
        assert ratio_utility((F(0), F(2))) == 2  # 0 - 0 + 2
        assert ratio_utility((F(0), F(0))) == 0
        assert ratio_utility((F(1), F(1))) == F(-7, 2)  # 1/2 - 5 + 1
        assert ratio_utility((F(4), F(12))) == F(8, 5)  # 48/5 - 20 + 12

    def test_ratio_utility_rejects_negative_and_wrong_arity(self):
        with pytest.raises(ValueError):
            ratio_utility((F(-1), F(0)))
        with pytest.raises(ValueError):
            ratio_utility((F(1), F(1), F(1)))

    def test_linear_and_min(self):
        assert linear_utility((F(2), F(3))) == 5
        assert min_utility((F(2), F(3))) == 2

    def test_registry_names(self):
        assert sorted(UTILITIES) == ["linear", "min", "ratio"]


class TestBudgetAndDemand:
    def test_budget_enumeration(self):
        # p=(1,1), w=2 on the unit grid keeps exactly the six points with
        # coordinate sum at most two.
        grid = unit_grid(4)
        price = PriceSystem.build((1, 1), 2)
        expected = {
            (F(0), F(0)), (F(0), F(1)), (F(0), F(2)),
            (F(1), F(0)), (F(1), F(1)), (F(2), F(0)),
        }
        assert set(budget_set(grid, price).points) == expected

    def test_price_system_validation(self):
        with pytest.raises(ValueError):
            PriceSystem.build((0, 1), 2)  # prices must be strictly positive
        with pytest.raises(ValueError):
            PriceSystem.build((1, 1), -1)  # wealth must be nonnegative

    def test_showcase_demand_is_the_corner(self):
        # Values over the six budget points: (0,0)->0, (0,1)->1, (0,2)->2,
        # (1,0)->-5, (1,1)->-7/2, (2,0)->-10. Unique best: (0,2).
        grid = unit_grid(4)
        price = PriceSystem.build((1, 1), 2)
        assert demand(ratio_utility, grid, price).sorted_points() == ((F(0), F(2)),)

    def test_tied_demand_keeps_all_argmaxes(self):
        grid = unit_grid(2)
        price = PriceSystem.build((1, 1), 2)
        assert demand(linear_utility, grid, price).sorted_points() == (
            (F(0), F(2)),
            (F(1), F(1)),
            (F(2), F(0)),
        )

    def test_demand_against_brute_force(self):
        rng = random.Random(47)
        for _ in range(15):
            grid = unit_grid(rng.randint(2, 4))
            price = PriceSystem.build(
                (rng.randint(1, 3), rng.randint(1, 3)), rng.randint(1, 6)
            )
            name = rng.choice(sorted(UTILITIES))
            utility = UTILITIES[name]
            feasible = [
                p
                for p in grid.points()
                if vdot(price.price, p) <= price.wealth
            ]
            best = max(utility(p) for p in feasible)
            expected = sorted(p for p in feasible if utility(p) == best)
            assert list(demand(utility, grid, price).sorted_points()) == expected


class TestNonsatiation:
    def test_ratio_utility_improves_off_the_upper_faces(self):
        # Raising the second coordinate always helps: the increment is
        # x1/(x1+1) + 1 > 0 per unit step.
        rep = check_local_nonsatiation(ratio_utility, unit_grid(3))
        assert rep.satisfied
        assert rep.violators == ()

    def test_min_utility_stalls_on_the_diagonal(self):
        # At (0,0) and (1,1) no single-coordinate step raises min(x1,x2).
        rep = check_local_nonsatiation(min_utility, unit_grid(2))
        assert not rep.satisfied
        assert sorted(rep.violators) == [(F(0), F(0)), (F(1), F(1))]
        assert (F(2), F(2)) in rep.exempt  # upper corner is exempt, not failed


class TestConvexificationInvariance:
    def test_showcase_instance(self):
        grid = unit_grid(4)
        price = PriceSystem.build((1, 1), 2)
        rep = check_convexification_invariance(ratio_utility, grid, price)
        assert rep.equal
        assert rep.nonsatiated
        assert rep.maximals_set.sorted_points() == ((F(0), F(2)),)
        assert rep.convexified_set.sorted_points() == ((F(0), F(2)),)
        assert len(rep.budget) == 6

    def test_linear_ties_survive_convexification(self):
        grid = unit_grid(2)
        price = PriceSystem.build((1, 1), 2)
        rep = check_convexification_invariance(linear_utility, grid, price)
        assert rep.equal
        assert len(rep.maximals_set) == 3


class TestBoundaryAndAntichain:
    def test_showcase_report(self):
        grid = unit_grid(4)
        price = PriceSystem.build((1, 1), 2)
        rep = check_boundary_and_antichain(ratio_utility, grid, price, orthant_cone(2))
        assert rep.on_boundary  # 1*0 + 1*2 == 2 == wealth exactly
        assert rep.antichain_orthant
        assert rep.antichain_cone
        assert rep.demand_set.sorted_points() == ((F(0), F(2)),)

    def test_misaligned_wealth_is_refused(self):
        grid = unit_grid(2)
        price = PriceSystem.build((2, 2), 1)  # no grid point satisfies 2x+2y=1
        with pytest.raises(ValueError, match="misses the grid"):
            check_boundary_and_antichain(ratio_utility, grid, price, orthant_cone(2))

    def test_cone_outside_the_orthant_is_refused(self):
        grid = unit_grid(2)
        price = PriceSystem.build((1, 1), 2)
        skew = Cone.build(2, [[1, -1]], True)
        with pytest.raises(ValueError, match="orthant"):
            check_boundary_and_antichain(ratio_utility, grid, price, skew)


class TestMaximizerConvexity:
    def test_showcase_singleton_passes(self):
        grid = unit_grid(4)
        price = PriceSystem.build((1, 1), 2)
        assert check_maximizer_convexity(ratio_utility, grid, price, orthant_cone(2), 2)

    def test_tied_linear_demand_passes(self):
        # Demand {(0,2),(1,1),(2,0)} contains the whole lattice segment.
        grid = unit_grid(2)
        price = PriceSystem.build((1, 1), 2)
        assert check_maximizer_convexity(linear_utility, grid, price, orthant_cone(2), 2)

    def test_bimodal_utility_fails(self):
        # (x1-x2)^2 peaks at both corners; the lattice midpoint (1,1) is
        # feasible but not demanded, so the surrogate must fail.
        def spread(x):
            return (x[0] - x[1]) ** 2

        grid = unit_grid(2)
        price = PriceSystem.build((1, 1), 2)
        assert demand(spread, grid, price).sorted_points() == (
            (F(0), F(2)),
            (F(2), F(0)),
        )
        assert not check_maximizer_convexity(spread, grid, price, orthant_cone(2), 2)


class TestQuasiconcavity:
    def test_incomparable_sampling_holds_on_the_orthant(self):
        grid = GridDomain(F(1, 2), ((F(0), F(4)), (F(0), F(4))))
        rep = check_antichain_quasiconcavity(
            ratio_utility, grid, orthant_cone(2), 300, random.Random(1)
        )
        assert rep.holds and rep.violation is None

    def test_trivial_cone_sampling_finds_a_violation(self):
        # With no generators every distinct pair is incomparable, so the
        # same sampler performs plain quasiconcavity checking, and the
        # utility is not plainly quasiconcave on this box.
        trivial = Cone(2, (), True)
        grid = GridDomain(F(1), ((F(0), F(4)), (F(0), F(12))))
        rep = check_antichain_quasiconcavity(
            ratio_utility, grid, trivial, 200, random.Random(0)
        )
        assert not rep.holds
        x, y, lam = rep.violation
        mixed = tuple(lam * a + (1 - lam) * b for a, b in zip(x, y))
        assert ratio_utility(mixed) < min(ratio_utility(x), ratio_utility(y))

    def test_exhaustive_search_fixture(self):
        # Frozen violating triple: u(0,1)=1, u(4,12)=8/5, and the midpoint
        # (2,13/2) evaluates to 13/3 - 10 + 13/2 = 5/6 < 1.
        grid = GridDomain(F(1), ((F(0), F(4)), (F(0), F(12))))
        found = find_quasiconcavity_violation(ratio_utility, grid)
        assert found is not None
        x, y, lam = found
        mixed = tuple(lam * a + (1 - lam) * b for a, b in zip(x, y))
        assert ratio_utility(mixed) < min(ratio_utility(x), ratio_utility(y))
        fixture = ((F(0), F(1)), (F(4), F(12)), F(1, 2))
        fx, fy, flam = fixture
        fmix = tuple(flam * a + (1 - flam) * b for a, b in zip(fx, fy))
        assert ratio_utility(fmix) == F(5, 6)
        assert ratio_utility(fmix) < min(ratio_utility(fx), ratio_utility(fy))

    def test_min_utility_is_quasiconcave_on_samples(self):
        grid = unit_grid(4)
        rep = check_antichain_quasiconcavity(
            min_utility, grid, Cone(2, (), True), 300, random.Random(3)
        )
        assert rep.holds
