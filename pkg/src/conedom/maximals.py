"""Finite relations, maximal elements, budget demand and lattice checks.

A relation is stored as a boolean matrix over a finite ground set:
related[i][j] says point i belongs to the upper set of point j. For total
preorders the maximal elements of a subset are exactly the points related
to every member of the subset; for arbitrary relations the definitional
test is used. Convexification replaces each upper set by its convex hull
and keeps the membership queries exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .cones import Comparability, Cone, relate
from .linalg import ZERO, Vec, frac, fvec, hull_membership, vadd, vdot, vscale
from .sets import FinitePointSet, is_antichain, is_grid_antichain_convex

Utility = Callable[[Vec], Fraction]


@dataclass(frozen=True)
class FiniteRelation:
    """Boolean matrix relation over a finite ground set."""

    ground: FinitePointSet
    related: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.ground)
        if len(self.related) != k or any(len(row) != k for row in self.related):
            raise ValueError("relation matrix shape does not match the ground set")

    def index(self, p: Vec) -> int:
        try:
            return self.ground.points.index(p)
        except ValueError:
            raise ValueError(f"point {p} is not in the ground set") from None

    def holds(self, p: Vec, q: Vec) -> bool:
        """p belongs to the upper set of q."""
        return self.related[self.index(p)][self.index(q)]

    def upper_set(self, q: Vec) -> tuple[Vec, ...]:
        col = self.index(q)
        return tuple(p for i, p in enumerate(self.ground.points) if self.related[i][col])


@dataclass(frozen=True)
class TotalPreorder(FiniteRelation):
    """Total transitive relation, optionally induced by a utility."""

    utility_values: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        super().__post_init__()
        k = len(self.ground)
        if self.utility_values is not None:
            # A matrix consistent with a utility ordering is automatically
            # total and transitive, so an O(k^2) consistency pass suffices.
            vals = self.utility_values
            if len(vals) != k:
                raise ValueError("utility value count does not match the ground set")
            for i in range(k):
                for j in range(k):
                    if self.related[i][j] != (vals[i] >= vals[j]):
                        raise ValueError("relation matrix disagrees with its utility")
            return
        for i in range(k):
            for j in range(k):
                if not (self.related[i][j] or self.related[j][i]):
                    raise ValueError("relation is not total")
                for t in range(k):
                    if self.related[i][j] and self.related[j][t] and not self.related[i][t]:
                        raise ValueError("relation is not transitive")

    @classmethod
    def from_utility(cls, ground: FinitePointSet, utility: Utility) -> "TotalPreorder":
        values = tuple(utility(p) for p in ground.points)
        related = tuple(
            tuple(values[i] >= values[j] for j in range(len(values))) for i in range(len(values))
        )
        return cls(ground, related, values)


def maximals(relation: FiniteRelation, subset: FinitePointSet) -> FinitePointSet:
    """Maximal elements of the subset under the relation.

    Definitionally m is maximal when every member of the subset that
    relates to m is related back by m. For a total preorder this reduces
    to m relating to every member.
    """
    idx = [relation.index(p) for p in subset.points]
    rel = relation.related
    keep = []
    if isinstance(relation, TotalPreorder):
        for i, p in zip(idx, subset.points):
            if all(rel[i][j] for j in idx):
                keep.append(p)
    else:
        for i, p in zip(idx, subset.points):
            if all(rel[i][j] for j in idx if rel[j][i]):
                keep.append(p)
    return FinitePointSet(tuple(keep))


def convexified_maximals(relation: TotalPreorder, subset: FinitePointSet) -> FinitePointSet:
    """Maximals after replacing each upper set with its convex hull.

    m survives iff it lies in the hull of every member's upper set; being
    related outright short-circuits the membership program. When the
    preorder carries utility values, members are screened against the
    highest levels first so non-survivors fail fast.
    """
    order = list(subset.points)
    if relation.utility_values is not None:
        order.sort(key=lambda s: relation.utility_values[relation.index(s)], reverse=True)
    keep = []
    for m in subset.points:
        mi = relation.index(m)
        ok = True
        for s in order:
            si = relation.index(s)
            if relation.related[mi][si]:
                continue
            upper = relation.upper_set(s)
            if not upper or not hull_membership(m, upper).member:
                ok = False
                break
        if ok:
            keep.append(m)
    return FinitePointSet(tuple(keep))


@dataclass(frozen=True)
class PriceSystem:
    """Strictly positive prices with nonnegative wealth."""

    price: Vec
    wealth: Fraction

    def __post_init__(self) -> None:
        if any(p <= 0 for p in self.price):
            raise ValueError("prices must be strictly positive")
        if self.wealth < 0:
            raise ValueError("wealth must be nonnegative")

    @classmethod
    def build(cls, price: Sequence[object], wealth: object) -> "PriceSystem":
        return cls(fvec(price), frac(wealth))


@dataclass(frozen=True)
class GridDomain:
    """Finite lattice: multiples of `step` inside the box, nonnegative orthant."""

    step: Fraction
    box: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        if self.step <= 0:
            raise ValueError("grid step must be positive")
        for lo, hi in self.box:
            if lo > hi:
                raise ValueError("box bounds are inverted")

    @classmethod
    def build(cls, step: object, box: Iterable[tuple[object, object]]) -> "GridDomain":
        return cls(frac(step), tuple((frac(lo), frac(hi)) for lo, hi in box))

    @property
    def dimension(self) -> int:
        return len(self.box)

    def axis_values(self, d: int) -> tuple[Fraction, ...]:
        lo, hi = self.box[d]
        lo = max(lo, ZERO)
        start = lo / self.step
        k = start.numerator // start.denominator
        if k * self.step < lo:
            k += 1
        out = []
        while k * self.step <= hi:
            out.append(k * self.step)
            k += 1
        return tuple(out)

    def points(self) -> FinitePointSet:
        axes = [self.axis_values(d) for d in range(self.dimension)]
        return FinitePointSet(tuple(itertools.product(*axes)))

    def __contains__(self, p: Vec) -> bool:
        if len(p) != self.dimension:
            return False
        for c, (lo, hi) in zip(p, self.box):
            if c < max(lo, ZERO) or c > hi or (c / self.step).denominator != 1:
                return False
        return True

    def upper_face(self, p: Vec) -> bool:
        return any(c + self.step > hi for c, (_, hi) in zip(p, self.box))


def ratio_utility(x: Vec) -> Fraction:
    """x1 * x2 / (x1 + 1) - 5 x1 + x2 on the nonnegative quadrant.

    Strictly increasing in x2 and eventually decreasing in x1; its level
    sets are orthant-antichain-convex although the function itself is not
    quasiconcave, which makes it the showcase input for the demand checks.
    """
    if len(x) != 2:
        raise ValueError("ratio utility is bivariate")
    x1, x2 = x
    if x1 < 0 or x2 < 0:
        raise ValueError("ratio utility requires nonnegative coordinates")
    return x1 * x2 / (x1 + 1) - 5 * x1 + x2


def linear_utility(x: Vec) -> Fraction:
    return sum(x, ZERO)


def min_utility(x: Vec) -> Fraction:
    return min(x)


UTILITIES: dict[str, Utility] = {
    "ratio": ratio_utility,
    "linear": linear_utility,
    "min": min_utility,
}


def budget_set(grid: GridDomain, prices: PriceSystem) -> FinitePointSet:
    """Grid points affordable at the prices: price . x <= wealth, exactly."""
    if len(prices.price) != grid.dimension:
        raise ValueError("price dimension does not match the grid")
    keep = tuple(p for p in grid.points() if vdot(prices.price, p) <= prices.wealth)
    return FinitePointSet(keep)


def demand(utility: Utility, grid: GridDomain, prices: PriceSystem) -> FinitePointSet:
    """Budget points with maximal utility; listed in lexicographic order."""
    budget = budget_set(grid, prices)
    if len(budget) == 0:
        return FinitePointSet(())
    values = {p: utility(p) for p in budget.points}
    best = max(values.values())
    return FinitePointSet(tuple(sorted(p for p, v in values.items() if v == best)))


@dataclass(frozen=True)
class NonsatiationReport:
    satisfied: bool
    violators: tuple[Vec, ...]
    exempt: tuple[Vec, ...]


def check_local_nonsatiation(utility: Utility, grid: GridDomain) -> NonsatiationReport:
    """One-step improvement must exist at every point off the upper faces.

    Points on an upper box face are exempt: their improving neighbors may
    be truncated by the box, so they are reported rather than failed.
    """
    violators = []
    exempt = []
    for p in grid.points():
        if grid.upper_face(p):
            exempt.append(p)
            continue
        up = utility(p)
        improved = False
        for d in range(grid.dimension):
            for delta in (grid.step, -grid.step):
                q = tuple(c + delta if i == d else c for i, c in enumerate(p))
                if q in grid and utility(q) > up:
                    improved = True
                    break
            if improved:
                break
        if not improved:
            violators.append(p)
    return NonsatiationReport(not violators, tuple(violators), tuple(exempt))


@dataclass(frozen=True)
class InvarianceReport:
    """Demand computed three ways on one budget set.

    `maximals_set` comes from the relation characterization,
    `convexified_set` from hull-valued upper sets; `equal` records their
    agreement. `nonsatiated` flags whether the one-step improvement
    hypothesis held on the grid (the verdict is reported either way).
    """

    budget: FinitePointSet
    maximals_set: FinitePointSet
    convexified_set: FinitePointSet
    equal: bool
    nonsatiated: bool


def check_convexification_invariance(
    utility: Utility, grid: GridDomain, prices: PriceSystem
) -> InvarianceReport:
    """Maximals versus convexified maximals of the utility preorder on a budget."""
    ground = grid.points()
    relation = TotalPreorder.from_utility(ground, utility)
    budget = budget_set(grid, prices)
    if len(budget) == 0:
        empty = FinitePointSet(())
        return InvarianceReport(empty, empty, empty, True, check_local_nonsatiation(utility, grid).satisfied)
    mset = maximals(relation, budget)
    cset = convexified_maximals(relation, budget)
    return InvarianceReport(
        budget=budget,
        maximals_set=mset,
        convexified_set=cset,
        equal=mset.sorted_points() == cset.sorted_points(),
        nonsatiated=check_local_nonsatiation(utility, grid).satisfied,
    )


@dataclass(frozen=True)
class BoundaryReport:
    on_boundary: bool
    antichain_orthant: bool
    antichain_cone: bool
    demand_set: FinitePointSet


def orthant_cone(dimension: int, contains_zero: bool = True) -> Cone:
    return Cone.build(
        dimension,
        [[1 if i == d else 0 for i in range(dimension)] for d in range(dimension)],
        contains_zero,
    )


def _require_aligned(grid: GridDomain, prices: PriceSystem) -> None:
    if not any(vdot(prices.price, p) == prices.wealth for p in grid.points()):
        raise ValueError("budget line misses the grid; pick aligned prices and wealth")


def check_boundary_and_antichain(
    utility: Utility, grid: GridDomain, prices: PriceSystem, cone: Cone
) -> BoundaryReport:
    """Demand points must spend the wealth exactly and form an antichain.

    The antichain verdict is taken under the full nonnegative orthant and
    under the supplied sub-cone, whose generators must be nonnegative.
    Refuses misaligned instances: some grid point must price out to the
    wealth exactly, otherwise the boundary claim is vacuous on the lattice.
    """
    _require_aligned(grid, prices)
    if any(c < 0 for g in cone.generators for c in g):
        raise ValueError("the supplied cone must sit inside the nonnegative orthant")
    dset = demand(utility, grid, prices)
    on_boundary = all(vdot(prices.price, p) == prices.wealth for p in dset.points)
    orthant = orthant_cone(grid.dimension)
    return BoundaryReport(
        on_boundary, is_antichain(dset, orthant), is_antichain(dset, cone), dset
    )


def check_maximizer_convexity(
    utility: Utility,
    grid: GridDomain,
    prices: PriceSystem,
    cone: Cone,
    denominator: int,
) -> bool:
    """Lattice surrogate of convexity for the demand set.

    The demand set must pass the grid antichain-convexity check and every
    grid point on a segment between two demand points must itself be a
    demand point.
    """
    _require_aligned(grid, prices)
    dset = demand(utility, grid, prices)
    if not is_grid_antichain_convex(dset, cone, denominator, step=grid.step):
        return False
    pts = dset.points
    member = set(pts)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for q in grid.points():
                if q in member:
                    continue
                if _on_segment(pts[i], pts[j], q):
                    return False
    return True


def _on_segment(a: Vec, b: Vec, q: Vec) -> bool:
    # q strictly between a and b on the segment: q = a + t (b - a), 0 < t < 1.
    diff = tuple(bi - ai for ai, bi in zip(a, b))
    t: Fraction | None = None
    for qa, d in zip((qi - ai for qi, ai in zip(q, a)), diff):
        if d == 0:
            if qa != 0:
                return False
        else:
            ratio = qa / d
            if t is None:
                t = ratio
            elif t != ratio:
                return False
    return t is not None and 0 < t < 1


@dataclass(frozen=True)
class QuasiconcavityReport:
    holds: bool
    violation: tuple[Vec, Vec, Fraction] | None  # (x, y, weight) with u at the mix below both


_MIX_WEIGHTS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4))


def check_antichain_quasiconcavity(
    utility: Utility,
    grid: GridDomain,
    cone: Cone,
    samples: int,
    rng,
) -> QuasiconcavityReport:
    """Sampled level-set convexity along cone-incomparable directions.

    Draws pairs of grid points, keeps the cone-incomparable ones, and
    evaluates the utility exactly at fixed rational mixes of each pair;
    a mix valued strictly below both endpoints is a violation. With a
    trivial cone every distinct pair is incomparable and the check becomes
    plain quasiconcavity sampling.
    """
    pts = grid.points().points
    if len(pts) < 2:
        return QuasiconcavityReport(True, None)
    checked = 0
    guard = 0
    limit = samples * 50
    while checked < samples and guard < limit:
        guard += 1
        x = pts[rng.randrange(len(pts))]
        y = pts[rng.randrange(len(pts))]
        if x == y or relate(cone, x, y) is not Comparability.INCOMPARABLE:
            continue
        checked += 1
        floor = min(utility(x), utility(y))
        for lam in _MIX_WEIGHTS:
            z = vadd(vscale(lam, x), vscale(1 - lam, y))
            if utility(z) < floor:
                return QuasiconcavityReport(False, (x, y, lam))
    return QuasiconcavityReport(True, None)


def find_quasiconcavity_violation(
    utility: Utility, grid: GridDomain
) -> tuple[Vec, Vec, Fraction] | None:
    """Deterministic exhaustive search for a plain-quasiconcavity violation."""
    pts = grid.points().points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            x, y = pts[i], pts[j]
            floor = min(utility(x), utility(y))
            for lam in _MIX_WEIGHTS:
                z = vadd(vscale(lam, x), vscale(1 - lam, y))
                if utility(z) < floor:
                    return (x, y, lam)
    return None
