"""Acceptance gate: eight verification families at full scale, zero tolerance.

Each criterion below runs one randomized (or pinned) family at its full
instance count with a fixed seed, asserts a perfect pass rate with exact
arithmetic, and enforces the per-criterion wall-clock budget.  A one-line
verdict per criterion is appended to the terminal summary.

The whole gate is reproducible from the command line:

    conedom suite --seed 20260814
"""

import json
import pathlib
import time
from fractions import Fraction as F

from conedom.linalg import vdot
from conedom.maximals import (
    UTILITIES,
    GridDomain,
    PriceSystem,
    budget_set,
    demand,
)
from conedom.suite import DEFAULT_COUNTS, FAMILIES, QUASI_VIOLATION

ACCEPTANCE_SEED = 20260814

BUDGET_SECONDS = {1: 60, 2: 60, 3: 60, 4: 30, 5: 30, 6: 30, 7: 60, 8: 30}

CORPUS_PATH = pathlib.Path(__file__).parent / "data" / "invariance_corpus.json"


def run_criterion(criterion: int, log: list):
    family = FAMILIES[criterion]
    budget = BUDGET_SECONDS[criterion]
    start = time.perf_counter()
    report = family(ACCEPTANCE_SEED * 1000 + criterion, DEFAULT_COUNTS[criterion])
    elapsed = time.perf_counter() - start
    verdict = "PASS" if report.passed() and elapsed < budget else "FAIL"
    log.append(
        f"criterion {criterion} [{verdict}] {report.label}: "
        f"{report.passes}/{report.instances} checks, {elapsed:.2f}s (budget {budget}s)"
    )
    assert report.passed(), f"criterion {criterion} failures: {report.failures}"
    assert elapsed < budget, f"criterion {criterion} ran {elapsed:.2f}s, budget {budget}s"
    return report


def test_criterion_1_dominating_element_on_decomposable_sets(acceptance_log):
    run_criterion(1, acceptance_log)


def test_criterion_2_optima_equivalences_on_pointed_cones(acceptance_log):
    run_criterion(2, acceptance_log)


def test_criterion_3_disjoint_hull_certificates(acceptance_log):
    run_criterion(3, acceptance_log)


def test_criterion_4_strict_separators_with_unit_gap(acceptance_log):
    run_criterion(4, acceptance_log)


def test_criterion_5_relative_interior_closed_under_cone_steps(acceptance_log):
    run_criterion(5, acceptance_log)


def test_criterion_6_budget_demand_and_convexification_invariance(acceptance_log):
    report = run_criterion(6, acceptance_log)

    # Showcase instance: unit grid on [0,4]^2, prices (1,1), wealth 2.
    assert report.details["showcase_demand"] == [["0", "2"]]
    assert vdot((F(1), F(1)), (F(0), F(2))) == F(2)  # spends wealth exactly

    # The pinned corpus must match a live recomputation, demand set by
    # demand set, with exact rational arithmetic.
    fixture = json.loads(CORPUS_PATH.read_text())
    assert len(fixture["instances"]) == 50
    assert report.details["corpus_rejected_draws"] == fixture["rejected_draws"]
    for entry in fixture["instances"]:
        high = F(entry["box_high"])
        grid = GridDomain(F(entry["step"]), ((F(0), high), (F(0), high)))
        prices = PriceSystem(tuple(F(c) for c in entry["price"]), F(entry["wealth"]))
        utility = UTILITIES[entry["utility"]]
        live = [[str(c) for c in p] for p in demand(utility, grid, prices).sorted_points()]
        assert live == entry["expected_demand"], entry
        assert len(budget_set(grid, prices).points) == entry["budget_size"], entry


def test_criterion_7_antichain_quasiconcavity_contrast(acceptance_log):
    report = run_criterion(7, acceptance_log)
    assert "found_violation" in report.details

    # The stored regression triple really violates plain quasiconcavity.
    x, y, lam = QUASI_VIOLATION
    ratio = UTILITIES["ratio"]
    mix = tuple(lam * a + (1 - lam) * b for a, b in zip(x, y))
    assert ratio(mix) < min(ratio(x), ratio(y))


def test_criterion_8_structural_laws(acceptance_log):
    run_criterion(8, acceptance_log)
