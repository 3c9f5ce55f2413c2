"""The eleven acceptance checks, one test each.

Each test runs the corresponding criterion from houghton.suite at full
scale, prints a single PASS/FAIL line, and enforces the time budget.
"""

import time

import pytest

from houghton import suite

_BY_NAME = {name: (fn, budget) for name, fn, budget, _ in suite.CRITERIA}


def _run(name):
    fn, budget = _BY_NAME[name]
    start = time.monotonic()
    ok, detail = fn()
    elapsed = time.monotonic() - start
    print(
        "%s criterion %s: %s (%.1fs, budget %.0fs)"
        % ("PASS" if ok else "FAIL", name, detail, elapsed, budget)
    )
    assert ok, detail
    assert elapsed < budget, "criterion %s took %.1fs (budget %.0fs)" % (
        name,
        elapsed,
        budget,
    )


def test_criterion_01_gcd_grid():
    _run("1 gcd criterion grid")


def test_criterion_02_oracle_cross_check():
    _run("2 oracle cross-check")


def test_criterion_03_finite_alt_closures():
    _run("3 finite Alt closures")


def test_criterion_04_two_generator_identities():
    _run("4 two-generator identities")


def test_criterion_05_three_cycle_with_translations():
    _run("5 (1 2 3) with t and t^2")


def test_criterion_06_shared_partners():
    _run("6 shared partners")


def test_criterion_07_pair_partners():
    _run("7 pair partners")


def test_criterion_08_spread_zero_witnesses():
    _run("8 spread-zero witnesses")


def test_criterion_09_ten_cycle_defeats():
    _run("9 ten-cycle defeats")


def test_criterion_10_dominating_set_refutations():
    _run("10 dominating-set refutations")


def test_criterion_11_mutation_soundness():
    _run("11 mutation soundness")
