"""Acceptance criteria, one test per numbered criterion.

Each test prints the same one-line pass/fail summary that
``psifrac selftest`` emits, then asserts the criterion.  Criteria are
computed once per session; the final criterion aggregates the other nine
plus the wall-time budget.
"""

import time

import pytest

from psifrac.selftest import CRITERIA, CriterionResult, _timed


@pytest.fixture(scope="session")
def results():
    out = {}
    t0 = time.perf_counter()
    for index, name, fn in CRITERIA:
        out[index] = _timed(index, name, fn)
    total = time.perf_counter() - t0
    all_pass = all(r.passed for r in out.values())
    out[10] = CriterionResult(
        10,
        "selftest wall time and overall status",
        all_pass and total < 120.0,
        f"{sum(1 for r in out.values() if r.passed)}/9 criteria passed "
        f"in {total:.1f}s (needs 9/9 and < 120s)",
        total,
    )
    return out


def _check(results, index):
    res = results[index]
    print(res.line())
    assert res.passed, res.line()


def test_criterion_01_power_rule(results):
    _check(results, 1)


def test_criterion_02_backend_agreement(results):
    _check(results, 2)


def test_criterion_03_leibniz_convergence(results):
    _check(results, 3)


def test_criterion_04_classical_reduction(results):
    _check(results, 4)


def test_criterion_05_mu_law(results):
    _check(results, 5)


def test_criterion_06_omega_law(results):
    _check(results, 6)


def test_criterion_07_burgers_table(results):
    # Expected to fail honestly: two published table rows carry constant
    # u-shifts that a Riemann-Liouville style operator does not annihilate
    # (see the per-row tests in test_symmetry.py for the exact residuals).
    _check(results, 7)


def test_criterion_08_diffusion_tables(results):
    _check(results, 8)


def test_criterion_09_method_agreement(results):
    _check(results, 9)


def test_criterion_10_selftest_green_under_budget(results):
    # Aggregates criteria 1-9; red while criterion 7 is red.
    _check(results, 10)
