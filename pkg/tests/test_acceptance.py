"""Acceptance gate: every numbered criterion at its stated settings.

The battery runs once per session (several minutes of quadrature, search,
and Monte Carlo); each test then asserts one criterion's verdict so the
report shows one pass/fail line per criterion.
"""

import json

import pytest

from curvemax.acceptance import _CRITERIA, jsonable, run_all


@pytest.fixture(scope="module")
def battery():
    results = run_all(seed=0, quick=False)
    return {r.number: r for r in results}


@pytest.mark.parametrize("number, name",
                         [(num, name) for num, name, _ in _CRITERIA],
                         ids=[f"{num}-{name}" for num, name, _ in _CRITERIA])
def test_criterion(battery, number, name):
    result = battery[number]
    assert result.name == name
    assert result.passed, (
        f"criterion {number} ({name}) failed:\n"
        + json.dumps(jsonable(result.details), indent=2, sort_keys=True))


def test_battery_is_complete(battery):
    assert sorted(battery) == list(range(1, 10))
