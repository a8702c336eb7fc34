"""Acceptance gate: the twelve criteria, one PASS/FAIL line each."""

import pytest

from shankslift.reproduce import CRITERIA, run_criterion

_results = {}


@pytest.fixture(scope="module", autouse=True)
def summary():
    yield
    print("\n==== acceptance summary ====")
    for k in sorted(_results):
        print(_results[k].line())


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    outcome = run_criterion(k)
    _results[k] = outcome
    with capsys.disabled():
        print("\n" + outcome.line())
    assert outcome.passed, outcome.detail
