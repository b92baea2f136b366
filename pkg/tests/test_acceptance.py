"""Acceptance gate: the eight primary criteria at their stated tolerances.

Each test prints one PASS/FAIL line, shown even when output is captured.
"""

import pytest

from mrsections.suite import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [k for k, *_ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    if result.limit is not None:
        assert result.seconds < result.limit, result.details
    assert result.passed, result.details
