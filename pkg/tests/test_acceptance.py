"""Acceptance criteria; one PASS/FAIL line per criterion (run with ``-s`` to see them)."""
import pytest

from semifact.reproduce import CRITERIA, run_check


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number):
    result = run_check(number)
    print("\n" + result.line())
    assert result.passed, result.detail
