"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from genusone.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.detail
    assert result.seconds < 10
