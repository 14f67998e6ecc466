"""The eight acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import pytest

from pathqueries import acceptance


@pytest.fixture
def report(capsys):
    def emit(result):
        with capsys.disabled():
            print("\n" + result.line())
        return result
    return emit


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda c: c.__name__)
def test_acceptance(criterion, report):
    result = report(criterion())
    assert result.passed, result.detail
