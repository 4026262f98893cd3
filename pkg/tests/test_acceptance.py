"""One test per acceptance criterion; each prints its pass/fail line."""

import pytest

from iwahori import verify


@pytest.mark.parametrize("check", verify.CHECKS, ids=lambda fn: fn.__name__.removeprefix("check_"))
def test_criterion(check, capsys):
    result = verify.run_check(check)
    with capsys.disabled():
        print(f"\n{result.line()}")
    assert result.passed, result.failures[:5]


def test_report_deterministic():
    a = verify.run_check(verify.check_exact_sequence, seed=7).line()
    b = verify.run_check(verify.check_exact_sequence, seed=7).line()
    assert a == b
