"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline
(they are also shown in the terminal summary via ``capsys.disabled``).
"""

import pytest

from painleve_nodal import verify


@pytest.mark.parametrize("check", verify.CHECKS, ids=lambda f: f.__name__.removeprefix("check_"))
def test_criterion(check, capsys):
    try:
        res = check(verify.DEFAULT_SEED)
    except Exception as exc:
        n = verify.CHECKS.index(check) + 1
        res = verify.CheckResult(n, check.__name__, False, f"raised {type(exc).__name__}: {exc}")
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail


def test_criteria_numbering_is_complete():
    assert len(verify.CHECKS) == 13
