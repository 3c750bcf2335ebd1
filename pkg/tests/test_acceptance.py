"""Acceptance suite: one test per criterion.

Every check prints a ``[PASS]``/``[FAIL]`` line; the lines are also repeated
in the pytest terminal summary.  Run this file directly to see only the lines.
"""

import pytest

from syzlab import acceptance

RESULTS = []


def _record(res):
    RESULTS.append(res)
    print(res.line())
    return res


CHECKS = [
    (1, acceptance.check_1),
    (2, acceptance.check_2),
    (3, acceptance.check_3),
    (4, acceptance.check_4),
    (5, acceptance.check_5),
    (6, acceptance.check_6),
    (7, lambda: acceptance.check_7(seed=0, count=200)),
    (8, acceptance.check_8),
    (9, acceptance.check_9),
    (10, lambda: acceptance.check_10(seed=0, count=50)),
    (11, acceptance.check_11),
]


@pytest.mark.parametrize("number,check", CHECKS, ids=[f"criterion_{n}" for n, _ in CHECKS])
def test_criterion(number, check):
    res = _record(check())
    assert res.number == number
    assert res.ok, res.detail


def test_sharp_tables_values():
    res = acceptance.check_1()
    assert res.detail == {"tor": [1, 0, 1, 0, 1, 0, 1, 0], "ext": [0, 1, 0, 1, 0, 1, 0, 1]}


def test_koszul_scan_values():
    assert acceptance.check_4().detail["freeSummand"] == [True, True, True, True, False, False]


def test_betti_growth_values():
    d = acceptance.check_11().detail
    assert d["main"] == d["oracle"] == [1, 2, 4, 8, 16, 32, 64]


if __name__ == "__main__":
    for _, check in CHECKS:
        print(check().line())
