"""Acceptance criteria 1-8, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL] criterion N`` line straight to
the terminal, whether or not output capture is on.
"""

import pytest

from lamreg.verify import CRITERIA

# minimum number of individual checks each battery must perform, so that a
# battery silently shrinking to nothing cannot pass
MIN_CHECKS = {
    1: 2 * 511,   # 511 words of length <= 8, single recognizer and product
    2: 127,       # words of length <= 6
    3: 201,       # closed scoped terms with <= 7 constructors, plus open identities
    4: 6,         # the parity decider and five random ones
    5: 9 + 6,     # unary words <= 8 (twice) plus the small-type predicates
    6: 1,
    7: 200 * 10,  # sampled terms times bases, plus the closure checks
    8: 127,
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    name, battery = CRITERIA[n]
    res = battery()
    ok = res.passed and res.checked >= MIN_CHECKS[n]
    detail = res.line().split("] ", 1)[1]
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    assert res.passed, res.failures
    assert res.checked >= MIN_CHECKS[n]
