"""Acceptance gate.

One test per shipped criterion, each printing its pass/fail line; the same
functions back the command-line ``selftest`` verb.
"""

import pytest

from sphreg import accept


CRITERIA = [
    accept.criterion_1_table,
    accept.criterion_2_weyl_invariance,
    accept.criterion_3_infimum,
    accept.criterion_4_decompositions,
    accept.criterion_5_decay,
    accept.criterion_6_holder_dichotomy,
    accept.criterion_7_leading_term,
    accept.criterion_8_compact_duality,
    accept.criterion_9_singular_blowup,
    accept.criterion_10_cesaro,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion):
    result = criterion()
    status = "pass" if result.passed else "FAIL"
    print(f"criterion {result.index:2d} [{status}] {result.name}: {result.detail} "
          f"({result.seconds:.1f}s)")
    assert result.passed, f"criterion {result.index}: {result.detail}"
