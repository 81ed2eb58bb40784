"""Acceptance run at desk bounds.

Each criterion is one test that prints a PASS/FAIL line with its wall time,
then asserts both the verdict and the time budget.  Run with ``-s`` to see
the lines:  pytest tests/test_acceptance.py -s
"""

import time

import pytest

from teamcheck import oracle
from teamcheck.oracle import VERIFIED, Bounds

pytestmark = pytest.mark.slow

DESK = Bounds()  # <=3 worlds over {p,q}, depth <=2


def _run(*checks):
    start = time.perf_counter()
    reports = [check() for check in checks]
    return reports, time.perf_counter() - start


CRITERIA = [
    ("1 flatness", 120, lambda: oracle.check_flatness(DESK)),
    ("2 dep desugaring", 120, lambda: oracle.check_dep_desugaring(DESK)),
    ("3 splitjunction", 60, lambda: oracle.check_splitjunction(DESK)),
    ("4 team characterization", 600, lambda: oracle.check_characterization(DESK)),
    ("5 property expression", 60, lambda: oracle.check_property_expression(DESK)),
    ("6 standard translation", 300, lambda: oracle.check_standard_translation(DESK)),
    (
        "7 separations", 300,
        lambda: oracle.check_independence_separation(DESK),
        lambda: oracle.check_inclusion_separation(DESK),
    ),
    ("8 generalized atoms", 300, lambda: oracle.check_generalized_atoms(DESK)),
    ("9 type counts", 1, lambda: oracle.check_type_counts(DESK)),
]


@pytest.mark.parametrize(
    "name,limit,checks",
    [(c[0], c[1], c[2:]) for c in CRITERIA],
    ids=[c[0].split(" ", 1)[1].replace(" ", "-") for c in CRITERIA],
)
def test_criterion(name, limit, checks):
    reports, seconds = _run(*checks)
    ok = all(r.verdict == VERIFIED for r in reports) and seconds < limit
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {name}: {seconds:.1f}s (limit {limit}s)")
    for r in reports:
        print("    " + r.line())
    assert all(r.verdict == VERIFIED for r in reports), [r.line() for r in reports]
    assert seconds < limit
