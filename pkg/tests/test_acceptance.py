"""One test and one printed line per acceptance criterion.

The strict bound ``c > 0.74035`` of criterion 3 is its own test so that a
failure there does not hide the status of P, Q and the recomputation.
"""

from functools import lru_cache

import pytest

from ljlattice.verify import CRITERIA, run_criterion

REPORT: list[str] = []
SEPARATE = {(3, "c > 0.74035")}


@lru_cache(maxsize=None)
def rows_of(criterion):
    return tuple(run_criterion(criterion))


def _check(label, title, rows):
    ok = all(r.passed for r in rows)
    parts = [f"{r.name} = {r.measured!r} (expected {r.expected}; {'ok' if r.passed else 'FAILED'})" for r in rows]
    line = f"criterion {label:>4} {'PASS' if ok else 'FAIL'}: {title} | " + "; ".join(parts)
    REPORT.append(line)
    print(line)
    failed = [r for r in rows if not r.passed]
    assert not failed, "; ".join(f"{r.name}: measured {r.measured!r}, expected {r.expected} [{r.detail}]" for r in failed)


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(criterion):
    rows = [r for r in rows_of(criterion) if (criterion, r.name) not in SEPARATE]
    _check(str(criterion), CRITERIA[criterion][0], rows)


@pytest.mark.parametrize("criterion,name", sorted(SEPARATE))
def test_separate_row(criterion, name):
    rows = [r for r in rows_of(criterion) if r.name == name]
    assert rows, name
    _check(f"{criterion}c", f"{CRITERIA[criterion][0]}, strict bound", rows)
