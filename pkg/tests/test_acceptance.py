"""Acceptance criteria, one test each; a PASS/FAIL line per criterion goes to stdout."""
import pytest

from elliptic_lc.selftest import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number}")
def test_criterion(criterion, capsys):
    passed, lines = criterion.run()
    with capsys.disabled():
        print(f"\n{'PASS' if passed else 'FAIL'} criterion {criterion.number}: {criterion.title}")
        for line in lines:
            print(f"    {line}")
    assert passed, "\n".join(lines)
