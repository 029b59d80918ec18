"""The nine acceptance criteria, each within its time limit.

Every test prints one PASS/FAIL line straight to the terminal.
"""
import pytest

from nil2kit.checks import LIMITS, NAMES, run_criterion


@pytest.mark.parametrize("n", sorted(NAMES))
def test_criterion(n, capsys):
    result = run_criterion(n, seed=0)
    failed = [v["check"] for v in result["verdicts"] if not v["pass"]]
    line = (
        f"criterion {n} [{'PASS' if result['pass'] else 'FAIL'}] {NAMES[n]}: "
        f"{result['seconds']:.2f}s (limit {LIMITS[n]}s)"
        + (f"; failing checks: {failed}" if failed else "")
    )
    with capsys.disabled():
        print("\n" + line)
    assert not failed, line
    assert result["seconds"] < LIMITS[n], line
