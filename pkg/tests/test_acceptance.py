"""All acceptance criteria at their stated tolerances, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
"""
import sys

import pytest

from nilskt import verify

NUMBERS = [c.number for c in verify.CRITERIA]


@pytest.fixture(scope="module")
def results(request):
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    def echo(line):
        if reporter is not None:
            reporter.write_line(line)
        else:
            print(line)

    if reporter is not None:
        reporter.write_line("")
    found = verify.run(verify.CRITERIA, verify.Settings(), echo=echo)
    return {r.number: r for r in found}


@pytest.mark.parametrize("number", NUMBERS)
def test_criterion(results, number):
    r = results[number]
    assert r.passed, r.line()


if __name__ == "__main__":
    out = verify.run(verify.CRITERIA, verify.Settings(), echo=print)
    sys.exit(0 if all(r.passed for r in out) else 1)
