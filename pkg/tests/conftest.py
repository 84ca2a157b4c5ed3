import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _shared import plan_keys  # noqa: E402


@pytest.fixture(scope="session")
def plan_keys_6():
    """Label-free keys of all 451,206 plans of the 6 x 6 grid (about a minute)."""
    return plan_keys(6)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)
