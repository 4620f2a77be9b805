"""Shared fixtures for the test suite."""

import os

import pytest

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")

# One line per acceptance criterion, filled in by test_acceptance.report()
# and echoed after the run so the measured values survive output capture.
acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def specfun_by_family():
    """Frozen high-precision records, grouped by family name.

    Each entry is a list of (n, x, sign, logmag) tuples.
    """
    groups = {}
    with open(os.path.join(FIXTURE_DIR, "specfun_fixtures.txt")) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            family, n, x, sign, logmag = line.split()
            groups.setdefault(family, []).append(
                (int(n), float(x), int(sign), float(logmag))
            )
    assert sum(len(v) for v in groups.values()) >= 200
    return groups
