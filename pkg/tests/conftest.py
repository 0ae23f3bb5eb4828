import itertools

import pytest


def subset_sums_by_hand(elements):
    """Independent subset oracle: itertools over index combinations."""
    out = {}
    for r in range(len(elements) + 1):
        for combo in itertools.combinations(range(len(elements)), r):
            t = sum(elements[k] for k in combo)
            out[t] = out.get(t, 0) + 1
    return out


@pytest.fixture
def reference_set():
    from subsetnet import SubsetInstance

    return SubsetInstance((5, 6, 7))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
