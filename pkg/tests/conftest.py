from functools import lru_cache

import pytest

from umip.catalogue import get_entry, load_catalogue
from umip.invariants import GroupContext


@lru_cache(maxsize=None)
def entry(order, gid):
    return get_entry(order, gid)


@lru_cache(maxsize=None)
def context(order, gid):
    return GroupContext(entry(order, gid))


def small_ids(max_order=16):
    """(order, id) for every catalogue group up to ``max_order``."""
    return [(e.order, e.catalogue_id) for e in load_catalogue() if e.order <= max_order]


def all_ids():
    return [(e.order, e.catalogue_id) for e in load_catalogue()]


@pytest.fixture(scope="session")
def catalogue():
    return load_catalogue()


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
