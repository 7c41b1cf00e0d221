"""
Shared pytest configuration.

Acceptance runs over the whole catalog are marked ``slow`` and only run
with ``pytest --runslow``.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow acceptance tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-budget acceptance run (needs --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


WORKED_EXAMPLE = "(0,0,0,12,14,15+23+24)"


@pytest.fixture
def worked_example():
    """
    The algebra (0,0,0,12,14,15+23+24) and a builder for the closed forms
    A a13 + B a15 + C a23 + D (a16 + a25 - a34) + E (a26 - a45).
    """
    from nilharmonic.exterior import Form
    from nilharmonic.liespec import parse_salamon

    def build(A, B, C, D, E):
        return Form(6, 2, {
            (1, 3): A, (1, 5): B, (2, 3): C,
            (1, 6): D, (2, 5): D, (3, 4): -D,
            (2, 6): E, (4, 5): -E,
        })

    return parse_salamon(WORKED_EXAMPLE), build
