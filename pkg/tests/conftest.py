import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = []


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run slow brute-force checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: brute-force checks, run with --slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unit(rng, size=()):
    size = (size,) if np.isscalar(size) else tuple(size)
    v = rng.normal(size=size + (3,))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)
