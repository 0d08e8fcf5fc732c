import numpy as np
import pytest

from gbsim.linalg import beamsplitter, haar_unitary
from gbsim.rng import RngStream

_criteria = []


@pytest.fixture
def rng():
    return RngStream(seed=1234, stream_id=0)


@pytest.fixture
def bs():
    return beamsplitter()


@pytest.fixture
def haar():
    def make(dim, seed=0):
        return haar_unitary(dim, RngStream(seed, 99))
    return make


def random_complex(shape, seed):
    r = np.random.default_rng(seed)
    return r.normal(size=shape) + 1j * r.normal(size=shape)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _criteria.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _criteria:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}  ({duration:.2f}s)")
