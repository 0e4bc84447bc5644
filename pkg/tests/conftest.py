import numpy as np
import pytest

from graphprony.graph import neighbourhood, path_graph
from graphprony.spectral import SparseSpectralSignal, eigendecompose, synthesize

_acceptance: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def path20():
    g = path_graph(20)
    return g, eigendecompose(g)


@pytest.fixture(scope="session")
def worked_example(path20):
    """Path graph on 20 vertices, f = u_3 + u_15 / 5, anchor vertex 1, s = 2."""
    g, basis = path20
    sig = SparseSpectralSignal((3, 15), (1.0, 0.2))
    f = synthesize(basis, sig)
    samples = {w: float(f[w - 1]) for w in neighbourhood(g, 1, 3)}
    return g, basis, sig, f, samples


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
