import numpy as np
import pytest

from socinf import Instance, Point, SupportState
from socinf.curve import build_curve_system
from socinf.qr import difference_matrix, qr_build


def curve_for(rows, support, x, p_star):
    """Curve system of ``support`` (positions into ``rows``) at the S-pair point ``x``."""
    inst = Instance.from_array(rows)
    M = difference_matrix(inst.data[:, 1:], support)
    state = SupportState(list(support), Point.from_array(x), qr_build(M))
    return build_curve_system(inst, state, Point.from_array(p_star))


def random_instance(rng, n, m, spread=1.0):
    return Instance.from_array(spread * rng.standard_normal((m, n)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
