import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from socinf._num import norm2, quadratic_roots


def test_norm2_extremes():
    assert norm2([3e200, 4e200]) == pytest.approx(5e200)
    assert norm2([3e-200, 4e-200]) == pytest.approx(5e-200)
    assert norm2([]) == 0.0


def test_roots_simple():
    assert quadratic_roots(1.0, -3.0, 2.0) == pytest.approx([1.0, 2.0])


def test_roots_linear_and_none():
    assert quadratic_roots(0.0, 2.0, -4.0) == [2.0]
    assert quadratic_roots(1.0, 0.0, 1.0) == []
    assert quadratic_roots(0.0, 0.0, 0.0) == []


def test_roots_cancellation():
    # roots 1e-9 and 1e9: the naive formula loses the small one entirely
    small, big = quadratic_roots(1.0, -(1e9 + 1e-9), 1.0)
    assert small == pytest.approx(1e-9, rel=1e-12)
    assert big == pytest.approx(1e9, rel=1e-12)


def test_roots_mixed_units():
    # t in units of 1e6: a ~ 1, b ~ 1e6, c ~ 1e12 must stay a quadratic
    s = 1e6
    assert quadratic_roots(1.0, -3.0 * s, 2.0 * s * s) == pytest.approx([s, 2 * s])


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(1e-3, 1e3))
def test_roots_from_factors(r1, r2, a):
    roots = quadratic_roots(a, -a * (r1 + r2), a * r1 * r2)
    assert len(roots) == 2
    scale = max(1.0, abs(r1), abs(r2))
    assert roots[0] == pytest.approx(min(r1, r2), abs=1e-6 * scale)
    assert roots[1] == pytest.approx(max(r1, r2), abs=1e-6 * scale)
