import math

import numpy as np
import pytest

from socinf import AffinelyDependent, DegenerateWeights, Instance, NoRealPoint, kkt_check
from socinf.curve import alphas_affdep, alphas_of_x0, gamma_plus, reconstruct_dual

from conftest import curve_for

PAIR = [[0.0, -1.0, 0.0], [0.0, 1.0, 0.0]]


@pytest.fixture
def sym():
    return curve_for(PAIR + [[0.0, 0.0, 3.0]], [0, 1], [-1.0, 0.0, 0.0], [0.0, 0.0, 3.0])


def test_singleton_base_case():
    cs = curve_for([[1.0, 0.0, 0.0], [0.0, 4.0, 0.0]], [0], [1.0, 0.0, 0.0], [0.0, 4.0, 0.0])
    assert cs.u.size == cs.v.size == cs.w.size == 0
    np.testing.assert_allclose(cs.z, [4.0, 0.0])


def test_symmetric_pair_system(sym):
    np.testing.assert_allclose(cs_col(sym), [2.0, 0.0])
    np.testing.assert_allclose(sym.u, [0.5])
    np.testing.assert_allclose(sym.v, [0.0])
    np.testing.assert_allclose(sym.w, [-0.5])
    np.testing.assert_allclose(sym.z, [0.0, 3.0])


def cs_col(cs):
    return cs.M[:, 0]


def test_gamma_plus_at_circumcenter_height(sym):
    np.testing.assert_allclose(gamma_plus(sym, -5.0 / 3.0), [0.0, 4.0 / 3.0], atol=1e-14)


def test_gamma_plus_at_start(sym):
    np.testing.assert_allclose(gamma_plus(sym, -1.0), [0.0, 0.0], atol=1e-14)


def test_alphas_at_circumcenter_height(sym):
    astar, alpha = alphas_of_x0(sym, -5.0 / 3.0)
    assert astar == pytest.approx(4.0 / 9.0)
    np.testing.assert_allclose(alpha, [5.0 / 18.0, 5.0 / 18.0])
    assert astar + alpha.sum() == pytest.approx(1.0)


def test_alphas_vanish_at_partial_height(sym):
    astar, alpha = alphas_of_x0(sym, -math.sqrt(10.0))
    assert astar == pytest.approx(1.0)
    np.testing.assert_allclose(alpha, 0.0, atol=1e-12)


def test_no_real_point_above_cap(sym):
    with pytest.raises(NoRealPoint):
        gamma_plus(sym, -0.5)


def test_affinely_dependent_raises():
    cs = curve_for(PAIR + [[-0.9, 0.5, 0.0]], [0, 1], [-1.0, 0.0, 0.0], [-0.9, 0.5, 0.0])
    assert cs.affinely_dependent
    with pytest.raises(AffinelyDependent):
        alphas_of_x0(cs, -1.0)
    np.testing.assert_allclose(alphas_affdep(cs, -1.0, 2.0 / 3.0), [1.0 / 3.0, 0.0], atol=1e-15)


def test_reconstruct_symmetric_pair():
    inst = Instance.from_array(PAIR)
    y = reconstruct_dual(inst, [0, 1], [0.5, 0.5], [-1.0, 0.0, 0.0])
    np.testing.assert_allclose(y.y, [[0.5, 0.5, 0.0], [0.5, -0.5, 0.0]])
    assert kkt_check(inst, [-1.0, 0.0, 0.0], y, eps=1e-12).passed


def test_reconstruct_at_support_point():
    inst = Instance.from_array([[0.0, 0.0, 0.0], [2.0, 1.0, 0.0]])
    y = reconstruct_dual(inst, [0], [1.0], [0.0, 0.0, 0.0])
    np.testing.assert_array_equal(y.y, [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


def test_reconstruct_degenerate():
    inst = Instance.from_array(PAIR)
    with pytest.raises(DegenerateWeights):
        reconstruct_dual(inst, [0, 1], [0.0, 0.0], [-1.0, 0.0, 0.0])
