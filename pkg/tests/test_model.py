import numpy as np
import pytest

from socinf import (
    DimensionMismatch,
    DualCertificate,
    EmptyInstance,
    Instance,
    NonFiniteCoordinate,
    Point,
    validate_instance,
)


def test_valid_instance_passes():
    inst = Instance(3, (Point(0.0, [1.0, 2.0]), Point(1.0, [0.0, 0.0])))
    validate_instance(inst)
    assert inst.m == 2
    assert inst.data.shape == (2, 3)


def test_short_spatial_part_rejected():
    inst = Instance(3, (Point(0.0, [1.0, 2.0]), Point(1.0, [0.0])))
    with pytest.raises(DimensionMismatch):
        validate_instance(inst)


def test_nan_rejected():
    inst = Instance(3, (Point(0.0, [np.nan, 2.0]),))
    with pytest.raises(NonFiniteCoordinate):
        validate_instance(inst)


def test_empty_rejected():
    with pytest.raises(EmptyInstance):
        validate_instance(Instance(3, ()))


def test_n_below_two_rejected():
    with pytest.raises(DimensionMismatch):
        Instance.from_array(np.ones((3, 1))).data


def test_data_is_read_only():
    inst = Instance.from_array(np.arange(6.0).reshape(2, 3))
    with pytest.raises(ValueError):
        inst.data[0, 0] = 5.0


def test_scale_is_at_least_one():
    assert Instance.from_array([[0.1, 0.0]]).scale == 1.0
    assert Instance.from_array([[3.0, 4.0]]).scale == pytest.approx(5.0)


def test_point_round_trip():
    p = Point.from_array([1.0, 2.0, 3.0])
    assert p.p0 == 1.0
    np.testing.assert_array_equal(p.pbar, [2.0, 3.0])
    assert p == Point(1.0, [2.0, 3.0])
    assert p.n == 3


def test_from_parts_matches_from_array():
    a = Instance.from_parts([1.0, 2.0], [[0.0, 1.0], [2.0, 3.0]])
    b = Instance.from_array([[1.0, 0.0, 1.0], [2.0, 2.0, 3.0]])
    np.testing.assert_array_equal(a.data, b.data)


def test_zero_certificate():
    y = DualCertificate.zeros(3, 2)
    assert y.y.shape == (3, 2)
    np.testing.assert_array_equal(y.sum(), [0.0, 0.0])
