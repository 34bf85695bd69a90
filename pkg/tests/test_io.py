import json

import numpy as np
import pytest

from socinf import DimensionMismatch, Instance, ParseError, kkt_check, solve
from socinf import io
from socinf.bench import generate_normal

DATA = __import__("pathlib").Path(__file__).parent / "data"


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_round_trip_exact(tmp_path, rng, fmt):
    inst = Instance.from_array(rng.standard_normal((7, 4)) * 10.0 ** rng.integers(-8, 8, (7, 4)))
    path = tmp_path / f"inst.{fmt}"
    io.write_instance(inst, path)
    back = io.read_instance(path)
    np.testing.assert_array_equal(back.data, inst.data)


def test_cross_format(tmp_path, rng):
    inst = Instance.from_array(rng.standard_normal((5, 3)))
    io.write_instance(inst, tmp_path / "a.csv")
    io.write_instance(io.read_instance(tmp_path / "a.csv"), tmp_path / "b.json")
    np.testing.assert_array_equal(io.read_instance(tmp_path / "b.json").data, inst.data)


def test_malformed_row_names_line():
    with pytest.raises(ParseError) as err:
        io.instance_from_csv("n=3,m=2\n1,2,3\n1,oops,3\n")
    assert err.value.line == 3
    assert err.value.column == 2
    assert "line 3" in str(err.value)


def test_bad_header():
    with pytest.raises(ParseError):
        io.instance_from_csv("3,2\n1,2,3\n")


def test_wrong_row_length():
    with pytest.raises(DimensionMismatch):
        io.instance_from_csv("n=3,m=1\n1,2\n")


def test_wrong_point_count():
    with pytest.raises(ParseError):
        io.instance_from_csv("n=2,m=3\n1,2\n")


def test_bad_json():
    with pytest.raises(ParseError) as err:
        io.instance_from_json('{"n": 2, "points": [[1, 2],')
    assert err.value.line == 1
    with pytest.raises(DimensionMismatch):
        io.instance_from_json('{"n": 3, "points": [[1, 2]]}')


def test_json_field_order():
    text = io.instance_to_json(Instance.from_array([[1.0, 2.0]]))
    assert list(json.loads(text)) == ["n", "points"]


def test_golden_file():
    golden = io.read_instance(DATA / "normal_n3_m5_seed42.csv")
    np.testing.assert_array_equal(golden.data, generate_normal(3, 5, 42).data)


def test_ball_csv():
    balls = io.balls_from_csv("# r,c1,c2\n1,0,0\n\n2.5,3,4\n")
    assert len(balls) == 2
    assert balls[1].radius == 2.5
    np.testing.assert_array_equal(balls[1].center, [3.0, 4.0])


def test_ball_csv_errors():
    with pytest.raises(DimensionMismatch):
        io.balls_from_csv("1,0,0\n1,0\n")
    with pytest.raises(ParseError):
        io.balls_from_csv("-1,0,0\n")
    with pytest.raises(ParseError):
        io.balls_from_csv("1\n")


def test_result_record_round_trip(rng):
    inst = Instance.from_array(rng.standard_normal((30, 4)))
    res = solve(inst)
    rec = io.result_to_dict(res)
    assert list(rec) == ["x0", "xbar", "support", "dual", "stats"]
    x, support, dual = io.result_from_dict(json.loads(json.dumps(rec)), inst)
    assert support == list(res.support)
    np.testing.assert_allclose(dual.y, res.dual.y, atol=1e-12)
    assert kkt_check(inst, x, dual, 1e-9)


def test_result_record_malformed(rng):
    inst = Instance.from_array(rng.standard_normal((3, 3)))
    with pytest.raises(ParseError):
        io.result_from_dict({"x0": 0.0}, inst)
    with pytest.raises(ParseError):
        io.result_from_dict({"x0": 0.0, "xbar": [0, 0], "support": [7], "dual": [1.0]}, inst)
