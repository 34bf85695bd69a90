import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socinf import (
    Instance,
    IterationLimit,
    PivotRule,
    SolverConfig,
    initial_spair,
    kkt_check,
    solve,
    spair_from,
)
from socinf.solver import check_spair, select_violated

from conftest import random_instance

CIRCUM = [[0.0, -1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 3.0]]
AFFDEP = [[0.0, -1.0, 0.0], [0.0, 1.0, 0.0], [-0.9, 0.5, 0.0]]


def test_initial_spair_argmin():
    st_ = initial_spair(Instance.from_array([[3.0, 1.0, 1.0], [0.0, 0.0, 0.0]]))
    assert st_.support == [1]
    assert st_.x.p0 == 0.0


def test_initial_spair_ties_smallest_index():
    st_ = initial_spair(Instance.from_array([[1.0, 5.0, 0.0], [0.0, 1.0, 0.0], [0.0, 2.0, 0.0]]))
    assert st_.support == [1]


def test_select_violated_most_infeasible():
    inst = Instance.from_array([[0.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 1.5, 0.0]])
    assert select_violated(inst, [0.0, 0.0, 0.0]) == 1
    assert select_violated(inst, [0.0, 0.0, 0.0], SolverConfig(pivot_rule="first")) == 1


def test_select_violated_none_when_feasible():
    inst = Instance.from_array([[1.0, 0.0, 0.0], [2.0, 0.5, 0.0]])
    assert select_violated(inst, [0.0, 0.0, 0.0]) is None


def test_single_violated_both_rules():
    inst = Instance.from_array([[1.0, 0.0, 0.0], [0.0, 0.0, 2.0]])
    for rule in PivotRule:
        assert select_violated(inst, [0.0, 0.0, 0.0], SolverConfig(pivot_rule=rule)) == 1


def test_circumcenter_instance():
    res = solve(Instance.from_array(CIRCUM))
    assert res.x0 == pytest.approx(-5.0 / 3.0, abs=1e-12)
    np.testing.assert_allclose(res.xbar, [0.0, 4.0 / 3.0], atol=1e-12)
    assert sorted(res.support) == [0, 1, 2]
    assert kkt_check(Instance.from_array(CIRCUM), res.x_star, res.dual, 1e-10)


def test_dominated_point_is_solution():
    inst = Instance.from_array([[5.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [4.0, 0.0, 3.0]])
    res = solve(inst)
    assert res.x_star == inst[1]
    assert res.support == (1,)
    # the argmin start is already optimal, so no point is ever violated
    assert res.stats.major_iterations == 0


def test_point_gate_fires_in_one_iteration():
    # from the pair S-pair, the low point sits below both cones and is the answer
    inst = Instance.from_array([[0.0, -1.0, 0.0], [0.0, 1.0, 0.0], [-3.0, 0.0, 0.5]])
    res = solve(inst, start=spair_from(inst, [0, 1], [-1.0, 0.0, 0.0]))
    assert res.x_star == inst[2]
    assert res.support == (2,)
    assert (res.stats.major_iterations, res.stats.spair_updates) == (1, 1)


def test_single_point():
    res = solve(Instance.from_array([[2.0, 1.0, 1.0]]))
    assert res.x_star == Instance.from_array([[2.0, 1.0, 1.0]])[0]
    np.testing.assert_array_equal(res.dual.y, [[1.0, 0.0, 0.0]])


def test_warm_start_affdep_drop():
    inst = Instance.from_array(AFFDEP)
    start = spair_from(inst, [0, 1], [-1.0, 0.0, 0.0])
    res = solve(inst, start=start)
    assert res.stats.affdep_drops == 1
    assert res.x0 == pytest.approx(-1.2, abs=1e-12)
    np.testing.assert_allclose(res.xbar, [0.2, 0.0], atol=1e-12)
    assert sorted(res.support) == [0, 2]


def test_spair_from_rejects_bad_pair():
    inst = Instance.from_array(AFFDEP)
    with pytest.raises(ValueError):
        spair_from(inst, [0, 1], [0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        spair_from(inst, [0, 0], [-1.0, 0.0, 0.0])


def test_iteration_limit_carries_state(rng):
    inst = random_instance(rng, 5, 200)
    with pytest.raises(IterationLimit) as err:
        solve(inst, SolverConfig(max_iterations=1))
    assert err.value.state is not None
    assert err.value.stats.major_iterations >= 1


def test_callback_sees_each_iteration(rng):
    inst = random_instance(rng, 4, 60)
    seen = []
    res = solve(inst, callback=lambda state, stats: seen.append(state.x.p0))
    # the history also holds the starting height
    assert len(seen) + 1 == len(res.stats.x0_history)
    assert seen[-1] == pytest.approx(res.x0)


def test_first_violated_rule_agrees(rng):
    for _ in range(20):
        inst = random_instance(rng, 4, 40)
        a = solve(inst)
        b = solve(inst, SolverConfig(pivot_rule="first"))
        assert a.x0 == pytest.approx(b.x0, abs=1e-9 * inst.scale)


def test_without_two_point_shortcut(rng):
    for _ in range(20):
        inst = random_instance(rng, 3, 30)
        a = solve(inst)
        b = solve(inst, SolverConfig(use_two_point_shortcut=False))
        assert a.x0 == pytest.approx(b.x0, abs=1e-9 * inst.scale)


def test_final_spair_is_dual_feasible(rng):
    for _ in range(20):
        inst = random_instance(rng, 5, 50)
        res = solve(inst)
        rep = check_spair(inst, res.support, res.x_star)
        assert rep.ok(1e-9 * inst.scale, -1e-9, 0.0)
        assert rep.size <= inst.n


def test_duplicate_points(rng):
    rows = rng.standard_normal((10, 3))
    inst = Instance.from_array(np.vstack([rows, rows]))
    res = solve(inst)
    assert kkt_check(inst, res.x_star, res.dual, 1e-9)


def test_cospherical_12_gon():
    ang = 2 * np.pi * np.arange(12) / 12
    inst = Instance.from_parts(np.zeros(12), np.column_stack([np.cos(ang), np.sin(ang)]))
    res = solve(inst)
    assert res.x0 == pytest.approx(-1.0, abs=1e-10)
    np.testing.assert_allclose(res.xbar, 0.0, atol=1e-10)


def test_scaled_instance_is_scale_invariant(rng):
    inst = random_instance(rng, 4, 30)
    for factor in (1e-3, 1e3, 1e6, 1e9):
        big = Instance.from_array(factor * inst.data)
        assert solve(big).x0 == pytest.approx(factor * solve(inst).x0, rel=1e-9, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_random_instances_satisfy_kkt(n, m, seed):
    inst = random_instance(np.random.default_rng(seed), n, m)
    res = solve(inst)
    assert kkt_check(inst, res.x_star, res.dual, 1e-7).passed
    assert res.stats.max_support <= n
    hist = res.stats.x0_history
    assert all(b <= a + 1e-12 * inst.scale for a, b in zip(hist, hist[1:]))


def _polygon(k):
    a = 2 * np.pi * np.arange(k) / k
    return np.column_stack([np.cos(a), np.sin(a)])


def _cube(d):
    import itertools

    return np.array(list(itertools.product([-1.0, 1.0], repeat=d))) / np.sqrt(d)


@pytest.mark.parametrize("pts", [_polygon(5), _polygon(12), _polygon(31), _cube(3), _cube(4)],
                         ids=["5-gon", "12-gon", "31-gon", "cube", "4-cube"])
@pytest.mark.parametrize("rule", ["most-infeasible", "first"])
@pytest.mark.parametrize("shortcut", [True, False])
def test_cospherical_unit_sphere(pts, rule, shortcut):
    inst = Instance.from_parts(np.zeros(len(pts)), pts)
    res = solve(inst, SolverConfig(pivot_rule=rule, use_two_point_shortcut=shortcut))
    assert res.x0 == pytest.approx(-1.0, abs=1e-12)
    np.testing.assert_allclose(res.xbar, 0.0, atol=1e-12)
    assert res.stats.major_iterations <= inst.m
    assert kkt_check(inst, res.x_star, res.dual, 1e-10)
