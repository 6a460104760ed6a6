import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vqaseg.optimizers import (
    OptimizationError, OptimizerConfig, differential_evolution, nelder_mead, powell, run_optimizer,
)


def running_min(traj):
    return np.minimum.accumulate([c for _, c in traj])


def check_result_invariants(res, cfg):
    costs = [c for _, c in res.trajectory]
    assert res.evaluations == len(res.trajectory)
    assert [i for i, _ in res.trajectory] == list(range(res.evaluations))
    assert res.best_cost == min(costs) == running_min(res.trajectory)[-1]
    assert np.all(np.diff(running_min(res.trajectory)) <= 0)
    assert res.evaluations <= cfg.max_evaluations


def test_nelder_mead_quadratic_1d():
    cfg = OptimizerConfig(bounds=None, tolerance=1e-12)
    res = nelder_mead(lambda x: (x[0] - 1) ** 2, [5.0], cfg)
    assert abs(res.best_params[0] - 1) < 1e-4 and res.converged
    check_result_invariants(res, cfg)


def test_nelder_mead_constant():
    cfg = OptimizerConfig()
    res = nelder_mead(lambda x: 3.5, [1.0, 2.0], cfg)
    assert res.converged and res.best_cost == 3.5 and res.evaluations == 3


def test_nelder_mead_rosenbrock():
    cfg = OptimizerConfig(bounds=None, tolerance=1e-14)
    rosen = lambda x: 100 * (x[1] - x[0] ** 2) ** 2 + (1 - x[0]) ** 2
    res = nelder_mead(rosen, [-1.2, 1.0], cfg)
    np.testing.assert_allclose(res.best_params, [1, 1], atol=1e-3)


def plateau(x):
    # values in {0, 1, 4}
    return float(min(4, math.floor(abs(x).sum()) ** 2))


@given(st.lists(st.floats(-3, 3), min_size=1, max_size=4))
@settings(max_examples=30)
def test_nelder_mead_plateaus(x0):
    cfg = OptimizerConfig(max_evaluations=500)
    res = nelder_mead(plateau, x0, cfg)
    assert res.best_cost in (0.0, 1.0, 4.0)
    check_result_invariants(res, cfg)


def test_nelder_mead_rejects_nan():
    with pytest.raises(OptimizationError):
        nelder_mead(lambda x: float("nan"), [0.0], OptimizerConfig())


def test_powell_separable_quadratic():
    c = np.array([0.5, 2.0, 4.5, 1.0])
    cfg = OptimizerConfig(tolerance=1e-12)
    res = powell(lambda x: float(np.sum((x - c) ** 2)), np.full(4, 3.0), cfg)
    np.testing.assert_allclose(res.best_params, c, atol=1e-4)
    check_result_invariants(res, cfg)


def test_powell_cosine():
    res = powell(lambda x: math.cos(x[0]), [1.0], OptimizerConfig())
    assert abs(res.best_params[0] - math.pi) < 1e-3


def test_powell_coupled_quadratic():
    a = np.array([[3.0, 1.2], [1.2, 1.0]])
    c = np.array([2.0, 3.0])
    f = lambda x: float((x - c) @ a @ (x - c))
    res = powell(f, [5.0, 0.5], OptimizerConfig(tolerance=1e-14))
    np.testing.assert_allclose(res.best_params, c, atol=1e-4)


def test_powell_unbounded():
    res = powell(lambda x: (x[0] + 7) ** 2, [0.0], OptimizerConfig(bounds=None))
    assert abs(res.best_params[0] + 7) < 1e-4


@pytest.mark.parametrize("budget", [1, 10, 37])
def test_budget_contract(budget):
    cfg = OptimizerConfig(max_evaluations=budget)
    f = lambda x: float(np.sum(np.sin(3 * x)))
    for res in (powell(f, [1.0, 2.0], cfg), nelder_mead(f, [1.0, 2.0], cfg), differential_evolution(f, 2, cfg)):
        assert res.evaluations <= budget
        check_result_invariants(res, cfg)


def test_de_sphere():
    cfg = OptimizerConfig(bounds=(-5.0, 5.0), tolerance=1e-12, seed=3)
    res = differential_evolution(lambda x: float(np.sum(x**2)), 3, cfg)
    assert res.best_cost < 1e-6
    check_result_invariants(res, cfg)


def test_de_step_landscape_global_plateau():
    # 16 decoded cells with a unique minimum; brute-force the table for the expected value
    table = np.random.default_rng(12).permutation(16).astype(float)
    table[np.argmin(table)] = -2.5
    expected = min(table[k] for k in range(16))

    def f(theta):
        bits = (np.mod(theta, 2 * math.pi) >= math.pi).astype(int)
        return float(table[int("".join(map(str, bits)), 2)])

    res = differential_evolution(f, 4, OptimizerConfig(seed=8))
    assert res.best_cost == expected


def test_de_determinism():
    f = lambda x: float(np.sum(np.cos(x) * x))
    cfg = OptimizerConfig(max_evaluations=2000, seed=5)
    a, b = differential_evolution(f, 3, cfg), differential_evolution(f, 3, cfg)
    assert a.trajectory == b.trajectory
    np.testing.assert_array_equal(a.best_params, b.best_params)
    c = differential_evolution(f, 3, OptimizerConfig(max_evaluations=2000, seed=6))
    assert c.trajectory != a.trajectory


def test_de_population_bounds():
    seen = []
    cfg = OptimizerConfig(max_evaluations=600, seed=1)
    differential_evolution(lambda x: seen.append(x.copy()) or float(np.sum(x)), 2, cfg)
    pts = np.array(seen)
    assert pts.min() >= 0 and pts.max() <= 2 * math.pi


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(max_evaluations=0)
    with pytest.raises(ValueError):
        OptimizerConfig(de_crossover=0)
    with pytest.raises(ValueError):
        OptimizerConfig(de_weight=-1)


def test_run_optimizer_dispatch():
    f = lambda x: float(np.sum((x - 2) ** 2))
    cfg = OptimizerConfig(max_evaluations=3000, seed=4)
    for name in ("nelder-mead", "powell", "de"):
        assert run_optimizer(name, f, 2, cfg).best_cost < 1e-3
    with pytest.raises(ValueError):
        run_optimizer("cobyla", f, 2, cfg)
