"""Derivative-free minimizers with evaluation budgets and seeded reproducibility.

All three methods count cost-function evaluations (the unit the benchmarks
report as "iterations") and record every evaluated cost in a trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .rng import SplitMix64

CostFn = Callable[[np.ndarray], float]


class OptimizationError(RuntimeError):
    pass


@dataclass
class OptimizerConfig:
    max_evaluations: int = 100_000
    tolerance: float = 1e-6
    population: int | None = None  # DE only; None -> 15 * dim
    de_weight: float = 0.8
    de_crossover: float = 0.9
    bounds: tuple[float, float] | None = (0.0, 2 * math.pi)
    initial_step: float = 0.5  # Nelder-Mead simplex edge length
    line_tolerance: float = 1e-6  # Powell line-search x tolerance
    seed: int = 0

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise ValueError("max_evaluations must be >= 1")
        if not 0 < self.de_crossover <= 1:
            raise ValueError("de_crossover must be in (0, 1]")
        if self.de_weight <= 0:
            raise ValueError("de_weight must be positive")


@dataclass
class OptimizerResult:
    best_params: np.ndarray
    best_cost: float
    evaluations: int
    trajectory: list[tuple[int, float]] = field(repr=False)
    converged: bool


class _BudgetExhausted(Exception):
    pass


class _Counted:
    """Wraps the cost oracle: counts calls, tracks the best point, enforces the budget."""

    def __init__(self, f: CostFn, budget: int):
        self.f = f
        self.budget = budget
        self.trajectory: list[tuple[int, float]] = []
        self.best_x: np.ndarray | None = None
        self.best_f = math.inf

    def __call__(self, x) -> float:
        if len(self.trajectory) >= self.budget:
            raise _BudgetExhausted
        x = np.array(x, dtype=np.float64)
        val = float(self.f(x))
        if not math.isfinite(val):
            raise OptimizationError(f"cost oracle returned {val} at evaluation {len(self.trajectory)} for x={x}")
        self.trajectory.append((len(self.trajectory), val))
        if val < self.best_f:
            self.best_f, self.best_x = val, x
        return val

    def result(self, converged: bool) -> OptimizerResult:
        return OptimizerResult(self.best_x, self.best_f, len(self.trajectory), self.trajectory, converged)


def nelder_mead(f: CostFn, x0, cfg: OptimizerConfig | None = None) -> OptimizerResult:
    """Nelder-Mead with reflection 1, expansion 2, contraction 0.5, shrink 0.5.

    Stops when the spread of simplex costs drops below ``cfg.tolerance``.
    """
    cfg = cfg or OptimizerConfig()
    fc = _Counted(f, cfg.max_evaluations)
    x0 = np.atleast_1d(np.asarray(x0, dtype=np.float64))
    dim = x0.size
    if dim < 1:
        raise ValueError("need at least one parameter")
    converged = False
    try:
        simplex = [x0] + [x0 + cfg.initial_step * np.eye(dim)[i] for i in range(dim)]
        costs = [fc(x) for x in simplex]
        while True:
            order = np.argsort(costs, kind="stable")
            simplex = [simplex[i] for i in order]
            costs = [costs[i] for i in order]
            if costs[-1] - costs[0] < cfg.tolerance:
                converged = True
                break
            centroid = np.mean(simplex[:-1], axis=0)
            worst = simplex[-1]
            xr = centroid + (centroid - worst)
            fr = fc(xr)
            if fr < costs[0]:
                xe = centroid + 2.0 * (centroid - worst)
                fe = fc(xe)
                simplex[-1], costs[-1] = (xe, fe) if fe < fr else (xr, fr)
                continue
            if fr < costs[-2]:
                simplex[-1], costs[-1] = xr, fr
                continue
            if fr < costs[-1]:
                xc = centroid + 0.5 * (xr - centroid)  # outside contraction
                fcn = fc(xc)
                accept = fcn <= fr
            else:
                xc = centroid + 0.5 * (worst - centroid)  # inside contraction
                fcn = fc(xc)
                accept = fcn < costs[-1]
            if accept:
                simplex[-1], costs[-1] = xc, fcn
                continue
            best = simplex[0]
            for i in range(1, dim + 1):
                simplex[i] = best + 0.5 * (simplex[i] - best)
                costs[i] = fc(simplex[i])
    except _BudgetExhausted:
        pass
    return fc.result(converged)


def _line_bounds(x: np.ndarray, d: np.ndarray, bounds) -> tuple[float, float]:
    lo_b, hi_b = bounds
    lo, hi = -math.inf, math.inf
    for xi, di in zip(x, d):
        if di > 0:
            lo, hi = max(lo, (lo_b - xi) / di), min(hi, (hi_b - xi) / di)
        elif di < 0:
            lo, hi = max(lo, (hi_b - xi) / di), min(hi, (lo_b - xi) / di)
    return lo, hi


def powell(f: CostFn, x0, cfg: OptimizerConfig | None = None) -> OptimizerResult:
    """Powell's direction-set method with bounded Brent line searches.

    With ``cfg.bounds`` set, each line search is confined to the box and the
    starting point is clipped into it.
    """
    cfg = cfg or OptimizerConfig()
    fc = _Counted(f, cfg.max_evaluations)
    x = np.atleast_1d(np.asarray(x0, dtype=np.float64)).copy()
    dim = x.size
    if dim < 1:
        raise ValueError("need at least one parameter")
    if cfg.bounds is not None:
        x = np.clip(x, *cfg.bounds)
    directions = list(np.eye(dim))
    converged = False

    def line_min(x, fx, d):
        if cfg.bounds is None:
            res = minimize_scalar(lambda t: fc(x + t * d), bracket=(0.0, 1.0), tol=cfg.line_tolerance)
        else:
            lo, hi = _line_bounds(x, d, cfg.bounds)
            if hi - lo <= 0:
                return x, fx
            res = minimize_scalar(
                lambda t: fc(np.clip(x + t * d, *cfg.bounds)),
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": cfg.line_tolerance},
            )
        if res.fun < fx:
            xn = x + res.x * d
            if cfg.bounds is not None:
                xn = np.clip(xn, *cfg.bounds)
            return xn, float(res.fun)
        return x, fx

    try:
        fx = fc(x)
        while True:
            x_start, f_start = x.copy(), fx
            biggest_drop, biggest_idx = 0.0, 0
            for i, d in enumerate(directions):
                f_before = fx
                x, fx = line_min(x, fx, d)
                if f_before - fx > biggest_drop:
                    biggest_drop, biggest_idx = f_before - fx, i
            if 2.0 * (f_start - fx) <= cfg.tolerance * (abs(f_start) + abs(fx)) + 1e-20:
                converged = True
                break
            d_new = x - x_start
            x_ext = x + d_new
            in_box = cfg.bounds is None or bool(np.all((x_ext >= cfg.bounds[0]) & (x_ext <= cfg.bounds[1])))
            if in_box and np.any(d_new != 0):
                f_ext = fc(x_ext)
                if f_ext < f_start:
                    t = 2.0 * (f_start - 2.0 * fx + f_ext) * (f_start - fx - biggest_drop) ** 2
                    t -= biggest_drop * (f_start - f_ext) ** 2
                    if t < 0:
                        x, fx = line_min(x, fx, d_new)
                        directions[biggest_idx] = directions[-1]
                        directions[-1] = d_new
    except _BudgetExhausted:
        pass
    return fc.result(converged)


def differential_evolution(f: CostFn, dim: int, cfg: OptimizerConfig | None = None) -> OptimizerResult:
    """DE/rand/1/bin with immediate replacement.

    The population is initialised uniformly in ``cfg.bounds`` from
    ``SplitMix64(cfg.seed)``. Mutant components leaving the box are redrawn
    uniformly. Stops when max - min of population costs drops below
    ``cfg.tolerance``.
    """
    cfg = cfg or OptimizerConfig()
    if dim < 1:
        raise ValueError("need at least one parameter")
    if cfg.bounds is None:
        raise ValueError("differential evolution needs bounds")
    lo, hi = cfg.bounds
    width = hi - lo
    npop = cfg.population or 15 * dim
    if npop < 4:
        raise ValueError("population must be >= 4 for rand/1 mutation")
    rng = SplitMix64(cfg.seed)
    fc = _Counted(f, cfg.max_evaluations)
    converged = False
    try:
        pop = lo + width * rng.random(npop * dim).reshape(npop, dim)
        costs = np.array([fc(p) for p in pop])
        while True:
            if costs.max() - costs.min() < cfg.tolerance:
                converged = True
                break
            for i in range(npop):
                r = []
                while len(r) < 3:
                    k = rng.integer(npop)
                    if k != i and k not in r:
                        r.append(k)
                mutant = pop[r[0]] + cfg.de_weight * (pop[r[1]] - pop[r[2]])
                j_rand = rng.integer(dim)
                trial = pop[i].copy()
                for j in range(dim):
                    if j == j_rand or rng.uniform() < cfg.de_crossover:
                        v = mutant[j]
                        if not lo <= v <= hi:
                            v = lo + width * rng.uniform()
                        trial[j] = v
                ft = fc(trial)
                if ft <= costs[i]:
                    pop[i], costs[i] = trial, ft
    except _BudgetExhausted:
        pass
    return fc.result(converged)


OPTIMIZERS = ("nelder-mead", "powell", "de")


def run_optimizer(name: str, f: CostFn, dim: int, cfg: OptimizerConfig) -> OptimizerResult:
    """Dispatch by name; local methods start from a seeded uniform point in the bounds."""
    if name == "de":
        return differential_evolution(f, dim, cfg)
    lo, hi = cfg.bounds if cfg.bounds is not None else (0.0, 2 * math.pi)
    x0 = lo + (hi - lo) * SplitMix64(cfg.seed).random(dim)
    if name == "nelder-mead":
        return nelder_mead(f, x0, cfg)
    if name == "powell":
        return powell(f, x0, cfg)
    raise ValueError(f"unknown optimizer {name!r}; choose from {OPTIMIZERS}")
