"""Exhaustive exact solvers used as ground truth (feasible up to 24 variables)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import GridGraph, QuboMatrix, cut_cost, cut_values, qubo_value, qubo_values

MAX_VARIABLES = 24
_CHUNK_BITS = 16


@dataclass(frozen=True)
class ExactSolution:
    argmin: np.ndarray
    value: float
    evaluated: int


def _bits_of(indices: np.ndarray, n: int) -> np.ndarray:
    """Row k holds the assignment encoded by integer indices[k] (bit i = variable i)."""
    return ((indices[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def _enumerate(n: int, batch_values: Callable[[np.ndarray], np.ndarray], exact_value) -> ExactSolution:
    """Scan all 2**n assignments in increasing integer order.

    The vectorised pass keeps every assignment within a small slack of the
    running minimum; the survivors are re-scored exactly and ties go to the
    smallest integer encoding.
    """
    if n > MAX_VARIABLES:
        raise ValueError(f"exhaustive search refused for {n} > {MAX_VARIABLES} variables")
    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)
    best = np.inf
    candidates: list[np.ndarray] = []
    slack = 1e-9
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        vals = batch_values(_bits_of(idx, n))
        m = vals.min()
        if m < best - slack:
            candidates = []
        best = min(best, m)
        candidates.append(idx[vals <= best + slack])
    pool = np.concatenate(candidates)
    scored = [(exact_value(_bits_of(np.array([k]), n)[0]), int(k)) for k in pool]
    value, k = min(scored)
    return ExactSolution(_bits_of(np.array([k]), n)[0], value, total)


def brute_force_min_cut(g: GridGraph) -> ExactSolution:
    return _enumerate(g.n, lambda bits: cut_values(g, bits), lambda x: cut_cost(g, x))


def brute_force_qubo(q: QuboMatrix) -> ExactSolution:
    return _enumerate(q.dim, lambda bits: qubo_values(q, bits), lambda x: qubo_value(q, x))
