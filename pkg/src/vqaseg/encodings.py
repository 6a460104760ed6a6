"""Qubit-efficient variational encodings of the min-cut QUBO.

PGE
    One phase parameter per (padded) variable on ceil(log2 n) qubits. The
    state is H^n followed by diag(exp(i*pi*f(theta_k))), with f the step
    decode below; the cost is (2^n'/2) <psi|L|psi> for the graph Laplacian L.

ABE / ACE
    ceil(log2 n) register qubits plus one ancilla (the least significant
    qubit). Register basis state |i> carries variable i; the ancilla
    probabilities conditioned on |i> decide its value. ABE minimises the
    projector-ratio relaxation of x^T Q x; ACE decodes each measurement to a
    bit vector and minimises the cut value directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import statevector as sv
from .graph import GridGraph, QuboMatrix, cut_cost, laplacian, to_qubo
from .optimizers import OptimizerConfig, OptimizerResult, run_optimizer
from .rng import derive_seed

TWO_PI = 2 * math.pi
METHODS = ("pge", "abe", "ace")
DEFAULT_SHOTS = 65_536


def register_qubits(n: int) -> int:
    """ceil(log2 n); zero for a single variable."""
    return (n - 1).bit_length() if n > 1 else 0


def pge_qubits(n: int) -> int:
    return max(1, register_qubits(n))


def abe_param_count(n: int, layers: int) -> int:
    return layers * (register_qubits(n) + 1)


# --- PGE ------------------------------------------------------------------


def _step(params) -> np.ndarray:
    theta = np.mod(np.asarray(params, dtype=np.float64), TWO_PI)
    return (theta >= math.pi).astype(np.uint8)


def pge_decode(params, n: int | None = None) -> np.ndarray:
    """0 for theta in [0, pi), 1 for [pi, 2pi), angles taken mod 2pi; keeps the first n."""
    bits = _step(params)
    return bits if n is None else bits[:n]


def pge_state(params, n_prime: int) -> sv.Statevector:
    params = np.asarray(params, dtype=np.float64)
    if params.size != 1 << n_prime:
        raise ValueError(f"PGE on {n_prime} qubits needs {1 << n_prime} parameters, got {params.size}")
    s = sv.new_state(n_prime)
    for k in range(n_prime):
        s = sv.apply_h(s, k)
    return sv.apply_diagonal(s, math.pi * _step(params))


def pge_cost(params, lap: np.ndarray) -> float:
    params = np.asarray(params, dtype=np.float64)
    n_prime = pge_qubits(params.size)
    dim = 1 << n_prime
    if params.size != dim:
        raise ValueError(f"PGE parameter count {params.size} is not a power of two")
    lap = np.asarray(lap)
    if lap.shape[0] > dim:
        raise ValueError(f"Laplacian of dimension {lap.shape[0]} does not fit {n_prime} qubits")
    if lap.shape[0] < dim:
        lap = np.pad(lap, (0, dim - lap.shape[0]))
    return dim / 2.0 * sv.expectation(pge_state(params, n_prime), lap)


# --- ABE / ACE --------------------------------------------------------------


@dataclass(frozen=True)
class ProjectorEstimates:
    """Register-state probability ``p`` and joint (register, ancilla=1) probability ``p1``."""

    p: np.ndarray
    p1: np.ndarray
    shots: int | None = None  # None for exact probabilities

    @property
    def eps(self) -> float:
        return 1.0 / self.shots if self.shots else 1e-15


def abe_circuit(params, n: int) -> sv.Statevector:
    """H on all qubits, then per layer a CNOT chain (k, k+1) and RY on every qubit.

    Parameters are consumed layer-major, qubit-minor.
    """
    params = np.asarray(params, dtype=np.float64).ravel()
    nq = register_qubits(n) + 1
    if params.size == 0 or params.size % nq:
        raise ValueError(f"ABE with {nq} qubits needs a positive multiple of {nq} parameters, got {params.size}")
    s = sv.new_state(nq)
    for k in range(nq):
        s = sv.apply_h(s, k)
    for layer in params.reshape(-1, nq):
        for k in range(nq - 1):
            s = sv.apply_cnot(s, k, k + 1)
        for k, theta in enumerate(layer):
            s = sv.apply_ry(s, k, theta)
    return s


def projectors_from_probabilities(probs, n: int, shots: int | None = None) -> ProjectorEstimates:
    """Split an outcome distribution over (register, ancilla) into per-variable projectors."""
    probs = np.asarray(probs, dtype=np.float64).reshape(-1, 2)
    if probs.shape[0] < n:
        raise ValueError(f"{probs.shape[0]} register states cannot encode {n} variables")
    probs = probs[:n]
    return ProjectorEstimates(probs.sum(axis=1), probs[:, 1].copy(), shots)


def estimate_projectors(h: sv.ShotHistogram, n: int) -> ProjectorEstimates:
    expected = register_qubits(n) + 1
    if h.num_qubits != expected:
        raise ValueError(f"histogram has {h.num_qubits} qubits, expected {expected} for n={n}")
    shots = h.shots
    return projectors_from_probabilities(h.counts / shots, n, shots)


def abe_decode(est: ProjectorEstimates) -> np.ndarray:
    """x_i = 0 when P(ancilla=0 | i) beats P(ancilla=1 | i), else 1 (ties and unseen states give 1)."""
    return ((est.p - est.p1) <= est.p1).astype(np.uint8)


def abe_cost(est: ProjectorEstimates, q: QuboMatrix) -> float:
    """Projector-ratio relaxation of x^T Q x.

    Ordered pairs i != j are summed over the symmetrised Q, so each upper
    coefficient contributes once in total. Zero register probabilities are
    clamped to 1/shots.
    """
    if q.dim != est.p.size:
        raise ValueError(f"QUBO dimension {q.dim} does not match {est.p.size} variables")
    ratio = est.p1 / np.maximum(est.p, est.eps)
    qs = q.symmetrized()
    diag = np.diag(qs)
    off = ratio @ qs @ ratio - np.sum(diag * ratio**2)
    return float(off + diag @ ratio)


def ace_cost(h: sv.ShotHistogram, g: GridGraph) -> float:
    return cut_cost(g, abe_decode(estimate_projectors(h, g.n)))


# --- variational loop ------------------------------------------------------


@dataclass
class SolveResult:
    x: np.ndarray
    cost: float
    result: OptimizerResult = field(repr=False)
    cut_trace: list[float] = field(repr=False, default_factory=list)


def solve(
    g: GridGraph,
    method: str,
    layers: int = 1,
    shots: int = DEFAULT_SHOTS,
    optimizer: str = "de",
    config: OptimizerConfig | None = None,
    seed: int = 0,
) -> SolveResult:
    """Optimise one encoding on ``g`` and decode the best evaluation.

    ABE/ACE draw a fresh histogram per evaluation, seeded from (seed,
    evaluation index). ``cut_trace`` holds the cut value of the bit vector
    decoded at every evaluation, so trainability can be measured against the
    exact optimum for any method. The returned bit vector is the one decoded
    at the best-cost evaluation.
    """
    method = method.lower()
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    cfg = config or OptimizerConfig()
    cfg = OptimizerConfig(**{**cfg.__dict__, "seed": derive_seed(seed, 1)})
    n = g.n
    decoded: list[np.ndarray] = []
    cut_trace: list[float] = []

    if method == "pge":
        lap = laplacian(g)
        dim = 1 << pge_qubits(n)

        def cost(theta):
            x = pge_decode(theta, n)
            decoded.append(x)
            cut_trace.append(cut_cost(g, x))
            return pge_cost(theta, lap)

    else:
        if layers < 1:
            raise ValueError("layers must be >= 1")
        if shots < 1:
            raise ValueError("shots must be >= 1")
        q = to_qubo(g) if method == "abe" else None
        dim = abe_param_count(n, layers)

        def cost(theta):
            state = abe_circuit(theta, n)
            hist = sv.sample(state, shots, derive_seed(seed, 2, len(decoded)))
            est = estimate_projectors(hist, n)
            x = abe_decode(est)
            cut = cut_cost(g, x)
            decoded.append(x)
            cut_trace.append(cut)
            return cut if q is None else abe_cost(est, q)

    res = run_optimizer(optimizer, cost, dim, cfg)
    best_idx = min(range(len(res.trajectory)), key=lambda i: res.trajectory[i][1])
    x = decoded[best_idx]
    return SolveResult(x, cut_cost(g, x), res, cut_trace)
