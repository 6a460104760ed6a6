"""Grid graphs over image pixels and the min-cut objective built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .rng import SplitMix64

Edge = tuple[int, int, float]


def grid_edges(width: int, height: int) -> list[tuple[int, int]]:
    """4-neighbourhood node pairs of a row-major grid, sorted by (u, v)."""
    pairs = []
    for r in range(height):
        for c in range(width):
            u = r * width + c
            if c + 1 < width:
                pairs.append((u, u + 1))
            if r + 1 < height:
                pairs.append((u, u + width))
    return pairs


@dataclass(frozen=True)
class GridGraph:
    """Weighted undirected 4-neighbourhood grid; node(r, c) = r * width + c."""

    width: int
    height: int
    edges: tuple[Edge, ...] = field(repr=False)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"grid dimensions must be positive, got {self.width}x{self.height}")
        edges = tuple(sorted((int(u), int(v), float(w)) for u, v, w in self.edges))
        allowed = set(grid_edges(self.width, self.height))
        seen = set()
        for u, v, _ in edges:
            if (u, v) not in allowed:
                raise ValueError(f"({u}, {v}) is not a 4-neighbourhood edge with u < v")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "edges", edges)

    @property
    def n(self) -> int:
        return self.width * self.height

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self.edges:
            return np.zeros(0, int), np.zeros(0, int), np.zeros(0)
        us, vs, ws = zip(*self.edges)
        return np.array(us), np.array(vs), np.array(ws, dtype=np.float64)

    @property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edge endpoints and weights as parallel arrays (u, v, w)."""
        return self._arrays


@dataclass(frozen=True)
class QuboMatrix:
    """Upper-triangular QUBO coefficients; objective is sum_{i<=j} Q[i,j] x_i x_j."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        q = np.array(self.entries, dtype=np.float64)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError(f"QUBO matrix must be square, got shape {q.shape}")
        if np.any(np.tril(q, -1) != 0):
            raise ValueError("QUBO matrix must be upper triangular")
        q.setflags(write=False)
        object.__setattr__(self, "entries", q)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def symmetrized(self) -> np.ndarray:
        """Q with each off-diagonal coefficient split evenly between (i, j) and (j, i)."""
        q = self.entries
        return (q + q.T) / 2.0


def as_bits(x: Sequence[int] | np.ndarray, n: int) -> np.ndarray:
    bits = np.asarray(x, dtype=np.int64).ravel()
    if bits.size != n:
        raise ValueError(f"bit vector has length {bits.size}, expected {n}")
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("bit vector entries must be 0 or 1")
    return bits.astype(np.uint8)


def random_grid(side: int, seed: int) -> GridGraph:
    """Square grid with i.i.d. uniform weights on [-1, 1].

    Weights are drawn from ``SplitMix64(seed)`` in sorted edge order as
    ``(next_u64() >> 12) * 2**-51 - 1``. The 52-bit grid keeps every sum of up
    to four weights exactly representable, so the QUBO diagonal is exact.
    """
    if side < 1:
        raise ValueError(f"side must be >= 1, got {side}")
    rng = SplitMix64(seed)
    edges = [(u, v, (rng.next_u64() >> 12) * 2.0**-51 - 1.0) for u, v in grid_edges(side, side)]
    return GridGraph(side, side, tuple(edges))


def image_to_graph(pixels: Sequence[float], width: int, height: int, max_intensity: float = 255) -> GridGraph:
    """Similarity graph: w = 1 - 2 |I_u - I_v| / max_intensity, in [-1, 1]."""
    if max_intensity <= 0:
        raise ValueError("max_intensity must be positive")
    values = np.asarray(pixels, dtype=np.float64).ravel()
    if values.size != width * height:
        raise ValueError(f"got {values.size} pixels for a {width}x{height} image")
    edges = [
        (u, v, 1.0 - 2.0 * abs(values[u] - values[v]) / max_intensity)
        for u, v in grid_edges(width, height)
    ]
    return GridGraph(width, height, tuple(edges))


def cut_cost(g: GridGraph, x) -> float:
    """Total weight of edges whose endpoints fall in different segments."""
    bits = as_bits(x, g.n)
    us, vs, ws = g.edge_arrays
    return math.fsum(ws[bits[us] != bits[vs]])


def to_qubo(g: GridGraph) -> QuboMatrix:
    q = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        q[u, u] += w
        q[v, v] += w
        q[u, v] += -2.0 * w
    return QuboMatrix(q)


def qubo_value(q: QuboMatrix, x) -> float:
    bits = as_bits(x, q.dim)
    on = np.flatnonzero(bits)
    return math.fsum(q.entries[np.ix_(on, on)].ravel())


def cut_values(g: GridGraph, bits: np.ndarray) -> np.ndarray:
    """Cut value of every row of a (k, n) 0/1 matrix (plain float sums, not fsum)."""
    us, vs, ws = g.edge_arrays
    return (bits[:, us] != bits[:, vs]).astype(np.float64) @ ws


def qubo_values(q: QuboMatrix, bits: np.ndarray) -> np.ndarray:
    """x^T Q x for every row of a (k, n) 0/1 matrix."""
    b = np.asarray(bits, dtype=np.float64)
    return np.einsum("ki,ij,kj->k", b, q.entries, b)


def complement(x) -> np.ndarray:
    return 1 - np.asarray(x, dtype=np.uint8)


def laplacian(g: GridGraph) -> np.ndarray:
    """L = D - A, zero-padded to the next power of two."""
    dim = 1 << (g.n - 1).bit_length() if g.n > 1 else 1
    lap = np.zeros((dim, dim))
    for u, v, w in g.edges:
        lap[u, v] -= w
        lap[v, u] -= w
        lap[u, u] += w
        lap[v, v] += w
    return lap


# --- file formats ---------------------------------------------------------


def write_graph(g: GridGraph, path) -> None:
    """Edge-list text: ``width height`` then one ``u v w`` line per edge."""
    with open(path, "w") as fh:
        fh.write(f"{g.width} {g.height}\n")
        for u, v, w in g.edges:
            fh.write(f"{u} {v} {w!r}\n")


def read_graph(path) -> GridGraph:
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError(f"{path}: first line must be 'width height'")
    width, height = int(lines[0][0]), int(lines[0][1])
    edges = []
    for i, parts in enumerate(lines[1:], start=2):
        if len(parts) != 3:
            raise ValueError(f"{path}:{i}: expected 'u v w'")
        edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
    return GridGraph(width, height, tuple(edges))
