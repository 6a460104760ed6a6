"""Benchmark sweeps, resource estimates, image segmentation runs and record I/O."""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .encodings import DEFAULT_SHOTS, solve
from .graph import image_to_graph, random_grid
from .optimizers import OptimizerConfig
from .oracle import MAX_VARIABLES, brute_force_min_cut
from .pgm import read_pgm, write_mask

CSV_COLUMNS = (
    "seed", "size", "method", "optimizer", "layers", "shots",
    "obtained", "exact", "rel_error", "evaluations", "wall_time_s",
)
DEFAULT_SEEDS = (111, 222, 333, 444, 555)
MAX_SEGMENT_PIXELS = 1 << 20


def relative_error(obtained: float, exact: float) -> float | None:
    """|obtained - exact| / |exact|; None when the exact value is zero."""
    if exact == 0:
        return None
    return abs(obtained - exact) / abs(exact)


@dataclass
class BenchmarkRecord:
    seed: int
    size: int
    method: str
    optimizer: str
    layers: int
    shots: int
    obtained: float
    exact: float
    rel_error: float | None
    evaluations: int
    wall_time_s: float

    def as_row(self) -> dict:
        return {k: getattr(self, k) for k in CSV_COLUMNS}


# --- resource estimation ----------------------------------------------------


@dataclass(frozen=True)
class ResourceEstimate:
    method: str
    qubits: int
    entanglement_gates: int
    parametric_gates: int
    depth: int
    approximate: bool = False


def resource_estimate(method: str, n: int, layers: int = 1) -> ResourceEstimate:
    """Closed-form qubit and gate counts; n is rounded up to a power of two.

    QAOA values are the leading-order terms of its asymptotic counts.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if layers < 1:
        raise ValueError("layers must be >= 1")
    m = (n - 1).bit_length()
    size = 1 << m
    method = method.lower()
    if method == "pge":
        return ResourceEstimate("pge", m, size - 1, size, size)
    if method in ("abe", "ace"):
        return ResourceEstimate(method, m + 1, layers * m, layers * (m + 1), layers * (m + 1))
    if method == "qaoa":
        return ResourceEstimate("qaoa", size, size**2, layers * size, layers * size**2, approximate=True)
    raise ValueError(f"unknown method {method!r}")


# --- sweeps -----------------------------------------------------------------


@dataclass
class SweepConfig:
    sizes: tuple[int, ...] = (4, 16)
    methods: tuple[str, ...] = ("ace",)
    optimizers: tuple[str, ...] = ("de",)
    layers: tuple[int, ...] = (1,)
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    shots: int = DEFAULT_SHOTS
    optimizer_config: OptimizerConfig = field(default_factory=OptimizerConfig)


def _side(size: int) -> int:
    side = math.isqrt(size)
    if side * side != size:
        raise ValueError(f"size {size} is not a square pixel count")
    if size > MAX_VARIABLES:
        raise ValueError(f"size {size} exceeds the exact-oracle limit of {MAX_VARIABLES}")
    return side


def run_sweep(config: SweepConfig, progress=None) -> list[BenchmarkRecord]:
    """One record per (size, seed, method, optimizer, layers) cell.

    The seed builds the instance and drives the optimizer; PGE ignores the
    layer count, so it runs once per (size, seed, optimizer) with layers=1.
    """
    for size in config.sizes:
        _side(size)
    records = []
    for size in config.sizes:
        for seed in config.seeds:
            g = random_grid(_side(size), seed)
            exact = brute_force_min_cut(g).value
            for method in config.methods:
                for opt in config.optimizers:
                    for layers in (1,) if method == "pge" else config.layers:
                        t0 = time.perf_counter()
                        res = solve(g, method, layers, config.shots, opt, config.optimizer_config, seed)
                        rec = BenchmarkRecord(
                            seed, size, method, opt, layers, config.shots, res.cost, exact,
                            relative_error(res.cost, exact), res.result.evaluations,
                            time.perf_counter() - t0,
                        )
                        records.append(rec)
                        if progress:
                            progress(rec)
    return records


# --- record I/O -------------------------------------------------------------


def emit_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for r in records:
            row = r.as_row()
            row["obtained"], row["exact"] = repr(r.obtained), repr(r.exact)
            row["rel_error"] = "" if r.rel_error is None else repr(r.rel_error)
            row["wall_time_s"] = repr(r.wall_time_s)
            writer.writerow(row)


def read_csv(path) -> list[BenchmarkRecord]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(BenchmarkRecord(
                int(row["seed"]), int(row["size"]), row["method"], row["optimizer"],
                int(row["layers"]), int(row["shots"]), float(row["obtained"]), float(row["exact"]),
                None if row["rel_error"] == "" else float(row["rel_error"]),
                int(row["evaluations"]), float(row["wall_time_s"]),
            ))
    return out


def emit_json(records, path) -> None:
    Path(path).write_text(json.dumps([r.as_row() for r in records], indent=2) + "\n")


def read_json(path) -> list[BenchmarkRecord]:
    return [BenchmarkRecord(**row) for row in json.loads(Path(path).read_text())]


# --- image segmentation -----------------------------------------------------


def segment_image(
    image_path,
    mask_path,
    method: str = "ace",
    layers: int = 1,
    shots: int = DEFAULT_SHOTS,
    optimizer: str = "de",
    seed: int = 0,
    config: OptimizerConfig | None = None,
    summary_path=None,
) -> dict:
    """Segment a PGM image, write the P1 mask and return (and optionally write) a JSON summary.

    Images with at most 24 pixels are also solved exactly and the summary
    reports the exact cost and relative error.
    """
    pixels, maxval = read_pgm(image_path)
    height, width = pixels.shape
    if width * height > MAX_SEGMENT_PIXELS:
        raise ValueError(f"image has {width * height} pixels; limit is {MAX_SEGMENT_PIXELS}")
    g = image_to_graph(pixels.ravel(), width, height, maxval)
    res = solve(g, method, layers, shots, optimizer, config, seed)
    write_mask(mask_path, np.asarray(res.x).reshape(height, width))
    summary = {
        "method": method,
        "optimizer": optimizer,
        "layers": layers,
        "shots": shots,
        "seed": seed,
        "width": width,
        "height": height,
        "cost": res.cost,
        "evaluations": res.result.evaluations,
        "mask": str(mask_path),
    }
    if g.n <= MAX_VARIABLES:
        exact = brute_force_min_cut(g).value
        summary["exact"] = exact
        summary["rel_error"] = relative_error(res.cost, exact)
    if summary_path is not None:
        Path(summary_path).write_text(json.dumps(summary, indent=2) + "\n")
    return summary

