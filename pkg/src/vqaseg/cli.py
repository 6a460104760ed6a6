"""Command-line entry point: ``vqaseg {gen,solve,segment,bench,resources,oracle}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .encodings import DEFAULT_SHOTS, METHODS, solve
from .graph import cut_cost, random_grid, read_graph, write_graph
from .harness import (
    DEFAULT_SEEDS, SweepConfig, emit_csv, emit_json, resource_estimate, run_sweep, segment_image,
)
from .optimizers import OPTIMIZERS, OptimizerConfig
from .oracle import brute_force_min_cut

log = logging.getLogger("vqaseg")


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(",", " ").split())


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(t.lower() for t in text.replace(",", " ").split())


def _emit(obj, out) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _opt_config(args) -> OptimizerConfig:
    return OptimizerConfig(max_evaluations=args.max_evals, tolerance=args.tol)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=METHODS, default="ace")
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.add_argument("--optimizer", choices=OPTIMIZERS, default="de")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-evals", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-6)


def cmd_gen(args) -> int:
    write_graph(random_grid(args.side, args.seed), args.out)
    return 0


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    res = solve(g, args.method, args.layers, args.shots, args.optimizer, _opt_config(args), args.seed)
    _emit({
        "method": args.method,
        "optimizer": args.optimizer,
        "layers": args.layers,
        "shots": args.shots,
        "seed": args.seed,
        "x": [int(b) for b in res.x],
        "cost": res.cost,
        "evaluations": res.result.evaluations,
        "converged": res.result.converged,
    }, args.out)
    return 0


def cmd_segment(args) -> int:
    summary = segment_image(
        args.image, args.out, args.method, args.layers, args.shots, args.optimizer, args.seed,
        _opt_config(args), args.summary,
    )
    if args.summary is None:
        _emit(summary, None)
    return 0


def cmd_bench(args) -> int:
    cfg = SweepConfig(
        sizes=args.sizes, methods=args.methods, optimizers=args.optimizers, layers=args.layers,
        seeds=args.seeds, shots=args.shots, optimizer_config=_opt_config(args),
    )
    records = run_sweep(cfg, progress=lambda r: log.info(
        "size=%d seed=%d %s/%s L=%d obtained=%.6g exact=%.6g evals=%d",
        r.size, r.seed, r.method, r.optimizer, r.layers, r.obtained, r.exact, r.evaluations))
    (emit_csv if args.format == "csv" else emit_json)(records, args.out)
    return 0


def cmd_resources(args) -> int:
    rows = []
    for n in args.sizes:
        for layers in args.layers:
            for method in args.methods:
                rows.append(resource_estimate(method, n, layers).__dict__ | {"n": n, "layers": layers})
    if args.format == "json":
        _emit(rows, args.out)
        return 0
    cols = ["method", "n", "layers", "qubits", "entanglement_gates", "parametric_gates", "depth", "approximate"]
    lines = [",".join(cols)] + [",".join(str(r[c]) for c in cols) for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    g = read_graph(args.graph)
    sol = brute_force_min_cut(g)
    _emit({
        "x": [int(b) for b in sol.argmin],
        "value": sol.value,
        "evaluated": sol.evaluated,
        "check": cut_cost(g, sol.argmin),
    }, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vqaseg", description="Min-cut image segmentation with qubit-efficient VQAs")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a seeded random grid graph")
    p.add_argument("--side", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve a graph file with one encoding")
    p.add_argument("graph")
    _add_solver_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("segment", help="segment a PGM image into a P1 mask")
    p.add_argument("image")
    _add_solver_flags(p)
    p.add_argument("--out", required=True, help="mask path (P1)")
    p.add_argument("--summary", help="JSON summary path (default: stdout)")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("bench", help="run a benchmark sweep against the exact oracle")
    p.add_argument("--sizes", type=_int_list, default=(4, 16))
    p.add_argument("--methods", "--method", type=_str_list, default=("ace",))
    p.add_argument("--optimizers", "--optimizer", type=_str_list, default=("de",))
    p.add_argument("--layers", type=_int_list, default=(1,))
    p.add_argument("--seeds", type=_int_list, default=DEFAULT_SEEDS)
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.add_argument("--max-evals", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("resources", help="print qubit/gate estimates")
    p.add_argument("--sizes", type=_int_list, default=(4, 16, 1024, 1 << 20))
    p.add_argument("--layers", type=_int_list, default=(1,))
    p.add_argument("--methods", "--method", type=_str_list, default=("qaoa", "pge", "abe", "ace"))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_resources)

    p = sub.add_parser("oracle", help="exact min cut by exhaustive search")
    p.add_argument("graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    for name in getattr(args, "methods", ()):
        if name not in METHODS + ("qaoa",) or (name == "qaoa" and args.command != "resources"):
            raise SystemExit(f"unknown method {name!r}")
    for name in getattr(args, "optimizers", ()):
        if name not in OPTIMIZERS:
            raise SystemExit(f"unknown optimizer {name!r}")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"vqaseg: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
