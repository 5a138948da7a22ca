"""Command-line front end: entropy reports, transforms, extremization runs,
and the built-in reproduction suite.

Exit codes: 0 success, 1 reproduction-suite mismatch, 2 usage error,
3 input parse error, 4 numerical-consistency error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from .entanglement import Partition, rank_bound, schmidt_spectrum
from .errors import (
    DegenerateStateError,
    DimensionError,
    NotNormalizedError,
    NotUnitaryError,
    NumericalConsistencyError,
    ParseError,
    PartitionError,
)
from .ketparse import format_state, parse_state, parse_unitary_file
from .optimize import OptConfig, optimize_entanglement
from .suite import run_reference_suite
from .transform import apply_redefinition

USAGE_ERROR = 2
PARSE_ERROR = 3
NUMERICAL_ERROR = 4


@dataclass
class Report:
    """Single record behind both the table and the JSON rendering."""

    input: str
    partition: str | None = None
    lambdas: list[float] | None = None
    entropy_bits: float | None = None
    rank: int | None = None
    rank_bound: int | None = None
    direction: str | None = None
    best: float | None = None
    restart_values: list[float] | None = None
    seed: int | None = None
    wall_ms: float | None = None

    _ORDER = (
        "input", "partition", "lambdas", "entropy_bits", "rank",
        "rank_bound", "direction", "best", "restart_values", "seed", "wall_ms",
    )

    def to_json(self) -> str:
        doc = {k: getattr(self, k) for k in self._ORDER if getattr(self, k) is not None}
        return json.dumps(doc)

    def to_table(self) -> str:
        lines = []
        for key in self._ORDER:
            value = getattr(self, key)
            if value is None:
                continue
            if key == "lambdas" or key == "restart_values":
                text = ", ".join(f"{v:.6f}" for v in value)
            elif isinstance(value, float):
                text = f"{value:.6f}"
            else:
                text = str(value)
            lines.append(f"{key:<14} {text}")
        return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockmodes",
        description="Mode-basis rewriting and entanglement extremization "
        "for photonic number states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    entropy = sub.add_parser("entropy", help="Schmidt spectrum and entropy")
    entropy.add_argument("state", help="ket expression, e.g. \"|01>+|10>\"")
    entropy.add_argument("--partition", required=True, help="e.g. 0,1|2,3")
    entropy.add_argument("--json", action="store_true")

    transform = sub.add_parser("transform", help="rewrite a state under a unitary")
    transform.add_argument("state")
    transform.add_argument("--unitary", required=True, help="path to a unitary JSON file")
    transform.add_argument("--json", action="store_true")

    optimize = sub.add_parser("optimize", help="extremize entropy over mode redefinitions")
    optimize.add_argument("state")
    optimize.add_argument("--partition", required=True)
    optimize.add_argument("--direction", required=True, choices=("min", "max"))
    optimize.add_argument("--restarts", type=int, default=24)
    optimize.add_argument("--seed", type=int, default=0)
    optimize.add_argument("--json", action="store_true")

    bound = sub.add_parser("rank-bound", help="Schmidt rank bound across a partition")
    bound.add_argument("state")
    bound.add_argument("--partition", required=True)
    bound.add_argument("--json", action="store_true")

    suite = sub.add_parser(
        "paper-suite", help="run the built-in reproduction table of reference values"
    )
    suite.add_argument("--json", action="store_true")
    suite.add_argument("--seed", type=int, default=0)

    return parser


def _cmd_entropy(args) -> int:
    start = time.perf_counter()
    state = parse_state(args.state)
    partition = Partition.from_string(args.partition)
    spectrum = schmidt_spectrum(state, partition)
    report = Report(
        input=args.state,
        partition=str(partition),
        lambdas=[float(v) for v in spectrum.lambdas],
        entropy_bits=spectrum.entropy_bits,
        rank=spectrum.numerical_rank,
        rank_bound=rank_bound(state, partition),
        wall_ms=(time.perf_counter() - start) * 1000.0,
    )
    print(report.to_json() if args.json else report.to_table())
    return 0


def _cmd_transform(args) -> int:
    state = parse_state(args.state)
    with open(args.unitary, "rb") as fh:
        unitary = parse_unitary_file(fh.read())
    result = format_state(apply_redefinition(state, unitary))
    if args.json:
        print(json.dumps({"input": args.state, "output": result}))
    else:
        print(result)
    return 0


def _cmd_optimize(args) -> int:
    start = time.perf_counter()
    state = parse_state(args.state)
    partition = Partition.from_string(args.partition)
    cfg = OptConfig(direction=args.direction, restarts=args.restarts, seed=args.seed)
    result = optimize_entanglement(state, partition, cfg)
    spectrum = schmidt_spectrum(
        apply_redefinition(state, result.best_unitary), partition
    )
    report = Report(
        input=args.state,
        partition=str(partition),
        lambdas=[float(v) for v in spectrum.lambdas],
        entropy_bits=result.best_entropy_bits,
        rank=spectrum.numerical_rank,
        rank_bound=rank_bound(state, partition),
        direction=result.direction,
        best=result.best_entropy_bits,
        restart_values=list(result.per_restart_values),
        seed=args.seed,
        wall_ms=(time.perf_counter() - start) * 1000.0,
    )
    print(report.to_json() if args.json else report.to_table())
    return 0


def _cmd_rank_bound(args) -> int:
    start = time.perf_counter()
    state = parse_state(args.state)
    partition = Partition.from_string(args.partition)
    report = Report(
        input=args.state,
        partition=str(partition),
        rank_bound=rank_bound(state, partition),
        wall_ms=(time.perf_counter() - start) * 1000.0,
    )
    print(report.to_json() if args.json else report.to_table())
    return 0


def _cmd_suite(args) -> int:
    rows = run_reference_suite(seed=args.seed)
    all_pass = all(row.passed for row in rows)
    if args.json:
        doc = {
            "seed": args.seed,
            "rows": [
                {
                    "id": row.row_id,
                    "label": row.label,
                    "expected": row.expected,
                    "computed": row.computed,
                    "tolerance": row.tolerance,
                    "mode": row.mode,
                    "pass": row.passed,
                }
                for row in rows
            ],
            "all_pass": all_pass,
        }
        print(json.dumps(doc))
    else:
        width = max(len(row.label) for row in rows)
        for row in rows:
            verdict = "PASS" if row.passed else "FAIL"
            relation = ">" if row.mode == "gt" else "~"
            print(
                f"[{verdict}] {row.row_id:>5}  {row.label:<{width}}  "
                f"expected {relation} {row.expected:.6f}  "
                f"computed {row.computed:.6f}  tol {row.tolerance:g}"
            )
        print(f"{'all rows pass' if all_pass else 'SUITE MISMATCH'}")
    return 0 if all_pass else 1


_HANDLERS = {
    "entropy": _cmd_entropy,
    "transform": _cmd_transform,
    "optimize": _cmd_optimize,
    "rank-bound": _cmd_rank_bound,
    "paper-suite": _cmd_suite,
}


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return _HANDLERS[args.command](args)
    except (ParseError, NotUnitaryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    except (PartitionError, DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (NumericalConsistencyError, NotNormalizedError, DegenerateStateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
