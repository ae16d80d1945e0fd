# src/cli.py
"""Command-line front end: sweeps to CSV, the verify suite, LHV enumeration, CHSH check.

    python -m src.cli sweep-violation --d 2 4 8 --output artifacts/violation.csv
    python -m src.cli verify --seed 42
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from src.contracts.errors import BellToolkitError, BudgetExceeded, InvalidArgument
from src.contracts.types import QuadratureScheme, QuadratureSpec
from src.numerics import continuum
from src.numerics.optimize import DEFAULT_MAX_ITER, DEFAULT_TOL, METHODS
from src.orchestrator.sweeps import continuum_table, default_d_grid, entropy_table, violation_table
from src.orchestrator.verify import run_verify
from src.quantum.bell import chsh_identity_check, quantum_distributions, tsirelson_lhs
from src.quantum.classical import lhv_minimum
from src.quantum.states import LOG_BASES, maximally_entangled
from src.reports.tables import write_csv, write_distribution_tables

logger = logging.getLogger(__name__)

COMMANDS = ("sweep-violation", "sweep-entropy", "sweep-continuum", "verify", "lhv", "chsh")
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_ARGS = 2
EXIT_BUDGET = 3

OUTPUT_DIR = os.getenv("CGLMP_OUTPUT_DIR", "artifacts")
DEFAULT_WORKERS = int(os.getenv("CGLMP_WORKERS", "1"))

_DEFAULT_OUTPUT = {
    "sweep-violation": "violation.csv",
    "sweep-entropy": "entropy.csv",
    "sweep-continuum": "continuum.csv",
    "verify": "",
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    d_list: Tuple[int, ...]
    delta_list: Tuple[float, ...]
    epsilon: float
    tol: float
    max_iter: int
    method: str
    output_path: Optional[Path]
    log_base: str
    seed: int
    workers: int
    full: bool
    quad: QuadratureSpec
    log_file: Optional[Path] = None
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidArgument(f"unknown command {self.command!r}")
        if not self.d_list:
            raise InvalidArgument("d list must be non-empty")
        if not self.delta_list:
            raise InvalidArgument("delta list must be non-empty")
        if not self.tol > 0:
            raise InvalidArgument(f"tol must be positive, got {self.tol!r}")
        if self.max_iter < 1:
            raise InvalidArgument("max-iter must be >= 1")
        if self.workers < 1:
            raise InvalidArgument("workers must be >= 1")


def _dimension(text: str) -> int:
    """Integer dimension; accepts 1e5-style input when it is a whole number."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"dimension must be an integer, got {text!r}")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="python -m src.cli", description="CGLMP 2x2xd Bell-value toolkit.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--d", nargs="+", type=_dimension, default=None, help="Dimensions (default: powers of two to 2^14 plus 1e3, 1e4, 1e5).")
    p.add_argument("--delta", nargs="+", type=float, default=None, help="Ansatz exponents for sweep-continuum.")
    p.add_argument("--epsilon", type=float, default=continuum.DEFAULT_EPSILON)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--method", choices=METHODS, default="power")
    p.add_argument("--output", default=None, help="CSV path (sweeps) or directory (verify; chsh joint-distribution tables).")
    p.add_argument("--log-base", choices=LOG_BASES, default="natural")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    p.add_argument("--full", action="store_true", help="verify: run the oracle suite up to d = 16.")
    p.add_argument("--quad-scheme", choices=[s.value for s in QuadratureScheme], default=QuadratureScheme.GAUSS.value)
    p.add_argument("--quad-points", type=int, default=QuadratureSpec().points)
    p.add_argument("--quad-tol", type=float, default=QuadratureSpec().target_abs_err)
    p.add_argument("--log-file", default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)

    if args.d is not None:
        d_list = tuple(args.d)
    elif args.command == "lhv":
        d_list = (2, 3)
    else:
        d_list = tuple(default_d_grid())

    if args.output is not None:
        output: Optional[Path] = Path(args.output)
    elif args.command in _DEFAULT_OUTPUT:
        output = Path(OUTPUT_DIR) / _DEFAULT_OUTPUT[args.command]
    else:
        output = None

    return RunConfig(
        command=args.command,
        d_list=d_list,
        delta_list=tuple(args.delta) if args.delta is not None else continuum.DELTA_GRID,
        epsilon=args.epsilon,
        tol=args.tol,
        max_iter=args.max_iter,
        method=args.method,
        output_path=output,
        log_base=args.log_base,
        seed=args.seed,
        workers=args.workers,
        full=args.full,
        quad=QuadratureSpec(scheme=QuadratureScheme(args.quad_scheme), points=args.quad_points, target_abs_err=args.quad_tol),
        log_file=Path(args.log_file) if args.log_file else None,
        verbose=args.verbose,
    )


def configure_logging(cfg: RunConfig) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if cfg.log_file is not None:
        cfg.log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(cfg.log_file, mode="w", encoding="utf-8"))
    logging.basicConfig(level=logging.DEBUG if cfg.verbose else logging.INFO, format=LOG_FORMAT, handlers=handlers, force=True)


def run(cfg: RunConfig) -> int:
    if cfg.command == "sweep-violation":
        df = violation_table(cfg.d_list, tol=cfg.tol, max_iter=cfg.max_iter, method=cfg.method, workers=cfg.workers)
        logger.info("wrote %s", write_csv(df, cfg.output_path))
        return EXIT_OK

    if cfg.command == "sweep-entropy":
        df = entropy_table(cfg.d_list, log_base=cfg.log_base, tol=cfg.tol, max_iter=cfg.max_iter, method=cfg.method, workers=cfg.workers)
        logger.info("wrote %s", write_csv(df, cfg.output_path))
        return EXIT_OK

    if cfg.command == "sweep-continuum":
        df = continuum_table(cfg.delta_list, epsilon=cfg.epsilon, quad=cfg.quad, workers=cfg.workers)
        logger.info("wrote %s", write_csv(df, cfg.output_path))
        return EXIT_OK

    if cfg.command == "verify":
        out_dir = cfg.output_path or Path(OUTPUT_DIR)
        report = run_verify(out_dir, seed=cfg.seed, full=cfg.full, workers=cfg.workers)
        status = "PASS" if report.passed else "FAIL"
        print(f"verify: {status} ({report.check_count} checks, {len(report.issues)} issues)")
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED

    if cfg.command == "lhv":
        for d in cfg.d_list:
            value, w = lhv_minimum(d)
            print(f"d={d} min={value} witness=(a1={w.a1}, a2={w.a2}, b1={w.b1}, b2={w.b2})")
        return EXIT_OK

    # chsh
    dists = quantum_distributions(maximally_entangled(2))
    s, lhs, resid = chsh_identity_check(dists)
    if cfg.output_path is not None:
        for path in write_distribution_tables(dists, cfg.output_path):
            logger.info("wrote %s", path)
    print(json.dumps({"S": s, "lhs": lhs, "lhs_expected": tsirelson_lhs(), "identity_residual": resid}, indent=2))
    return EXIT_OK


def _fail(e: BaseException, code: int) -> int:
    print(json.dumps({"error": str(e), "type": type(e).__name__}), file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    except InvalidArgument as e:
        return _fail(e, EXIT_INVALID_ARGS)

    configure_logging(cfg)
    try:
        return run(cfg)
    except BudgetExceeded as e:
        return _fail(e, EXIT_BUDGET)
    except InvalidArgument as e:
        return _fail(e, EXIT_INVALID_ARGS)
    except BellToolkitError as e:
        # non-convergence: the run could not produce a verified result
        return _fail(e, EXIT_VERIFY_FAILED)


if __name__ == "__main__":
    sys.exit(main())
