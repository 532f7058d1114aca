#!/usr/bin/env python3
"""
Command-line front end: construct, eval, decompose and verify.

Exit codes: 0 success, 1 a failed case, 2 invalid parameters,
3 internal assertion or unexpected error.
"""

import argparse
import json
import os
import sys
from typing import Iterable, List, Optional

import numpy as np

from .config_manager import ConfigManager
from .construct import NORMALIZATIONS, construct
from .errors import CalogeroError, InternalAssertionError, InvalidParameterError
from .harmonics import decompose_harmonic
from .logger import get_logger, setup_logging
from .partitions import Partition
from .reports import STATUS_FAIL, STATUS_NON_GENERIC, STATUS_PASS, summarize
from .scalars import FAMILIES, Params, parse_rational
from .spectrum import hamiltonian_residual, wavefunction_eval
from .suites import SUITES, RunConfig, SuiteRunner

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config.json')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--family', type=str.upper, choices=FAMILIES, help="A (Hermite) or B (Laguerre)")
    common.add_argument('--n', type=int, help="Number of variables")
    common.add_argument('--g0', help="Pair coupling as a rational string, e.g. 1/2")
    common.add_argument('--g1', help="Wall coupling (family B) as a rational string")
    common.add_argument('--omega', help="Confinement frequency as a rational string")
    common.add_argument('--lambda', dest='lam', help="Partition, e.g. 2,1 (padded with zeros to n)")
    common.add_argument('--max-weight', type=int, help="Largest |lambda| in a verification grid")
    common.add_argument('--r', type=int, help="Operator or Pieri order")
    common.add_argument('--seed', type=int, default=0, help="Seed for sampled points (default: 0)")
    common.add_argument('--tol', type=float, help="Float tolerance override")
    common.add_argument('--deep', action='store_true', help="Use the extended verification grid")
    common.add_argument('--out', help="Write output to this path instead of stdout")
    common.add_argument('--json', action='store_true', help="Emit JSON lines instead of a text report")
    common.add_argument('--normalization', choices=NORMALIZATIONS, default='monic')
    common.add_argument('--points', help="Whitespace-separated points file for eval, one point per row")
    common.add_argument('--residual', action='store_true', help="Add a Hamiltonian residual column to eval")
    common.add_argument('--h', type=float, help="Finite-difference step")
    common.add_argument('--timings', action='store_true', help="Include elapsed seconds in reports")
    common.add_argument('--config', help="Configuration file (default: config.json next to main.py)")
    common.add_argument('--log-level', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'), type=str.upper)

    parser = argparse.ArgumentParser(
        prog='calogero',
        description="Exact multivariable Hermite and Laguerre polynomials of the Calogero system")
    commands = parser.add_subparsers(dest='command', required=True)
    commands.add_parser('construct', parents=[common], help="Build p_lambda and print it as JSON")
    verify = commands.add_parser('verify', parents=[common], help="Run a verification suite")
    verify.add_argument('suite', choices=SUITES + ('all',))
    commands.add_parser('eval', parents=[common], help="Evaluate p_lambda and psi_lambda at float points")
    commands.add_parser('decompose', parents=[common], help="Separate p_lambda into radial and harmonic parts")
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """Validate CLI values into a RunConfig; rationals stay exact"""
    cfg = RunConfig(
        command=args.command,
        suite=getattr(args, 'suite', None),
        family=args.family,
        n=args.n,
        g0=parse_rational(args.g0, 'g0') if args.g0 is not None else None,
        g1=parse_rational(args.g1, 'g1') if args.g1 is not None else None,
        omega=parse_rational(args.omega, 'omega') if args.omega is not None else None,
        max_weight=args.max_weight,
        r=args.r,
        seed=args.seed,
        tol=args.tol,
        deep=args.deep,
        out=args.out,
        json=args.json,
        normalization=args.normalization,
        points=args.points,
        residual=args.residual,
        h=args.h,
        timings=args.timings,
        config=args.config,
        log_level=args.log_level,
    )
    if cfg.n is not None and cfg.n < 1:
        raise InvalidParameterError(f"--n must be positive, got {cfg.n}")
    if cfg.max_weight is not None and cfg.max_weight < 0:
        raise InvalidParameterError(f"--max-weight must be nonnegative, got {cfg.max_weight}")
    if cfg.r is not None and cfg.r < 1:
        raise InvalidParameterError(f"--r must be positive, got {cfg.r}")
    if cfg.h is not None and cfg.h <= 0:
        raise InvalidParameterError(f"--h must be positive, got {cfg.h}")
    if args.lam is not None:
        cfg.lam = Partition.parse(args.lam, cfg.n)
        if cfg.n is None:
            cfg.n = cfg.lam.n
    return cfg


def single_params(cfg: RunConfig) -> Params:
    """Params of a single-polynomial command; defaults A, g0 = g1 = 0, omega = 1"""
    if cfg.lam is None:
        raise InvalidParameterError(f"{cfg.command} needs --lambda")
    return Params(cfg.family or 'A', cfg.lam.n,
                  cfg.g0 if cfg.g0 is not None else 0,
                  cfg.g1 if cfg.g1 is not None else 0,
                  cfg.omega if cfg.omega is not None else 1)


def emit(lines: Iterable[str], out: Optional[str]):
    text = ''.join(f"{line}\n" for line in lines)
    if out:
        with open(out, 'w') as f:
            f.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def cmd_construct(cfg: RunConfig) -> int:
    params = single_params(cfg)
    poly = construct(cfg.lam, params, cfg.normalization)
    emit([json.dumps(poly.to_json(), sort_keys=True)], cfg.out)
    return EXIT_OK


def cmd_decompose(cfg: RunConfig) -> int:
    params = single_params(cfg)
    emit([json.dumps(decompose_harmonic(cfg.lam, params).to_json(), sort_keys=True)], cfg.out)
    return EXIT_OK


def load_points(path: Optional[str], n: int) -> np.ndarray:
    if not path:
        raise InvalidParameterError("eval needs --points")
    try:
        points = np.loadtxt(path, ndmin=2, dtype=float)
    except (OSError, ValueError) as e:
        raise InvalidParameterError(f"cannot read points from {path}: {e}")
    if points.size == 0:
        return np.zeros((0, n))
    if points.shape[1] != n:
        raise InvalidParameterError(f"points in {path} have {points.shape[1]} coordinates, expected {n}")
    return points


def cmd_eval(cfg: RunConfig, config: ConfigManager) -> int:
    params = single_params(cfg)
    points = load_points(cfg.points, params.n)
    h = cfg.h if cfg.h is not None else config.get('spectrum', 'h', 1e-3)
    tol = cfg.tol if cfg.tol is not None else config.get('spectrum', 'tol', 1e-5)
    rows: List[str] = []
    failed = False
    for x in points:
        record = {'x': x.tolist()}
        if not np.all(np.isfinite(x)):
            record['error'] = 'non-finite coordinate'
            failed = True
            rows.append(json.dumps(record, sort_keys=True))
            continue
        p, psi = wavefunction_eval(cfg.lam, params, x[None, :])
        record['p'] = float(p[0])
        record['psi'] = float(psi[0])
        if cfg.residual:
            try:
                residual = float(hamiltonian_residual(cfg.lam, params, x[None, :], h)[0])
                record['residual'] = residual
                record['withinTol'] = residual <= tol
            except CalogeroError as e:
                logger.warning(f"Residual skipped at {x.tolist()}: {e}")
                record['error'] = f"{type(e).__name__}: {e}"
                failed = True
        rows.append(json.dumps(record, sort_keys=True))
    emit(rows, cfg.out)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_verify(cfg: RunConfig, config: ConfigManager) -> int:
    runner = SuiteRunner(config, cfg)
    reports = runner.run(cfg.suite)
    summary = summarize(reports)
    if cfg.json:
        lines = [report.to_json(cfg.timings) for report in reports]
    else:
        lines = [f"{report.status.upper():12s} {report.suite:17s} {report.case}" for report in reports]
        lines.append(f"{len(reports)} cases: {summary[STATUS_PASS]} passed, {summary[STATUS_FAIL]} failed, "
                     f"{summary[STATUS_NON_GENERIC]} non-generic")
    emit(lines, cfg.out)
    return EXIT_FAILED if any(report.failed for report in reports) else EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.config or DEFAULT_CONFIG, args.log_level)
    try:
        cfg = run_config_from_args(args)
        config = ConfigManager(cfg.config, create_missing=False)
        if cfg.command == 'construct':
            return cmd_construct(cfg)
        if cfg.command == 'decompose':
            return cmd_decompose(cfg)
        if cfg.command == 'eval':
            return cmd_eval(cfg, config)
        return cmd_verify(cfg, config)
    except InvalidParameterError as e:
        logger.error(f"Invalid parameters: {e}")
        return EXIT_INVALID
    except InternalAssertionError as e:
        logger.critical(f"Internal assertion failed: {e}")
        return EXIT_INTERNAL
    except CalogeroError as e:
        logger.error(f"Error running {args.command}: {e}")
        return EXIT_FAILED
    except Exception as e:
        logger.exception(f"Unexpected error running {args.command}: {e}")
        return EXIT_INTERNAL
