#!/usr/bin/env python3
"""
Annulus Cover Command Line
==========================

Solve an instance, generate random instances, or run a seeded batch against the oracle.

Usage:
    annulus-cover --action run --instance inst.txt --variant rect-nc --mode constraint
    annulus-cover --action run --instance inst.txt --variant circ --oracle-check --svg out.svg
    annulus-cover --action run --instance inst.txt --variant restricted-u --line-y 0
    annulus-cover --action generate --profile cocircular --seed 3 --n 5 --m 4 --output inst.txt
    annulus-cover --action batch --variant 1d-u --mode penalized --batch 50 --dim 1 --oracle-check

Exit codes: 0 success, 1 other error, 2 instance format error, 3 oracle mismatch, 4 oracle budget refusal.
"""

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from filelock import FileLock
from tabulate import tabulate

from annulus_cover.config import get_config
from annulus_cover.errors import AnnulusCoverError, ErrorCode, InstanceFormatError
from annulus_cover.extensions import init_logging
from annulus_cover.models.geom_core import Instance, Mode, Solution
from annulus_cover.services import VARIANTS, solve, solve_oracle
from annulus_cover.services.oracle import OracleBudget
from annulus_cover.utils.helpers import OperationCounter, format_fraction, to_fraction
from annulus_cover.utils.instance_io import PROFILES, emit_instance, generate, parse_instance, read_instance
from annulus_cover.utils.svg_render import write_svg

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FORMAT = 2
EXIT_MISMATCH = 3
EXIT_BUDGET = 4

EXIT_CODES = {
    ErrorCode.INSTANCE_FORMAT: EXIT_FORMAT,
    ErrorCode.ORACLE_BUDGET: EXIT_BUDGET,
}


@dataclass
class RunReport:
    """Outcome of one solver run, with the oracle comparison when one was made"""

    instance_id: str
    variant: str
    mode: str
    solver_lambda: Any
    oracle_lambda: Any = None
    elapsed: float = 0.0
    counters: Dict[str, Any] = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.oracle_lambda is not None and self.solver_lambda == self.oracle_lambda

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        payload = {
            'instance_id': self.instance_id,
            'variant': self.variant,
            'mode': self.mode,
            'solver_lambda': None if self.solver_lambda is None else format_fraction(self.solver_lambda),
            'oracle_lambda': None if self.oracle_lambda is None else format_fraction(self.oracle_lambda),
            'match': self.match,
            'counters': self.counters,
        }
        if include_timing:
            payload['elapsed'] = round(self.elapsed, 6)
        return payload


def run(instance: Instance, variant: str, mode: Mode = Mode.PENALIZED, line_y=None, oracle_check: bool = False,
        budget: Optional[OracleBudget] = None) -> Tuple[RunReport, Solution, Optional[Solution]]:
    """Solve one instance; with oracle_check also solve it by brute force"""
    mode = Mode(mode)
    if line_y is not None:
        line_y = to_fraction(line_y)
    counter = OperationCounter()
    started = time.perf_counter()
    solution = solve(instance, variant, mode, line_y, counter)
    elapsed = time.perf_counter() - started

    oracle_solution = None
    if oracle_check:
        oracle_solution = solve_oracle(instance, variant, mode, line_y, budget)
    report = RunReport(
        instance_id=instance.id,
        variant=variant,
        mode=mode.value,
        solver_lambda=solution.lambda_value,
        oracle_lambda=oracle_solution.lambda_value if oracle_solution else None,
        elapsed=elapsed,
        counters=counter.to_dict(),
    )
    logger.info("%s %s/%s: lambda=%s in %.4fs", instance.id, variant, mode.value,
                format_fraction(solution.lambda_value), elapsed)
    if oracle_check and not report.match:
        logger.warning("oracle mismatch on %s %s/%s: solver %s, oracle %s", instance.id, variant, mode.value,
                       format_fraction(report.solver_lambda), format_fraction(report.oracle_lambda))
    return report, solution, oracle_solution


def append_report(path: str, report: RunReport) -> None:
    """Append one JSON line; the lock keeps concurrent runs from interleaving"""
    with FileLock(path + '.lock', timeout=10):
        with open(path, 'a', encoding='utf-8') as handle:
            handle.write(json.dumps(report.to_dict(), sort_keys=True) + '\n')


def _batch_job(job: Tuple) -> Tuple[RunReport, Optional[Dict[str, Any]]]:
    seed, profile, n, m, dim, variant, mode, line_y, oracle_check, budget = job
    instance = generate(seed, profile, n, m, dim)
    try:
        report, _, _ = run(instance, variant, mode, line_y, oracle_check, budget)
        return report, None
    except AnnulusCoverError as e:
        return RunReport(instance.id, variant, Mode(mode).value, None), e.to_dict()


def batch(variant: str, mode: Mode, count: int, seed: int, profile: str, n: int, m: int, dim: int,
          line_y=None, oracle_check: bool = False, budget: Optional[OracleBudget] = None,
          workers: int = 1) -> List[Tuple[RunReport, Optional[Dict[str, Any]]]]:
    """Seeded batch; results come back in seed order whatever the worker count"""
    jobs = [(seed + i, profile, n, m, dim, variant, Mode(mode).value, line_y, oracle_check, budget)
            for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_batch_job, jobs))
    return [_batch_job(job) for job in jobs]


def _print_json(payload: Dict[str, Any]) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _action_run(args, settings, budget: OracleBudget) -> int:
    if not args.instance:
        raise AnnulusCoverError("--action run needs --instance (a path, or - for stdin)")
    instance = parse_instance(sys.stdin.read()) if args.instance == '-' else read_instance(args.instance)
    report, solution, oracle_solution = run(instance, args.variant, args.mode, args.line_y,
                                            args.oracle_check, budget)
    payload = solution.to_dict()
    payload['instance_id'] = instance.id
    payload['counters'] = report.counters
    if args.oracle_check:
        payload['oracle'] = oracle_solution.to_dict()
        payload['match'] = report.match
    _print_json(payload)
    if args.svg:
        write_svg(args.svg, instance, solution, settings.svg_size)
    if args.report:
        append_report(args.report, report)
    return EXIT_MISMATCH if args.oracle_check and not report.match else EXIT_OK


def _action_generate(args, settings) -> int:
    seed = settings.default_seed if args.seed is None else args.seed
    text = emit_instance(generate(seed, args.profile, args.n, args.m, args.dim))
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as handle:
            handle.write(text)
        logger.info("wrote %s", args.output)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _action_batch(args, settings, budget: OracleBudget) -> int:
    seed = settings.default_seed if args.seed is None else args.seed
    results = batch(args.variant, args.mode, args.batch, seed, args.profile, args.n, args.m, args.dim,
                    args.line_y, args.oracle_check, budget, settings.batch_workers)
    reports = [report for report, _ in results]
    errors = [error for _, error in results if error]
    if args.report:
        for report in reports:
            append_report(args.report, report)

    if args.json:
        _print_json({'runs': [r.to_dict(include_timing=False) for r in reports], 'errors': errors})
    else:
        rows = [[r.instance_id, r.variant, r.mode,
                 '-' if r.solver_lambda is None else format_fraction(r.solver_lambda),
                 '-' if r.oracle_lambda is None else format_fraction(r.oracle_lambda),
                 r.match if args.oracle_check else '-', f"{r.elapsed:.4f}"] for r in reports]
        print(tabulate(rows, headers=['Instance', 'Variant', 'Mode', 'Solver', 'Oracle', 'Match', 'Seconds'],
                       tablefmt='grid'))

    if any(e.get('error') == ErrorCode.ORACLE_BUDGET.value for e in errors):
        return EXIT_BUDGET
    if errors:
        return EXIT_ERROR
    if args.oracle_check and not all(r.match for r in reports):
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact red-blue annulus cover solvers",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split('Usage:', 1)[1],
    )
    parser.add_argument('--action', choices=['run', 'generate', 'batch'], default='run', help='What to do')
    parser.add_argument('--instance', help='Instance file for --action run (- reads stdin)')
    parser.add_argument('--variant', choices=sorted(VARIANTS), default='1d-nu', help='Annulus family and shape')
    parser.add_argument('--mode', choices=[m.value for m in Mode], default=Mode.PENALIZED.value,
                        help='constraint: cover every red; penalized: minimize total penalty')
    parser.add_argument('--line-y', dest='line_y', help='Center line for the restricted variants (rational)')
    parser.add_argument('--oracle-check', action='store_true', help='Compare against the brute-force oracle')
    parser.add_argument('--svg', help='Write an SVG picture of the solution')
    parser.add_argument('--report', help='Append run reports as JSON lines to this file')
    parser.add_argument('--seed', type=int, help='Generator seed (batch uses seed, seed+1, ...)')
    parser.add_argument('--profile', choices=PROFILES, default='uniform_grid', help='Generator profile')
    parser.add_argument('--n', type=int, default=4, help='Generated red count')
    parser.add_argument('--m', type=int, default=4, help='Generated blue count')
    parser.add_argument('--dim', type=int, choices=[1, 2], default=2, help='Generated dimension')
    parser.add_argument('--batch', type=int, default=10, help='Number of instances for --action batch')
    parser.add_argument('--output', '-o', help='Output file for --action generate')
    parser.add_argument('--json', action='store_true', help='Batch summary as JSON instead of a table')
    parser.add_argument('--config', help='Settings profile: development, testing or production')
    parser.add_argument('--log-level', dest='log_level', help='Override the configured log level')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_config(args.config)
    if args.log_level:
        settings.log_level = args.log_level
    init_logging(settings)
    budget = OracleBudget.from_settings(settings)

    try:
        if args.action == 'generate':
            return _action_generate(args, settings)
        if args.action == 'batch':
            return _action_batch(args, settings, budget)
        return _action_run(args, settings, budget)
    except AnnulusCoverError as e:
        logger.error("%s", e.message)
        _print_json(e.to_dict())
        if e.code is ErrorCode.ORACLE_BUDGET:
            logger.warning("oracle refused the instance: %s", e.message)
        return EXIT_CODES.get(e.code, EXIT_ERROR)
    except UnicodeDecodeError as e:
        error = InstanceFormatError(f"instance is not valid UTF-8 text (byte {e.start})")
        logger.error("%s", error.message)
        _print_json(error.to_dict())
        return EXIT_FORMAT
    except (OSError, ValueError) as e:
        logger.error("%s", e)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
