#!/usr/bin/env python3
"""
Command-line entry point for sustain5g.

Subcommands: analyze, sweep, simulate, failsafe, validate. Exit codes:
0 success, 1 failed validation suite, 2 invalid configuration, 3 numerical failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from sustain5g.commands import (
    SUITES,
    OutputDirectory,
    analyze,
    load_run_config,
    model_json,
    print_analysis,
    print_failsafe,
    print_simulation,
    print_validation,
    run_sweep,
    run_validation,
    scan_csv,
    scan_failsafe,
    simulate,
    sweep_csv,
    traces_csv,
)
from sustain5g.commands.validate import DEFAULT_EI_TOLERANCE
from sustain5g.config import get_settings
from sustain5g.errors import ConfigFileError, InfeasibleConfigError, NumericalError
from sustain5g.models.network_models import (
    FailSafeCriterion,
    NetworkConfig,
    OverheadInterpretation,
)
from sustain5g.models.run_models import RunConfig
from sustain5g.models.sim_models import SimConfig

logger = logging.getLogger("sustain5g")

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_INVALID_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sustain5g",
        description="Sustainability, fail-safe points and key-update scheduling for 5G-V2X",
    )
    parser.add_argument("--verbose", action="store_true", help="Log progress at INFO level")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--config", type=str, default=None, help="JSON run configuration")
        sub.add_argument("--out", type=str, default=None, help="Directory for result files")

    sub = commands.add_parser("analyze", help="Evaluate one network configuration")
    common(sub)
    sub.add_argument("--interpretation", choices=[i.value for i in OverheadInterpretation],
                     help="Overhead time factor used for M_O")

    sub = commands.add_parser("sweep", help="Sweep β, Q and E and emit one row per combination")
    common(sub)
    sub.add_argument("--interpretation", choices=[i.value for i in OverheadInterpretation])
    sub.add_argument("--format", choices=["csv", "json"], default="csv")

    sub = commands.add_parser("simulate", help="Seeded authentication simulation")
    common(sub)
    sub.add_argument("--seed", type=int, default=None, help="u64 seed, overrides sim.seed")
    sub.add_argument("--passes-sweep", type=int, nargs="+", default=None,
                     help="Re-run with these Q values on the same random streams")
    sub.add_argument("--format", choices=["text", "json"], default="text")

    sub = commands.add_parser("failsafe", help="Locate the fail-safe point")
    common(sub)
    sub.add_argument("--criterion", choices=[c.value for c in FailSafeCriterion],
                     default=FailSafeCriterion.SUSTAINABILITY_RATE.value)
    sub.add_argument("--interpretation", choices=[i.value for i in OverheadInterpretation])
    sub.add_argument("--format", choices=["text", "csv"], default="text")

    sub = commands.add_parser("validate", help="Run the numerical oracle suites")
    sub.add_argument("--only", choices=list(SUITES), default=None)
    sub.add_argument("--ei-tolerance", type=float, default=DEFAULT_EI_TOLERANCE)
    return parser


def _network(run_config: RunConfig, args: argparse.Namespace) -> NetworkConfig:
    network = run_config.network or NetworkConfig.reference()
    interpretation = getattr(args, "interpretation", None)
    if interpretation:
        network = NetworkConfig.model_validate(
            {**network.model_dump(), "overhead_interpretation": OverheadInterpretation(interpretation)}
        )
    return network


def _output(args: argparse.Namespace, argv: List[str], run_config: RunConfig,
            seed: Optional[int] = None):
    if not args.out:
        return None
    return OutputDirectory(Path(args.out), args.command, argv, args.config, seed, run_config)


def cmd_analyze(args: argparse.Namespace, argv: List[str]) -> int:
    run_config = load_run_config(args.config)
    result = analyze(_network(run_config, args), run_config.constraints)
    print_analysis(result)
    out = _output(args, argv, run_config)
    if out:
        out.write("analysis.json", model_json(result))
        out.close()
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, argv: List[str]) -> int:
    run_config = load_run_config(args.config)
    rows = run_sweep(_network(run_config, args), run_config.sweep)
    if args.format == "json":
        text = "[\n" + ",\n".join(row.model_dump_json() for row in rows) + "\n]\n"
        name = "sweep.json"
    else:
        text = sweep_csv(rows)
        name = "sweep.csv"
    out = _output(args, argv, run_config)
    if out:
        out.write(name, text)
        out.close()
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, argv: List[str]) -> int:
    run_config = load_run_config(args.config)
    if args.seed is not None:
        base = run_config.sim.model_dump() if run_config.sim else {}
        sim = SimConfig.model_validate({**base, "seed": args.seed})
    elif run_config.sim is not None:
        sim = run_config.sim
    else:
        raise ConfigFileError("simulate needs a seed: pass --seed or set sim.seed")

    result = simulate(_network(run_config, args), sim, run_config.policy, args.passes_sweep)
    out = _output(args, argv, run_config, sim.seed)
    if out:
        out.write("sim_stats.json", model_json(result.stats))
        out.write("comparison.json", model_json(result.comparison))
        out.write("traces.csv", traces_csv(result.stats))
        out.write("keys.txt", result.key_dump)
        out.close()
    if args.format == "json":
        sys.stdout.write(model_json(result.stats))
    else:
        print_simulation(result)
    return EXIT_OK


def cmd_failsafe(args: argparse.Namespace, argv: List[str]) -> int:
    run_config = load_run_config(args.config)
    result = scan_failsafe(
        _network(run_config, args), FailSafeCriterion(args.criterion), run_config.constraints
    )
    if args.format == "csv":
        sys.stdout.write(scan_csv(result.report))
    else:
        print_failsafe(result)
    out = _output(args, argv, run_config)
    if out:
        out.write("failsafe.json", model_json(result))
        out.write("failsafe_scan.csv", scan_csv(result.report))
        out.close()
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, argv: List[str]) -> int:
    results = run_validation(args.only, args.ei_tolerance)
    print_validation(results)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION_FAILED


COMMANDS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
    "failsafe": cmd_failsafe,
    "validate": cmd_validate,
}


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)

    level = logging.INFO if args.verbose else get_settings().log_level.upper()
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return COMMANDS[args.command](args, argv)
    except (ValidationError, InfeasibleConfigError, ConfigFileError) as e:
        print(f"❌ Invalid configuration: {e}", file=sys.stderr)
        return EXIT_INVALID_CONFIG
    except NumericalError as e:
        print(f"❌ Numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
