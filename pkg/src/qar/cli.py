"""Command-line front end: steady, sweep, dynamics, rcmap and reduced"""

import argparse
import logging
import os
import sys
from typing import Callable, Dict, List, Optional, TextIO

import pandas as pd
from dotenv import load_dotenv

from src.services.simulation_service import SimulationService

from .config import ModelConfig
from .errors import ConfigError, QarError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def cmd_steady(config: ModelConfig, service: Optional[SimulationService] = None) -> pd.DataFrame:
    """Populations, currents, noise and performance of one parameter point"""
    return (service or SimulationService(config.workers)).steady(config)


def cmd_sweep(config: ModelConfig, service: Optional[SimulationService] = None) -> pd.DataFrame:
    """One row per grid point (row-major) or per random draw"""
    return (service or SimulationService(config.workers)).sweep(config)


def cmd_dynamics(config: ModelConfig, service: Optional[SimulationService] = None) -> pd.DataFrame:
    """Thermalization times per N, or trajectories with dynamics.trajectory"""
    return (service or SimulationService(config.workers)).dynamics(config)


def cmd_rcmap(config: ModelConfig, service: Optional[SimulationService] = None) -> pd.DataFrame:
    """Reaction-coordinate parameters and sampled densities"""
    return (service or SimulationService(config.workers)).rcmap(config)


def cmd_reduced(config: ModelConfig, service: Optional[SimulationService] = None) -> pd.DataFrame:
    """Reduced-model analytics against the numeric three-level solutions"""
    return (service or SimulationService(config.workers)).reduced_table(config)


COMMANDS: Dict[str, Callable[..., pd.DataFrame]] = {
    "steady": cmd_steady,
    "sweep": cmd_sweep,
    "dynamics": cmd_dynamics,
    "rcmap": cmd_rcmap,
    "reduced": cmd_reduced,
}


def write_csv(table: pd.DataFrame, out: Optional[str], stream: Optional[TextIO] = None) -> None:
    """Comma-separated, header row, UNIX newlines, 17 significant digits"""
    kwargs = dict(index=False, float_format="%.17g", lineterminator="\n")
    if out:
        table.to_csv(out, encoding="utf-8", **kwargs)
    else:
        table.to_csv(stream or sys.stdout, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qar",
        description="Superradiant quantum absorption refrigerator simulator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py steady                                  # reference point, N=31
  python main.py steady --reduced --set N=51             # three-level model
  python main.py sweep --set sweep.x.path=N --set sweep.x.grid=odd \\
                       --set sweep.x.lo=5 --set sweep.x.hi=51 --workers 4
  python main.py sweep --set sweep.random=100 --set seed=7
  python main.py dynamics --set dynamics.n_values=11,21,31
  python main.py rcmap --set rcmap.cutoffs=5,10,50 --out rc.csv
  python main.py reduced --config configs/reference.conf
        """,
    )
    parser.add_argument("command", choices=list(COMMANDS), help="What to compute")
    parser.add_argument("--config", type=str, default=None, help="Flat key = value config file")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a config key (repeatable)",
    )
    parser.add_argument("--out", type=str, default=None, help="Output CSV path (default stdout)")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes for sweeps")
    parser.add_argument("--reduced", action="store_true", help="Use the three-level reduced model")
    parser.add_argument(
        "--log-level",
        type=str,
        default=None,
        help="Logging level (default from QAR_LOG_LEVEL or WARNING)",
    )
    return parser


def load_config(args: argparse.Namespace) -> ModelConfig:
    """Merge defaults, file, --set overrides and dedicated flags"""
    overrides: List[str] = list(args.overrides)
    if args.workers is not None:
        overrides.append(f"workers={args.workers}")
    if args.out is not None:
        overrides.append(f"out={args.out}")
    if args.reduced:
        overrides.append("reduced=true")
    return ModelConfig.from_file(args.config, overrides)


def main(argv: Optional[List[str]] = None, stream: Optional[TextIO] = None) -> int:
    """Run one command and return the process exit code"""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK

    level = (args.log_level or os.getenv("QAR_LOG_LEVEL", "WARNING")).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT)

    try:
        config = load_config(args)
    except ConfigError as exc:
        logger.error(f"Configuration error: {exc}")
        return EXIT_CONFIG

    try:
        table = COMMANDS[args.command](config, SimulationService(config.workers))
    except ConfigError as exc:
        logger.error(f"Configuration error: {exc}")
        return EXIT_CONFIG
    except QarError as exc:
        logger.error(f"Numerical failure in '{args.command}': {exc}")
        return EXIT_NUMERICAL

    write_csv(table, config.out, stream)
    logger.info(f"Wrote {len(table)} row(s)")
    return EXIT_OK
