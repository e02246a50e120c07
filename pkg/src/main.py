"""
Command-line entry point: `python -m src.main <gen|learn|sweep|verify> ...`.

Exit codes: 0 success, 1 algorithmic failure (missed accuracy, failed check),
2 usage or input errors.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from .commands.contracts import RunConfig
from .commands.gen import cmd_gen
from .commands.learn import cmd_learn
from .commands.sweep import cmd_sweep
from .commands.verify import cmd_verify
from .config import settings
from .errors import HamLearnError
from .observability.metrics import get_metrics_text
from .observability.otel import setup_tracing
from .utils.logging import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

COMMANDS = {
    "gen": cmd_gen,
    "learn": cmd_learn,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def _name_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamlearn",
        description="Hamiltonian learning with a minimum evolution time: simulator and checks.",
    )
    parser.add_argument("--log-level", default=None, help=f"Log level (default {settings.LOG_LEVEL}).")
    parser.add_argument("--log-format", choices=["text", "json"], default=None)
    parser.add_argument("--metrics-out", type=Path, default=None,
                        help="Write Prometheus metrics text here on exit.")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    def instance_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, help="Number of qubits.")
        p.add_argument("--m", type=int, help="Pauli sparsity; never read from the instance.")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", dest="output", type=Path)

    def learn_args(p: argparse.ArgumentParser) -> None:
        instance_args(p)
        p.add_argument("--in", dest="input", type=Path, help="Hamiltonian text file.")
        p.add_argument("--T", type=float, default=1.0, help="Minimum evolution time.")
        p.add_argument("--K", type=int)
        p.add_argument("--regime", choices=["log", "poly", "log_sparse", "poly_sparse"],
                       default="log")
        p.add_argument("--rho", type=float, default=1.0, help="Constant relaxation (>= 1).")
        p.add_argument("--delta", type=float, default=0.05)
        p.add_argument("--mode", default="exact", help="exact | noisy:<sigma> | sampled")
        p.add_argument("--force-sql", action="store_true",
                       help="Run every iteration on the standard-quantum-limit branch.")

    instance_args(sub.add_parser("gen", help="Generate a random sparse Hamiltonian."))

    learn = sub.add_parser("learn", help="Run the main learning loop once.")
    learn_args(learn)
    learn.add_argument("--epsilon", type=float)

    sweep = sub.add_parser("sweep", help="Epsilon-scaling sweep, CSV plus fitted slope.")
    learn_args(sweep)
    sweep.add_argument("--epsilons", type=_float_list, default=[])

    verify = sub.add_parser("verify", help="Run the inequality checks.")
    verify.add_argument("--checks", type=_name_list, default=[])
    verify.add_argument("--trials", type=int)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--bound-scale", type=float, default=1.0)
    verify.add_argument("--out", dest="output", type=Path)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {
        key: value for key, value in vars(args).items()
        if key not in ("log_level", "log_format", "metrics_out") and value is not None
    }
    return RunConfig(**values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    setup_logging(settings.LOG_FILE, level=args.log_level, log_format=args.log_format)
    setup_tracing()

    try:
        config = config_from_args(args)
        return COMMANDS[config.subcommand](config)
    except ValidationError as e:
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"]) or "config"
            logger.error(f"invalid {location}: {error['msg']}")
        return EXIT_USAGE
    except HamLearnError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_USAGE
    finally:
        if args.metrics_out is not None:
            args.metrics_out.write_text(get_metrics_text())


if __name__ == "__main__":
    sys.exit(main())
