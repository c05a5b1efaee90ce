"""
Command-line entry point.

Usage:
    multiboost toygen --n 20 --out data/toy.csv
    multiboost run --algo discrete --rounds 500 --data data/toy.csv --out runs/toy.json
    multiboost analyze --trace runs/toy.json --data data/toy.csv --out reports/toy
    multiboost depth-study --depths 1,3,6,10 --rounds 60 --out reports/depth
    multiboost kernel-demo --out reports/kernel

Exit codes: 0 ok, 1 unexpected failure, 2 configuration, 3 parse (dataset or
trace), 4 numerical.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from multiboost.cli.experiments import (
    RunConfig,
    analyze,
    depth_study,
    depth_study_data,
    kernel_demo,
    run,
    toygen,
)
from multiboost.cli.ingest import ingest_csv
from multiboost.config.settings import (
    PROJECT_ROOT,
    KernelDemoConfig,
    Settings,
    build_settings,
    get_settings,
    load_yaml_config,
)
from multiboost.core.errors import (
    ConfigError,
    DatasetParseError,
    KindMismatchError,
    MultiboostError,
    NumericalError,
    TraceFormatError,
)
from multiboost.learners.factory import LearnerSpec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_PARSE = 3
EXIT_NUMERIC = 4


def setup_logging(level: str = "INFO", log_file: Optional[str] = None) -> None:
    """Configure logging to the console and, when given, a log file."""
    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    date_format = "%Y-%m-%d %H:%M:%S"

    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        log_path = Path(log_file)
        if not log_path.is_absolute():
            log_path = PROJECT_ROOT / log_path
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path, mode="a", encoding="utf-8"))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=log_format,
        datefmt=date_format,
        handlers=handlers,
    )


def _depths(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Depths must be comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiboost", description="AdaBoost formulations, dynamics and ensemble analysis"
    )
    parser.add_argument("--config", type=Path, default=None, help="Settings YAML (default: config/settings.yaml)")
    parser.add_argument("--log-file", type=str, default=None, help="Also log to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("toygen", help="Write the 2-D toy grid as CSV")
    p.add_argument("--n", type=int, default=20, help="Points per axis")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("run", help="Run one booster and write its trace")
    p.add_argument(
        "--algo",
        required=True,
        choices=["discrete", "m1", "samme", "real", "gradient", "mirror", "poe", "kernel", "real-additive"],
    )
    p.add_argument("--rounds", type=int, default=None, help="Boosting rounds (default from settings)")
    p.add_argument("--learner", type=str, default="stump", help="stump or tree:<depth>")
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--cycle-tol", type=float, default=None)
    p.add_argument("--eps-clamp", type=float, default=None)
    p.add_argument("--cost", choices=["exponential", "logistic"], default="exponential", help="gradient view only")
    p.add_argument("--no-stop-on-perfect", action="store_true", help="Keep boosting after a zero-error round")

    p = sub.add_parser("analyze", help="Cycle, Birkhoff, margin and similarity reports for a trace")
    p.add_argument("--trace", type=Path, required=True)
    p.add_argument("--data", type=Path, default=None, help="Training data (enables margin/similarity reports)")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--cycle-tol", type=float, default=None)
    p.add_argument("--birkhoff-periods", type=int, default=None)

    p = sub.add_parser("depth-study", help="Boost trees of several depths and compare the sequences")
    p.add_argument("--data", type=Path, default=None, help="CSV dataset (default: synthetic blobs)")
    p.add_argument("--depths", type=_depths, default=None, help="Comma-separated depths")
    p.add_argument("--rounds", type=int, default=None)
    p.add_argument("--algo", choices=["discrete", "m1", "samme"], default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--track", action="store_true", help="Log each depth to MLflow")

    p = sub.add_parser("kernel-demo", help="Residual boosting vs boosting kernels on a noisy sine")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--rounds", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load_settings(config_path: Optional[Path]) -> Settings:
    if config_path is None:
        return get_settings()
    return build_settings(load_yaml_config(config_path))


def _cmd_toygen(args: argparse.Namespace) -> None:
    if args.n < 2:
        raise ConfigError(f"Toy grid needs at least 2 points per axis, got {args.n}")
    toygen(args.n, args.out)


def _cmd_run(args: argparse.Namespace, settings: Settings) -> None:
    learner = LearnerSpec.parse(args.learner, random_state=args.seed or 0)
    try:
        cfg = RunConfig(
            algo=args.algo,
            rounds=args.rounds if args.rounds is not None else settings.boosting.rounds,
            learner=learner,
            seed=args.seed,
            data=args.data,
            out=args.out,
            cycle_tol=args.cycle_tol if args.cycle_tol is not None else settings.dynamics.cycle_tol,
            eps_clamp=args.eps_clamp if args.eps_clamp is not None else settings.boosting.eps_clamp,
            cost=args.cost,
            stop_on_eps_half=settings.boosting.stop_on_eps_half,
            stop_on_perfect=settings.boosting.stop_on_perfect and not args.no_stop_on_perfect,
        )
    except ValidationError as e:
        raise ConfigError(f"Invalid run configuration: {e}") from e
    run(cfg, ingest_csv(cfg.data), settings.kernel_demo)


def _cmd_analyze(args: argparse.Namespace, settings: Settings) -> None:
    data = ingest_csv(args.data) if args.data else None
    analyze(
        args.trace,
        args.out,
        data=data,
        cycle_tol=args.cycle_tol if args.cycle_tol is not None else settings.dynamics.cycle_tol,
        birkhoff_periods=args.birkhoff_periods or settings.dynamics.birkhoff_periods,
    )


def _cmd_depth_study(args: argparse.Namespace, settings: Settings) -> None:
    study = settings.depth_study
    data = ingest_csv(args.data) if args.data else depth_study_data(study, seed=args.seed)
    depths = args.depths or study.depths
    rounds = args.rounds if args.rounds is not None else study.rounds
    if rounds < 1:
        raise ConfigError(f"Rounds must be >= 1, got {rounds}")
    summary = depth_study(
        data,
        depths,
        rounds,
        args.out,
        threads=settings.runtime.threads,
        algo=args.algo,
        seed=args.seed,
        cycle_tol=study.cycle_tol,
    )
    if args.track:
        from multiboost.cli.tracking import configure_tracking, log_run

        configure_tracking()
        for row in summary.to_dict(orient="records"):
            depth = int(row["depth"])
            log_run(
                run_name=f"depth_{depth}",
                params={"depth": depth, "algo": row["algo"], "rounds": rounds, "m": data.m, "K": data.K},
                metrics={
                    "mean_kappa": row["mean_kappa"],
                    "final_accuracy": row["final_accuracy"],
                    "entry_time": row["entry_time"],
                    "period": row["period"],
                },
                artifacts=[args.out / f"kappa_depth{depth}.csv", args.out / f"accuracy_vs_kept_depth{depth}.csv"],
                artifact_path="depth_study",
            )


def _cmd_kernel_demo(args: argparse.Namespace, settings: Settings) -> None:
    cfg = settings.kernel_demo
    if args.rounds is not None:
        try:
            cfg = KernelDemoConfig(**{**cfg.model_dump(), "rounds": args.rounds})
        except ValidationError as e:
            raise ConfigError(f"Invalid kernel demo configuration: {e}") from e
    kernel_demo(cfg, args.out, seed=args.seed)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run the subcommand and map failures to exit codes.

    Returns:
        Exit code
    """
    args = build_parser().parse_args(argv)

    try:
        settings = _load_settings(args.config)
    except (ConfigError, FileNotFoundError) as e:
        setup_logging()
        logger.error(f"Configuration failed: {e}")
        return EXIT_CONFIG

    setup_logging(settings.runtime.log_level, args.log_file or settings.runtime.log_file)

    commands = {
        "toygen": lambda: _cmd_toygen(args),
        "run": lambda: _cmd_run(args, settings),
        "analyze": lambda: _cmd_analyze(args, settings),
        "depth-study": lambda: _cmd_depth_study(args, settings),
        "kernel-demo": lambda: _cmd_kernel_demo(args, settings),
    }
    try:
        commands[args.command]()
        return EXIT_OK
    except (ConfigError, KindMismatchError, ValidationError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except (DatasetParseError, TraceFormatError) as e:
        logger.error(f"Parse error: {e}")
        return EXIT_PARSE
    except NumericalError as e:
        logger.error(f"Numerical failure: {e}")
        return EXIT_NUMERIC
    except MultiboostError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
