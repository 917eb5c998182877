"""qpsurf CLI: robustness, sampling cost and logical error rate estimates."""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import IO, TYPE_CHECKING, Any

from qpsurf import (
    DecompositionStrategy,
    NoiseModel,
    NoiseParams,
    OutputFormat,
    decompose,
    robustness,
    robustness_grid,
    scaling_table,
)
from qpsurf._config import default_delta, default_epsilon
from qpsurf._exceptions import (
    InfeasibleBudgetError,
    QpsurfError,
    SweepFileError,
)

if TYPE_CHECKING:
    from qpsurf._engine import RunConfig

__all__ = ("main",)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

_MODELS = {model.value: model for model in NoiseModel}
_STRATEGIES = {strategy.value: strategy for strategy in DecompositionStrategy}
_FORMATS = {fmt.value: fmt for fmt in OutputFormat}

_HEATMAP_P = (0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1)
_HEATMAP_R = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)

# Value type of every key a sweep file may declare.
_SWEEP_KEYS: dict[str, type] = {
    "model": str,
    "d": int,
    "p": float,
    "r": float,
    "samples": int,
    "epsilon": float,
    "delta": float,
    "seed": int,
}
_SWEEP_REQUIRED = ("d", "p", "r")

log = logging.getLogger("qpsurf.cli")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpsurf",
        description="Surface-code logical error rates under coherent noise.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {_version()}",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-vv for debug output).",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    rob = sub.add_parser(
        "robustness",
        help="Print the robustness and, for the joint strategy, the decomposition.",
    )
    _add_noise_args(rob)
    _add_strategy_arg(rob)

    cst = sub.add_parser("cost", help="Print the sampling cost per distance.")
    _add_model_arg(cst)
    cst.add_argument(
        "--d",
        type=int,
        nargs="+",
        required=True,
        metavar="D",
        help="One or more odd code distances in 3..13.",
    )
    _add_noise_args(cst)
    _add_accuracy_args(cst)
    _add_strategy_arg(cst)

    hm = sub.add_parser("heatmap", help="Print a robustness table over (p, r).")
    hm.add_argument(
        "--p",
        type=float,
        nargs="+",
        default=list(_HEATMAP_P),
        metavar="P",
        help="Bit-flip probabilities (rows).",
    )
    hm.add_argument(
        "--r",
        type=float,
        nargs="+",
        default=list(_HEATMAP_R),
        metavar="R",
        help="Noise coherence values (columns).",
    )
    _add_strategy_arg(hm)

    run = sub.add_parser("run", help="Estimate the logical error rate.")
    _add_model_arg(run)
    run.add_argument("--d", type=int, required=True, help="Code distance.")
    _add_noise_args(run)
    run.add_argument(
        "--samples",
        type=int,
        metavar="N",
        help="Explicit sample count (overrides --epsilon/--delta).",
    )
    _add_accuracy_args(run)
    _add_output_args(run)

    swp = sub.add_parser(
        "sweep", help="Run every configuration declared in a JSON file."
    )
    swp.add_argument(
        "file",
        help="JSON object mapping keys (model, d, p, r, samples, epsilon, "
        "delta, seed) to a value or a list of values.",
    )
    _add_model_arg(swp, required=False)
    swp.add_argument("--samples", type=int, metavar="N", help="Default sample count.")
    _add_accuracy_args(swp)
    _add_output_args(swp)

    return parser


def _add_model_arg(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "--model",
        choices=list(_MODELS),
        required=required,
        default=None if required else NoiseModel.CODE_CAPACITY.value,
        help="Noise model: code (code capacity) or pheno (phenomenological).",
    )


def _add_noise_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--p", type=float, required=True, help="Bit-flip probability in [0, 0.5)."
    )
    parser.add_argument(
        "--r", type=float, required=True, help="Noise coherence in [0, 1]."
    )


def _add_accuracy_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--epsilon",
        type=float,
        default=None,
        help="Additive accuracy (default: $QPSURF_EPSILON or 0.01).",
    )
    parser.add_argument(
        "--delta",
        type=float,
        default=None,
        help="Failure probability (default: $QPSURF_DELTA or 0.05).",
    )


def _add_strategy_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--strategy",
        choices=list(_STRATEGIES),
        default=DecompositionStrategy.JOINT.value,
        help="Decompose the noise jointly (default) or its parts separately.",
    )


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="Master seed (default: $QPSURF_SEED or 0).",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Worker processes (default: $QPSURF_WORKERS or 1).",
    )
    parser.add_argument(
        "--out",
        default=None,
        metavar="PATH",
        help="Result file (default: standard output).",
    )
    parser.add_argument(
        "--format",
        choices=list(_FORMATS),
        default=OutputFormat.JSONL.value,
        help="Result file format.",
    )
    parser.add_argument(
        "--no-check-clearance",
        action="store_true",
        help="Skip re-checking the syndrome after each recovery.",
    )


def _version() -> str:
    try:
        from qpsurf import __version__

        return __version__
    except ImportError:
        return "unknown"


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _cmd_robustness(args: argparse.Namespace) -> int:
    params = NoiseParams(p=args.p, r=args.r)
    strategy = _STRATEGIES[args.strategy]
    print(f"R = {_fmt(robustness(params, strategy))}")
    # Coefficients exist only for the joint decomposition.
    if strategy is DecompositionStrategy.JOINT:
        for tag, coeff in decompose(params).coeffs.items():
            print(f"c_{tag.value} = {_fmt(coeff)}")
    return EXIT_OK


def _cmd_cost(args: argparse.Namespace) -> int:
    params = NoiseParams(p=args.p, r=args.r)
    epsilon = args.epsilon if args.epsilon is not None else default_epsilon()
    delta = args.delta if args.delta is not None else default_delta()
    rows = scaling_table(
        _MODELS[args.model],
        args.d,
        params,
        epsilon,
        delta,
        _STRATEGIES[args.strategy],
    )
    for row in rows:
        samples = str(row.samples_m) if row.feasible else "infeasible"
        print(
            f"model={row.model.value} d={row.d} locations={row.locations} "
            f"log10(R_tot^2)={row.log10_r_tot_squared:.6f} "
            f"R_tot^2={_fmt(row.r_tot_squared)} M={samples}"
        )
    if not all(row.feasible for row in rows):
        print("error: sample count exceeds 2**63 - 1", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


def _cmd_heatmap(args: argparse.Namespace) -> int:
    grid = robustness_grid(args.p, args.r, _STRATEGIES[args.strategy])
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["p\\r", *(_fmt(r) for r in args.r)])
    for p, row in zip(args.p, grid):
        writer.writerow([_fmt(p), *(f"{value:.6f}" for value in row)])
    return EXIT_OK


def _run_config(entry: dict[str, Any], args: argparse.Namespace) -> RunConfig:
    from qpsurf._engine import RunConfig

    kwargs: dict[str, Any] = {
        "model": _MODELS[entry.get("model", args.model)],
        "d": entry["d"],
        "noise": NoiseParams(p=entry["p"], r=entry["r"]),
    }
    for key in ("samples", "epsilon", "delta", "seed"):
        value = entry.get(key, getattr(args, key, None))
        if value is not None:
            kwargs[key] = value
    if args.workers is not None:
        kwargs["workers"] = args.workers
    if args.no_check_clearance:
        kwargs["check_clearance"] = False
    return RunConfig(**kwargs)


@contextmanager
def _output(path: str | None) -> Iterator[IO[str]]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        yield fh


def _execute(entries: list[dict[str, Any]], args: argparse.Namespace) -> int:
    from qpsurf import estimate
    from qpsurf._records import RecordWriter, ResultRecord

    configs = [_run_config(entry, args) for entry in entries]
    # Plan every configuration before any sampling starts.
    for config in configs:
        config.resolve_samples()
    log.info("Planned %d configuration(s)", len(configs))

    version = _version()
    with _output(args.out) as stream:
        writer = RecordWriter(stream, _FORMATS[args.format])
        for config in configs:
            result = estimate(config)
            writer.write(ResultRecord.from_estimate(config, result, version))
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    entry = {"model": args.model, "d": args.d, "p": args.p, "r": args.r}
    return _execute([entry], args)


def _load_sweep(path: str) -> list[dict[str, Any]]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SweepFileError(f"Cannot read sweep file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SweepFileError(f"Sweep file {path} is not valid JSON: {exc}") from exc

    if not isinstance(data, dict) or not data:
        raise SweepFileError("Sweep file must hold a non-empty JSON object")
    missing = [key for key in _SWEEP_REQUIRED if key not in data]
    if missing:
        raise SweepFileError(f"Sweep file lacks required keys: {', '.join(missing)}")

    keys: list[str] = []
    axes: list[list[Any]] = []
    for key, raw in data.items():
        if key not in _SWEEP_KEYS:
            raise SweepFileError(f"Unknown sweep key {key!r}")
        values = raw if isinstance(raw, list) else [raw]
        if not values:
            raise SweepFileError(f"Sweep key {key!r} has no values")
        keys.append(key)
        axes.append([_sweep_value(key, value) for value in values])
    return [dict(zip(keys, combo)) for combo in itertools.product(*axes)]


def _sweep_value(key: str, value: Any) -> Any:
    kind = _SWEEP_KEYS[key]
    if kind is str:
        if value not in _MODELS:
            raise SweepFileError(f"Unknown model {value!r} for key {key!r}")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SweepFileError(f"Sweep key {key!r} needs numbers, got {value!r}")
    if kind is int:
        if value != int(value):
            raise SweepFileError(f"Sweep key {key!r} needs integers, got {value!r}")
        return int(value)
    return float(value)


def _cmd_sweep(args: argparse.Namespace) -> int:
    return _execute(_load_sweep(args.file), args)


_COMMANDS = {
    "robustness": _cmd_robustness,
    "cost": _cmd_cost,
    "heatmap": _cmd_heatmap,
    "run": _cmd_run,
    "sweep": _cmd_sweep,
}


def main() -> None:
    parser = _build_parser()
    args = parser.parse_args()

    if args.verbose:
        level = logging.DEBUG if args.verbose > 1 else logging.INFO
        logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
        logging.getLogger("qpsurf").setLevel(level)

    handler = _COMMANDS.get(args.command)
    if handler is None:  # pragma: no cover
        parser.print_help()
        sys.exit(EXIT_USAGE)

    try:
        code = handler(args)
    except InfeasibleBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INFEASIBLE
    except QpsurfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    sys.exit(code)
