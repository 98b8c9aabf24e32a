"""Command-line interface: test, power, dependogram, simulate.

Exit codes: 0 success, 2 invalid input, 1 internal error.  Every command is a
deterministic function of its flags and input file bytes (the elapsed_ms
field of test reports is the one wall-clock exception).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__, fileio
from .exceptions import InvalidInputError
from .harness import run_power
from .inference import dependogram, min_permutations, permutation_test
from .metrics import Metric
from .simulate import ScenarioConfig, gen_scenario
from .stats_core import Functional, StatisticSpec

_METRIC_CHOICES = [m.value for m in Metric]
_FUNCTIONAL_CHOICES = [f.value for f in Functional]
_TWO_RATE_SCENARIOS = ("C6", "C7", "X-OU-Y-OU", "X-FOU-Y-FOU")


def _threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("RECUR_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidInputError(f"RECUR_THREADS must be an integer, got {env!r}") from None
    return 1


def _parse_levels(text: str) -> list[float]:
    try:
        levels = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise InvalidInputError(f"levels must be a comma-separated float list, got {text!r}") from None
    if not levels:
        raise InvalidInputError("at least one level is required")
    for a in levels:
        if not 0.0 < a < 1.0:
            raise InvalidInputError(f"level must be in (0, 1), got {a}")
    return levels


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_test(args) -> int:
    spec = StatisticSpec(
        functional=Functional.parse(args.functional),
        metric_x=Metric.parse(args.metric_x),
        metric_y=Metric.parse(args.metric_y),
    )
    levels = _parse_levels(args.levels)
    x = fileio.read_dataset(args.x)
    y = fileio.read_dataset(args.y)
    if x.shape[0] != y.shape[0]:
        raise InvalidInputError(
            f"row counts differ: {args.x} has {x.shape[0]}, {args.y} has {y.shape[0]}"
        )
    report = permutation_test(x, y, spec, args.perms, args.seed, threads=_threads(args.threads))
    _write_text(args.out, fileio.report_to_json(report, levels, __version__))
    return 0


def _cmd_power(args) -> int:
    study = fileio.read_power_config(args.config)
    result = run_power(study, threads=_threads(args.threads))
    _write_text(args.out, fileio.power_result_to_csv(result))
    return 0


def _cmd_dependogram(args) -> int:
    spec = StatisticSpec(
        functional=Functional.parse(args.functional),
        metric_x=Metric.parse(args.metric),
        metric_y=Metric.parse(args.metric),
    )
    levels = _parse_levels(args.levels)
    for a in levels:
        if args.perms < min_permutations(a):
            raise InvalidInputError(
                f"level {a} needs at least {min_permutations(a)} permutations, got {args.perms}"
            )
    data = fileio.read_dataset(args.data)
    groups = fileio.parse_groups(args.groups, data.shape[1])
    samples = [data[:, g.start : g.stop] for g in groups]
    dep = dependogram(
        samples,
        spec,
        args.perms,
        args.seed,
        levels,
        labels=[g.name for g in groups],
        threads=_threads(args.threads),
    )
    _write_text(args.out, fileio.dependogram_to_csv(dep, levels))
    return 0


def _cmd_simulate(args) -> int:
    if args.scenario in _TWO_RATE_SCENARIOS and (args.lambda1 is None or args.lambda2 is None):
        raise InvalidInputError(
            f"scenario {args.scenario} requires explicit --lambda1 and --lambda2"
        )
    kwargs = {"scenario": args.scenario, "n": args.n, "length": args.len, "seed": args.seed}
    if args.phi is not None:
        try:
            kwargs["phi"] = tuple(float(v) for v in args.phi.split(","))
        except ValueError:
            raise InvalidInputError(f"--phi must be a comma-separated float list, got {args.phi!r}") from None
    if args.theta is not None:
        kwargs["theta"] = args.theta
    if args.hurst is not None:
        kwargs["hurst"] = args.hurst
    if args.lam is not None:
        kwargs["lam"] = args.lam
    if args.lambda1 is not None:
        kwargs["lam1"] = args.lambda1
    if args.lambda2 is not None:
        kwargs["lam2"] = args.lambda2
    if args.sigma is not None:
        kwargs["sigma"] = args.sigma
    xs, ys = gen_scenario(ScenarioConfig(**kwargs))
    fileio.write_dataset(args.out_x, xs)
    fileio.write_dataset(args.out_y, ys)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recurtest",
        description="Recurrence-rate independence tests between samples in metric spaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="permutation independence test between two CSV samples")
    p_test.add_argument("--x", required=True, help="CSV file of the first sample")
    p_test.add_argument("--y", required=True, help="CSV file of the second sample")
    p_test.add_argument("--functional", required=True, choices=_FUNCTIONAL_CHOICES)
    p_test.add_argument("--metric-x", required=True, choices=_METRIC_CHOICES)
    p_test.add_argument("--metric-y", required=True, choices=_METRIC_CHOICES)
    p_test.add_argument("--perms", required=True, type=int, help="number of permutations")
    p_test.add_argument("--seed", required=True, type=int)
    p_test.add_argument("--out", help="write the JSON report here (default: stdout)")
    p_test.add_argument("--levels", default="0.05,0.1", help="comma-separated decision levels")
    p_test.add_argument("--threads", type=int, help="worker cap (default: RECUR_THREADS or 1)")
    p_test.set_defaults(func=_cmd_test)

    p_power = sub.add_parser("power", help="Monte-Carlo power study from a JSON config")
    p_power.add_argument("--config", required=True, help="JSON study config")
    p_power.add_argument("--out", help="write the CSV table here (default: stdout)")
    p_power.add_argument("--threads", type=int, help="worker cap (default: RECUR_THREADS or 1)")
    p_power.set_defaults(func=_cmd_power)

    p_dep = sub.add_parser("dependogram", help="pairwise tests between column groups of one CSV")
    p_dep.add_argument("--data", required=True, help="CSV data file")
    p_dep.add_argument("--groups", required=True, help='column partition "name=c0:c1;name=c2:c3;..." (half-open)')
    p_dep.add_argument("--functional", required=True, choices=_FUNCTIONAL_CHOICES)
    p_dep.add_argument("--metric", required=True, choices=_METRIC_CHOICES, help="metric used for every group")
    p_dep.add_argument("--perms", required=True, type=int)
    p_dep.add_argument("--levels", default="0.05,0.1")
    p_dep.add_argument("--seed", required=True, type=int)
    p_dep.add_argument("--out", help="write the CSV table here (default: stdout)")
    p_dep.add_argument("--threads", type=int)
    p_dep.set_defaults(func=_cmd_dependogram)

    p_sim = sub.add_parser("simulate", help="emit synthetic scenario data as two CSV files")
    p_sim.add_argument("--scenario", required=True)
    p_sim.add_argument("--n", required=True, type=int, help="number of replications (rows)")
    p_sim.add_argument("--len", required=True, type=int, help="series length (columns)")
    p_sim.add_argument("--seed", required=True, type=int)
    p_sim.add_argument("--out-x", required=True)
    p_sim.add_argument("--out-y", required=True)
    p_sim.add_argument("--phi", help="comma-separated autoregressive coefficients")
    p_sim.add_argument("--theta", type=float)
    p_sim.add_argument("--hurst", type=float)
    p_sim.add_argument("--lambda", dest="lam", type=float)
    p_sim.add_argument("--lambda1", type=float)
    p_sim.add_argument("--lambda2", type=float)
    p_sim.add_argument("--sigma", type=float)
    p_sim.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        # argparse exits 2 on flag errors, 0 on --help/--version
        return int(err.code or 0)
    try:
        return args.func(args)
    except InvalidInputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # noqa: BLE001 - contract: unexpected failure -> 1
        print(f"internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
