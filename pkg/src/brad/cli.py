"""Command line entry point: ``brad generate | run | bench``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bench
from .errors import BradError
from .workload_gen import GeneratorConfig, generate, load_file, save_file

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

log = logging.getLogger("brad")


class _UsageFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageFailure(f"{self.prog}: error: {message}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("workload", type=Path, help="workload file written by `brad generate`")
    p.add_argument("--agents", type=_positive, default=20, help="search agents (default 20)")
    p.add_argument("--iters", type=_nonnegative, default=100, help="iterations (default 100)")
    p.add_argument("--repeats", type=_positive, default=10, help="repeats, seeds seed..seed+repeats-1")
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--w", type=float, default=-5.0, help="profit balancing factor (negative)")
    p.add_argument("--ub", type=float, default=10.0, help="gene upper bound")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    p.add_argument("--out", type=Path, help="metrics CSV path (stdout if omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="brad", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a seeded synthetic workload")
    d = GeneratorConfig()
    g.add_argument("--out", type=Path, required=True)
    g.add_argument("--services", type=_positive, default=d.n_services)
    g.add_argument("--kinds", type=_positive, default=d.n_kinds)
    g.add_argument("--copies-min", type=_positive, default=d.copies_min)
    g.add_argument("--copies-max", type=_positive, default=d.copies_max)
    g.add_argument("--horizon", type=_positive, default=d.horizon)
    g.add_argument("--request-kinds-max", type=_positive, default=None)
    g.add_argument("--duration-min", type=_positive, default=d.duration_min)
    g.add_argument("--duration-max", type=_positive, default=d.duration_max)
    g.add_argument("--priority-fraction", type=float, default=d.priority_fraction)
    g.add_argument("--seed", type=_nonnegative, default=d.seed)

    r = sub.add_parser("run", help="run one algorithm for several repeats")
    _add_experiment_flags(r)
    r.add_argument("--algo", required=True, choices=bench.ALGORITHMS)
    r.add_argument(
        "--elimination-rule",
        choices=("rationale", "literal", "off"),
        default=None,
        help="gwa only (default rationale)",
    )
    r.add_argument("--convergence", type=Path, help="per-iteration best fitness CSV (gwa/gwo)")

    b = sub.add_parser("bench", help="run all six algorithms and write one summary row each")
    _add_experiment_flags(b)
    b.add_argument("--per-repeat-out", type=Path, help="also write every repeat's row")
    return parser


def _write(path: Optional[Path], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.write_text(text, encoding="utf-8")


def _settings(args, elimination_rule: str = "rationale") -> bench.ExperimentSettings:
    return bench.ExperimentSettings(
        agents=args.agents, iters=args.iters, ub=args.ub, w=args.w, elimination_rule=elimination_rule
    )


def _cmd_generate(args) -> None:
    cfg = GeneratorConfig(
        n_services=args.services,
        n_kinds=args.kinds,
        copies_min=args.copies_min,
        copies_max=args.copies_max,
        horizon=args.horizon,
        request_kinds_max=args.request_kinds_max,
        duration_min=args.duration_min,
        duration_max=args.duration_max,
        priority_fraction=args.priority_fraction,
        seed=args.seed,
    )
    save_file(generate(cfg), args.out)


def _cmd_run(args) -> None:
    if args.algo not in bench.METAHEURISTICS:
        if args.elimination_rule is not None:
            raise _UsageFailure("--elimination-rule only applies to --algo gwa")
        if args.convergence is not None:
            raise _UsageFailure("--convergence only applies to --algo gwa or gwo")
    elif args.algo == "gwo" and args.elimination_rule is not None:
        raise _UsageFailure("--elimination-rule only applies to --algo gwa")
    workload = load_file(args.workload)
    seeds = list(range(args.seed, args.seed + args.repeats))
    settings = _settings(args, args.elimination_rule or "rationale")
    results = bench.run_experiments(workload, [args.algo], seeds, settings, args.jobs)
    records = [r.record for r in results]
    _write(args.out, bench.metrics_csv(records + [bench.aggregate(records)]))
    if args.convergence is not None:
        _write(args.convergence, bench.convergence_csv(results))


def _cmd_bench(args) -> None:
    workload = load_file(args.workload)
    seeds = list(range(args.seed, args.seed + args.repeats))
    results = bench.run_experiments(workload, bench.ALGORITHMS, seeds, _settings(args), args.jobs)
    summary = []
    for algo in bench.ALGORITHMS:
        recs = [r.record for r in results if r.record.algo == algo]
        summary.append(bench.aggregate(recs) if len(recs) > 1 else recs[0])
    _write(args.out, bench.metrics_csv(summary))
    if args.per_repeat_out is not None:
        _write(args.per_repeat_out, bench.metrics_csv(r.record for r in results))


COMMANDS = {"generate": _cmd_generate, "run": _cmd_run, "bench": _cmd_bench}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageFailure as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        COMMANDS[args.command](args)
    except _UsageFailure as exc:
        print(f"brad {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"brad {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BradError as exc:
        # bad workload documents and impossible configs are caller errors
        print(f"brad {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        log.exception("internal failure")
        print(f"brad {args.command}: internal failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
