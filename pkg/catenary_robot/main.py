# catenary_robot/main.py
import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from catenary_robot.errors import CatenaryError
from catenary_robot.harness.engine import run
from catenary_robot.harness.export import export, plot, read_trace
from catenary_robot.harness.metrics import SummaryStats, stats
from catenary_robot.harness.scenario import BUILTIN_DESCRIPTIONS, get_builtin, load_scenario
from catenary_robot.utils.config import config
from catenary_robot.utils.logger import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIVERGED = 2


class UsageError(Exception):
    """Command line could not be parsed"""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors instead of exiting with 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='catenary-robot', description='Catenary robot simulation and control')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    run_parser = sub.add_parser('run', help='Run a scenario and write its trace')
    run_parser.add_argument('--scenario', required=True, help='Built-in name or scenario file')
    run_parser.add_argument('--dt', type=float, help='Integration step in seconds')
    run_parser.add_argument('--duration', type=float, help='Simulated time in seconds')
    run_parser.add_argument('--tension-mode', choices=['classical', 'paper', 'sag'],
                            help="Tension feed-forward; 'sag' is an alias of 'paper'")
    run_parser.add_argument('--no-feedforward', action='store_true',
                            help='Disable tension feed-forward')
    run_parser.add_argument('--out', help='Trace path (.csv or .json)')
    run_parser.add_argument('--log-rate', type=float, help='Logging rate in Hz')

    sub.add_parser('list', help='List built-in scenarios')

    show_parser = sub.add_parser('show', help='Print a built-in scenario document')
    show_parser.add_argument('name')

    plot_parser = sub.add_parser('plot', help='Plot trace channels to SVG')
    plot_parser.add_argument('trace')
    plot_parser.add_argument('--channels', default='x_C,span,yaw',
                             help='Comma-separated channel groups or columns')
    plot_parser.add_argument('--out', required=True, help='SVG path')

    stats_parser = sub.add_parser('stats', help='Summary statistics of a trace')
    stats_parser.add_argument('trace')
    stats_parser.add_argument('--from', dest='window_start', type=float,
                              default=config.get_sim_config()['stats_from_s'],
                              help='Window start in seconds')
    return parser


def _print_summary(summary: SummaryStats) -> None:
    print(json.dumps(summary.to_dict(), indent=2))


def cmd_run(args) -> int:
    spec = load_scenario(args.scenario).with_overrides(
        dt=args.dt,
        duration_s=args.duration,
        tension=args.tension_mode,
        feedforward=False if args.no_feedforward else None,
        log_hz=args.log_rate,
    )
    out = Path(args.out) if args.out else config.get_paths()['output_dir'] / f"{spec.name}.csv"
    fmt = 'json' if out.suffix.lower() == '.json' else 'csv'

    trace = run(spec)
    export(trace, fmt, out)
    _print_summary(trace.summary)

    if trace.diverged:
        logger.error(f"Run diverged, partial trace in {out}: {trace.message}")
        return EXIT_DIVERGED
    return EXIT_OK


def cmd_list(args) -> int:
    for name, description in BUILTIN_DESCRIPTIONS.items():
        print(f"{name:16s} {description}")
    return EXIT_OK


def cmd_show(args) -> int:
    print(json.dumps(get_builtin(args.name).to_document(), indent=2))
    return EXIT_OK


def cmd_plot(args) -> int:
    plot(read_trace(args.trace), args.channels, args.out)
    return EXIT_OK


def cmd_stats(args) -> int:
    _print_summary(stats(read_trace(args.trace), args.window_start))
    return EXIT_OK


COMMANDS = {
    'run': cmd_run,
    'list': cmd_list,
    'show': cmd_show,
    'plot': cmd_plot,
    'stats': cmd_stats,
}


def main(argv: Optional[List[str]] = None) -> int:
    """命令行入口"""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except CatenaryError as e:
        logger.error(f"{args.command} failed: {str(e)}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
