"""localmds CLI entry point — argument parsing and command dispatch.

Provides the ``main()`` entry point that builds the argparse parser tree and
dispatches each subcommand to its handler in :mod:`localmds.cli.commands`.
Program name, defaults and choice lists come from the central config.

Usage::

    localmds generate grid 6 6 --out grid6.g
    localmds run lenzen grid6.g --c 3 --mode simulated
    localmds verify c6.g twoset.txt
    localmds cluster grid6.g --epsilon 1/2 --preset planar
    localmds eval-fo grid6.g --builtin phi_D --c 3
    localmds sweep grid 4..10 lenzen --c 3 --csv out.csv
"""

from __future__ import annotations

import argparse

from localmds import __version__
from localmds.cli.commands import (
    cmd_cluster,
    cmd_eval_fo,
    cmd_generate,
    cmd_run,
    cmd_sweep,
    cmd_verify,
)
from localmds.lib import config


def _add_parameters(sub: argparse.ArgumentParser) -> None:
    """Algorithm parameters shared by ``run`` and ``sweep``."""
    sub.add_argument("--c", default=config.get_str("defaults.c"), help="Density bound c (p/q)")
    sub.add_argument("--t", type=int, default=config.get_int("defaults.t"), help="Excluded K_{3,t}")
    sub.add_argument(
        "--genus", type=int, default=config.get_int("defaults.genus"), help="Genus bound"
    )
    sub.add_argument(
        "--epsilon", default=config.get_str("defaults.epsilon"), help="PTAS accuracy (p/q)"
    )
    sub.add_argument(
        "--preset",
        choices=config.get_list("presets.names"),
        default=config.get_list("presets.names")[0],
        help="Expansion preset for clustering",
    )
    sub.add_argument("--bound", default=None, help="Value for the constant preset (p/q)")
    sub.add_argument("--table", default=None, help="YAML radius-to-bound table for the custom preset")
    sub.add_argument("--cluster-cap", type=int, default=None, help="Largest cluster solved exactly")


def build_parser() -> argparse.ArgumentParser:
    """Build the full parser tree."""
    prog = config.get_str("cli.prog_name")
    algorithms = config.get_list("algorithms.choices")
    presets = config.get_list("presets.names")

    parser = argparse.ArgumentParser(prog=prog, description=config.get_str("cli.description"))
    parser.add_argument("--version", action="version", version=f"{prog} {__version__}")
    parser.add_argument("--log-dir", default=None, help="Append run records to DIR/runs.jsonl")
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=["text", "json"],
        default=config.get_str("defaults.output_format"),
        help="Output format",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    sub_gen = subparsers.add_parser("generate", help="Generate a graph family member")
    sub_gen.add_argument("family", choices=config.get_list("families.choices"))
    sub_gen.add_argument("sizes", type=int, nargs="+", help="One or two size parameters")
    sub_gen.add_argument("--seed", type=int, default=config.get_int("defaults.seed"))
    sub_gen.add_argument("--out", default=None, help="Output path (stdout when omitted)")

    sub_run = subparsers.add_parser("run", help="Run a dominating set algorithm")
    sub_run.add_argument("algorithm", choices=algorithms)
    sub_run.add_argument("graph", help="Graph file")
    _add_parameters(sub_run)
    sub_run.add_argument(
        "--mode",
        choices=config.get_list("modes.choices"),
        default=config.get_str("defaults.mode"),
        help="direct or simulated (round engine)",
    )
    sub_run.add_argument("--refine", action="store_true", help="Refine the output with the PTAS")

    sub_verify = subparsers.add_parser("verify", help="Check a set against the graph")
    sub_verify.add_argument("graph", help="Graph file")
    sub_verify.add_argument("set_file", help="File with whitespace-separated vertex ids")

    sub_cluster = subparsers.add_parser("cluster", help="Cluster a graph by star contraction")
    sub_cluster.add_argument("graph", help="Graph file")
    sub_cluster.add_argument("--epsilon", default=config.get_str("defaults.epsilon"))
    sub_cluster.add_argument("--preset", choices=presets, default=presets[0])
    sub_cluster.add_argument("--genus", type=int, default=config.get_int("defaults.genus"))
    sub_cluster.add_argument("--bound", default=None, help="Value for the constant preset (p/q)")
    sub_cluster.add_argument("--table", default=None, help="YAML radius-to-bound table (custom preset)")

    sub_fo = subparsers.add_parser("eval-fo", help="Evaluate a first-order formula")
    sub_fo.add_argument("graph", help="Graph file")
    source = sub_fo.add_mutually_exclusive_group(required=True)
    source.add_argument("--formula", help="File holding an S-expression formula")
    source.add_argument("--builtin", choices=["phi_D", "psi_Dprime"])
    sub_fo.add_argument("--c", default=config.get_str("defaults.c"))
    sub_fo.add_argument("--t", type=int, default=config.get_int("defaults.t"))
    sub_fo.add_argument("--naive", action="store_true", help="Disable the evaluation planner")

    sub_sweep = subparsers.add_parser("sweep", help="Batch runs over a size range, CSV output")
    sub_sweep.add_argument("family", choices=config.get_list("families.choices"))
    sub_sweep.add_argument("sizes", help="Size range lo..hi")
    sub_sweep.add_argument("algorithm", choices=algorithms)
    _add_parameters(sub_sweep)
    sub_sweep.add_argument("--seed", type=int, default=config.get_int("defaults.seed"))
    sub_sweep.add_argument("--csv", default=None, help="CSV path (stdout when omitted)")
    return parser


def main() -> None:
    """Parse arguments and dispatch to the matching command handler.

    Prints help text when no subcommand is given.
    """
    parser = build_parser()
    args = parser.parse_args()

    dispatch = {
        "generate": cmd_generate,
        "run": cmd_run,
        "verify": cmd_verify,
        "cluster": cmd_cluster,
        "eval-fo": cmd_eval_fo,
        "sweep": cmd_sweep,
    }

    handler = dispatch.get(args.command)
    if handler:
        handler(args)
    else:
        parser.print_help()


if __name__ == "__main__":
    main()
