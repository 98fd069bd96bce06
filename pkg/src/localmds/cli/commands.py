"""commands — CLI command handlers for the localmds command.

Each public function implements one CLI subcommand and receives the parsed
``argparse.Namespace``.  Library failures (:class:`LocalMdsError`) are
reported on stderr and end the process with ``exit_codes.error``; a
violated invariant (a set that does not dominate, a cluster above its
radius bound) ends it with ``exit_codes.violation``.

Subcommands:
    generate  Write a generated graph with its class metadata.
    run       Run an algorithm directly or on the round engine.
    verify    Check domination and the ratio against the exact optimum.
    cluster   Cluster by iterated star contraction and check the result.
    eval-fo   Print the set defined by a first-order formula.
    sweep     Batch runs over a size range, CSV output.
"""

from __future__ import annotations

import argparse
import functools
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional

import networkx as nx
import yaml

from localmds import generators, lenzen, logic
from localmds._paths import log_dir as _log_dir
from localmds.clustering import ExpansionBound, cluster, expansion_preset
from localmds.exceptions import LocalMdsError
from localmds.graph import Graph
from localmds.lib import config
from localmds.lib.formatter import cluster_fields, csv_text, format_set, render, result_fields
from localmds.lib.graph_io import format_graph, parse_graph, parse_rational, write_graph
from localmds.lib.logger import log_run
from localmds.lib.models import MdsResult
from localmds.lib.theme import colorize
from localmds.lib.yaml_loader import load_yaml
from localmds.oracle import gamma, greedy_mds, is_dominating, ratio, undominated
from localmds.ptas import refine


# -------------------------------------------------------------------------
# Helpers
# -------------------------------------------------------------------------


def _fail(text: str, code_key: str = "error") -> None:
    """Print a themed diagnostic to stderr and exit with the configured code."""
    prefix = config.get_str("messages.error_prefix")
    print(colorize(prefix + text, config.get_str("colors.error"), stream=sys.stderr), file=sys.stderr)
    sys.exit(config.get_int(f"exit_codes.{code_key}"))


def _guarded(handler: Callable[[argparse.Namespace], None]) -> Callable[[argparse.Namespace], None]:
    """Turn library and input errors into a diagnostic and a nonzero exit."""

    @functools.wraps(handler)
    def wrapper(args: argparse.Namespace) -> None:
        try:
            handler(args)
        except (LocalMdsError, ValueError, OSError, yaml.YAMLError) as exc:
            _fail(str(exc))

    return wrapper


def _load(path: str) -> tuple[Graph, str]:
    text = Path(path).read_text(encoding="utf-8")
    return parse_graph(text), text


def _elapsed_ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def _table(path: Optional[str]) -> Optional[dict[int, Fraction]]:
    """Read a custom expansion table: a YAML mapping of radius to bound."""
    if path is None:
        return None
    raw = load_yaml(path)
    if not isinstance(raw, dict):
        raise ValueError(f"expansion table must be a YAML mapping: {path}")
    return {int(radius): parse_rational(str(value)) for radius, value in raw.items()}


def _expansion(args: argparse.Namespace) -> ExpansionBound:
    bound = getattr(args, "bound", None)
    return expansion_preset(
        args.preset,
        genus=args.genus,
        table=_table(getattr(args, "table", None)),
        value=parse_rational(bound) if bound is not None else None,
    )


def _oracle_ratio(g: Graph, s: frozenset[int]) -> tuple[Optional[int], Optional[Fraction]]:
    """(gamma, ratio) when g is within the oracle cap, else (None, None)."""
    if g.n > config.cap("oracle_cap"):
        return None, None
    return gamma(g), ratio(g, s)


def _params(args: argparse.Namespace) -> dict[str, Any]:
    algo = args.algorithm
    if algo == config.get_str("algorithms.genus"):
        return {"genus": args.genus}
    if algo == config.get_str("algorithms.ptas"):
        return {"c": args.c, "t": args.t, "epsilon": args.epsilon, "preset": args.preset}
    if algo == config.get_str("algorithms.greedy"):
        return {}
    params: dict[str, Any] = {"c": args.c, "t": args.t}
    if getattr(args, "refine", False):
        params.update(epsilon=args.epsilon, preset=args.preset)
    return params


def _base_result(g: Graph, args: argparse.Namespace, simulated: bool) -> MdsResult:
    algo = args.algorithm
    c = parse_rational(args.c)
    if algo == config.get_str("algorithms.genus"):
        if simulated:
            return lenzen.run_distributed(g, lenzen.genus_program(args.genus))
        return lenzen.genus_algorithm(g, args.genus)
    if algo == config.get_str("algorithms.lenzen_planar"):
        if simulated:
            return lenzen.run_distributed(g, lenzen.lenzen_program(config.get_int("lenzen.planar_c")))
        return lenzen.original_lenzen(g)
    if simulated:
        return lenzen.run_distributed(g, lenzen.lenzen_program(c))
    return lenzen.modified_lenzen(g, c)


def _solve(g: Graph, args: argparse.Namespace) -> dict[str, Any]:
    """Run the selected algorithm and return its record fields (``set`` last)."""
    algo = args.algorithm
    simulated = getattr(args, "mode", config.get_str("defaults.mode")) == config.get_str(
        "modes.simulated"
    )
    if algo == config.get_str("algorithms.greedy"):
        chosen = greedy_mds(g)
        return {config.get_str("labels.size"): len(chosen), config.get_str("labels.rounds"): None, "set": chosen}

    result = _base_result(g, args, simulated)
    extra: dict[str, Any] = {}
    if algo == config.get_str("algorithms.genus"):
        extra[config.get_str("labels.bound")] = lenzen.genus_ratio_bound(args.genus)
        extra["unprocessed_bound"] = lenzen.unprocessed_genus_bound(args.genus)
    else:
        extra[config.get_str("labels.bound")] = lenzen.approximation_bound(
            parse_rational(args.c), args.t
        )
    fields = result_fields(result, **extra)

    if algo == config.get_str("algorithms.ptas") or getattr(args, "refine", False):
        expansion = _expansion(args)
        c_factor = fields.pop(config.get_str("labels.bound"))
        if algo == config.get_str("algorithms.genus"):
            c_factor = lenzen.genus_ratio_bound(args.genus)
            fields.pop("unprocessed_bound")
        refined = refine(
            g,
            result.dominating_set,
            parse_rational(args.epsilon),
            c_factor,
            expansion(1),
            expansion,
            cluster_cap=args.cluster_cap,
        )
        fields = {
            config.get_str("labels.size"): len(refined),
            config.get_str("labels.rounds"): result.rounds_used,
            "unrefined": len(result.dominating_set),
            "set": refined,
        }
    return fields


# -------------------------------------------------------------------------
# Graph commands
# -------------------------------------------------------------------------


@_guarded
def cmd_generate(args: argparse.Namespace) -> None:
    """Build a family member and write it with its metadata.

    Args:
        args: Parsed CLI arguments.  Uses ``family``, ``sizes``, ``seed`` and
            ``out``.
    """
    g = generators.build(args.family, args.sizes, args.seed)
    if args.out:
        write_graph(g, args.out)
        print(colorize(config.message("written", path=args.out), config.get_str("colors.success"), stream=sys.stdout))
    else:
        sys.stdout.write(format_graph(g))


@_guarded
def cmd_run(args: argparse.Namespace) -> None:
    """Run an algorithm and print its summary.

    In simulated mode the round engine executes the node program and the
    reported rounds are the measured ones.
    """
    g, text = _load(args.graph)
    start = time.perf_counter()
    fields = _solve(g, args)
    wall_ms = _elapsed_ms(start)
    chosen: frozenset[int] = fields["set"]
    dominating = is_dominating(g, chosen)
    record = {"algorithm": args.algorithm, "n": g.n, "m": g.m, config.get_str("labels.dominating"): dominating}
    record.update(fields)
    log_run(
        _log_dir(args.log_dir),
        args.algorithm,
        _params(args),
        g.n,
        g.m,
        text,
        len(chosen),
        fields.get(config.get_str("labels.rounds")),
        wall_ms,
        status="ok" if dominating else "violation",
    )
    print(render(record, args.output_format))
    if not dominating:
        _fail(config.message("invariant_violation", detail="output is not dominating"), "violation")


@_guarded
def cmd_verify(args: argparse.Namespace) -> None:
    """Check that a set dominates the graph and report its ratio.

    The ratio is ``NA`` when the graph is above the oracle cap.
    """
    g, text = _load(args.graph)
    tokens = Path(args.set_file).read_text(encoding="utf-8").split()
    if not all(tok.isdigit() for tok in tokens):
        raise ValueError(f"set file must hold non-negative integers: {args.set_file}")
    chosen = frozenset(int(tok) for tok in tokens)
    start = time.perf_counter()
    missing = undominated(g, chosen)
    labels = config.get_mapping("labels")
    record: dict[str, Any] = {labels["dominating"]: not missing}
    if missing:
        record["undominated"] = missing
    else:
        record[labels["ratio"]] = _oracle_ratio(g, chosen)[1]
    log_run(
        _log_dir(args.log_dir),
        "verify",
        {},
        g.n,
        g.m,
        text,
        len(chosen),
        None,
        _elapsed_ms(start),
        status="violation" if missing else "ok",
        event="verify",
    )
    print(render(record, args.output_format))
    if missing:
        sys.exit(config.get_int("exit_codes.violation"))


@_guarded
def cmd_cluster(args: argparse.Namespace) -> None:
    """Cluster the graph and check the partition, radius and weight bounds."""
    g, text = _load(args.graph)
    epsilon = parse_rational(args.epsilon)
    start = time.perf_counter()
    partition = cluster(g, epsilon, _expansion(args))
    problems = []
    if sorted(v for part in partition.clusters for v in part) != sorted(g.vertices):
        problems.append("clusters do not partition the vertex set")
    for part in partition.clusters:
        sub = g.induced(part).nx_graph
        if not nx.is_connected(sub):
            problems.append(f"cluster {format_set(part)} is disconnected")
        elif nx.radius(sub) > partition.radius_bound:
            problems.append(f"cluster {format_set(part)} exceeds radius {partition.radius_bound}")
    log_run(
        _log_dir(args.log_dir),
        "cluster",
        {"epsilon": epsilon, "preset": args.preset},
        g.n,
        g.m,
        text,
        len(partition.clusters),
        None,
        _elapsed_ms(start),
        status="violation" if problems else "ok",
        event="cluster",
    )
    print(render(cluster_fields(partition, epsilon), args.output_format))
    if problems:
        _fail(config.message("invariant_violation", detail="; ".join(problems)), "violation")


@_guarded
def cmd_eval_fo(args: argparse.Namespace) -> None:
    """Print the set defined by a formula file or one of the built-in formulas."""
    g, text = _load(args.graph)
    if args.formula:
        phi = logic.parse_formula(Path(args.formula).read_text(encoding="utf-8"))
        name = args.formula
    elif args.builtin == "phi_D":
        phi, name = logic.build_phi_D(parse_rational(args.c)), args.builtin
    else:
        phi, name = logic.build_psi_Dprime(parse_rational(args.c), args.t), args.builtin
    start = time.perf_counter()
    defined = logic.defined_set(g, phi, plan=not args.naive)
    log_run(
        _log_dir(args.log_dir),
        name,
        {"c": args.c, "t": args.t},
        g.n,
        g.m,
        text,
        len(defined),
        None,
        _elapsed_ms(start),
        event="eval-fo",
    )
    record = {config.get_str("labels.size"): len(defined), config.get_str("labels.defined"): defined}
    print(render(record, args.output_format))


@_guarded
def cmd_sweep(args: argparse.Namespace) -> None:
    """Run one algorithm over a size range and emit CSV.

    Rows follow the size order.  ``gamma`` and ``ratio`` are ``NA`` above the
    oracle cap; ``wall_ms`` is the only column that varies between runs.
    """
    sep = config.get_str("formats.range_separator")
    lo_text, _, hi_text = args.sizes.partition(sep)
    if not (lo_text.isdigit() and hi_text.isdigit()) or int(lo_text) > int(hi_text):
        raise ValueError(config.message("bad_range", text=args.sizes))
    params = _params(args)
    params_text = ";".join(f"{k}={v}" for k, v in params.items())
    rows = []
    violations = 0
    for size in range(int(lo_text), int(hi_text) + 1):
        g = generators.build(args.family, [size], args.seed)
        start = time.perf_counter()
        fields = _solve(g, args)
        wall_ms = _elapsed_ms(start)
        chosen: frozenset[int] = fields["set"]
        if not is_dominating(g, chosen):
            violations += 1
        optimum, achieved = _oracle_ratio(g, chosen) if is_dominating(g, chosen) else (None, None)
        rows.append(
            {
                "n": g.n,
                "m": g.m,
                "family": args.family,
                "algorithm": args.algorithm,
                "params": params_text,
                "size": len(chosen),
                "gamma": optimum,
                "ratio": achieved,
                "rounds": fields.get(config.get_str("labels.rounds")),
                "wall_ms": wall_ms,
            }
        )
        log_run(
            _log_dir(args.log_dir),
            args.algorithm,
            params,
            g.n,
            g.m,
            format_graph(g),
            len(chosen),
            fields.get(config.get_str("labels.rounds")),
            wall_ms,
            event="sweep",
        )
    output = csv_text(rows)
    if args.csv:
        Path(args.csv).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    if violations:
        _fail(config.message("invariant_violation", detail=f"{violations} outputs not dominating"), "violation")
