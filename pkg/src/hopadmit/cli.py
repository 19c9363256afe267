"""Command line interface.

Every command prints a JSON envelope (sorted keys, stable across reruns)
carrying the tool version, the input digest, and the command's result.
Exit codes: 0 success, 2 bad input, 3 resource-guard abort.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .analysis import admission_threshold, ratio_bounds
from .errors import BoundUnavailableError, GraphError, ResourceLimitError
from .graphs import GENERATOR_FAMILIES, NetworkGraph, conflict_graph, generate
from .invariants import invariant_report
from .jsonio import (
    canonical_json,
    conflict_to_obj,
    demands_from_obj,
    demands_to_obj,
    format_fraction,
    graph_to_obj,
    input_digest,
    invariant_report_to_obj,
    load_graph,
    metrics_row_to_obj,
    metrics_to_csv,
    parse_fraction,
    ratio_bounds_to_obj,
    schedule_to_obj,
    trace_to_obj,
)
from .scheduling import fractional_chromatic, is_feasible, min_schedule
from .search import DEFAULT_SET_CAP
from .simulate import evaluate_policy, run_admission


def _looks_like_shorthand(text: str) -> bool:
    return ":" in text and text.split(":", 1)[0] in GENERATOR_FAMILIES


def _resolve_graph(arg: str) -> NetworkGraph:
    if _looks_like_shorthand(arg):
        if os.path.exists(arg):
            raise GraphError(
                f"{arg!r} is both an existing file and a generator shorthand; rename one"
            )
        return generate(arg)
    return load_graph(arg)


def _resolve_demands(arg: str, g: NetworkGraph):
    text = arg.strip()
    if text.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"inline demands are not valid JSON: {exc}") from exc
    else:
        try:
            with open(arg, encoding="utf-8") as fh:
                payload = json.load(fh)
        except OSError as exc:
            raise GraphError(f"cannot read demand file {arg!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise GraphError(f"demand file {arg!r} is not valid JSON: {exc}") from exc
    return demands_from_obj(payload, g)


def _emit(envelope: dict, out: str | None) -> None:
    text = canonical_json(envelope)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope(args, command: str, input_obj: dict, result, seed=None) -> dict:
    return {
        "tool": "hopadmit",
        "version": __version__,
        "command": command,
        "input": input_obj,
        "seed": seed,
        "caps": {"sets": args.cap_sets},
        "result": result,
    }


def _graph_input(args, g: NetworkGraph, extra=None) -> dict:
    obj = {"graph": args.graph, "digest": input_digest(graph_to_obj(g))}
    if extra:
        obj.update(extra)
    return obj


def _cmd_conflict(args) -> dict:
    g = _resolve_graph(args.graph)
    gc = conflict_graph(g, args.k)
    return _envelope(args, "conflict", _graph_input(args, g), conflict_to_obj(gc))


def _cmd_chif(args) -> dict:
    g = _resolve_graph(args.graph)
    gc = conflict_graph(g, args.k)
    tau = _resolve_demands(args.demands, g)
    value = fractional_chromatic(gc, tau, args.cap_sets)
    result = {
        "chi_f": format_fraction(value),
        "feasible": value <= 1,
        "k": args.k,
    }
    if args.schedule:
        result["schedule"] = schedule_to_obj(min_schedule(gc, tau, args.cap_sets))
    extra = {"demands": demands_to_obj(tau)}
    return _envelope(args, "chif", _graph_input(args, g, extra), result)


def _cmd_admit(args) -> dict:
    g = _resolve_graph(args.graph)
    tau = _resolve_demands(args.demands, g)
    extra = {"demands": demands_to_obj(tau), "mode": args.mode}
    if args.mode == "central":
        gc = conflict_graph(g, args.k)
        value = fractional_chromatic(gc, tau, args.cap_sets)
        result = {
            "admit": value <= 1,
            "chi_f": format_fraction(value),
            "k": args.k,
        }
        return _envelope(args, "admit", _graph_input(args, g, extra), result)
    if args.threshold == "auto":
        threshold, _ = admission_threshold(g, cap=args.cap_sets)
    else:
        threshold = parse_fraction(args.threshold)
        if threshold <= 0:
            raise GraphError("threshold must be positive")
    trace = run_admission(g, tau, threshold, args.cap_sets)
    return _envelope(args, "admit", _graph_input(args, g, extra), trace_to_obj(trace))


def _cmd_invariants(args) -> dict:
    g = _resolve_graph(args.graph)
    report = invariant_report(g, cap=args.cap_sets)
    return _envelope(
        args, "invariants", _graph_input(args, g), invariant_report_to_obj(report)
    )


def _cmd_beta(args) -> dict:
    g = _resolve_graph(args.graph)
    bounds = ratio_bounds(
        g, empirical_samples=args.empirical, seed=args.seed, cap=args.cap_sets
    )
    return _envelope(
        args,
        "beta",
        _graph_input(args, g),
        ratio_bounds_to_obj(bounds),
        seed=args.seed,
    )


def _cmd_threshold(args) -> dict:
    g = _resolve_graph(args.graph)
    user = parse_fraction(args.user_b) if args.user_b else None
    threshold, meta = admission_threshold(g, user_bound=user, cap=args.cap_sets)
    result = {"threshold": format_fraction(threshold)}
    for key, value in meta.items():
        result[key] = format_fraction(value) if isinstance(value, Fraction) else value
    return _envelope(args, "threshold", _graph_input(args, g), result)


def _cmd_simulate(args):
    g = _resolve_graph(args.graph)
    user = parse_fraction(args.user_b) if args.user_b else None
    outcome = evaluate_policy(
        g,
        samples=args.samples,
        seed=args.seed,
        policy=args.policy,
        user_bound=user,
        cap=args.cap_sets,
    )
    if args.format == "csv":
        return metrics_to_csv(outcome["rows"])
    summary = dict(outcome["summary"])
    for key, value in summary.items():
        if isinstance(value, Fraction):
            summary[key] = format_fraction(value)
    result = {
        "summary": summary,
        "rows": [metrics_row_to_obj(r) for r in outcome["rows"]],
    }
    return _envelope(
        args, "simulate", _graph_input(args, g), result, seed=args.seed
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopadmit",
        description="Exact scheduling and admission analysis for wireless links "
        "under 2-hop interference.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k_flag=False):
        p.add_argument("graph", help="graph JSON file or shorthand like cycle:10")
        p.add_argument(
            "--cap-sets",
            type=int,
            default=DEFAULT_SET_CAP,
            help="abort enumerations beyond this many sets (exit 3)",
        )
        p.add_argument("--out", help="write the report here instead of stdout")
        if k_flag:
            p.add_argument(
                "--k", type=int, default=2, help="interference radius (default 2)"
            )

    p = sub.add_parser("conflict", help="emit the conflict graph")
    common(p, k_flag=True)
    p.set_defaults(run=_cmd_conflict)

    p = sub.add_parser("chif", help="exact minimum schedule duration")
    common(p, k_flag=True)
    p.add_argument("--demands", required=True, help="JSON file or inline JSON")
    p.add_argument(
        "--schedule", action="store_true", help="include an optimal schedule"
    )
    p.set_defaults(run=_cmd_chif)

    p = sub.add_parser("admit", help="admission decision for a demand vector")
    common(p, k_flag=True)
    p.add_argument("--demands", required=True, help="JSON file or inline JSON")
    p.add_argument("--mode", choices=("central", "distributed"), default="central")
    p.add_argument(
        "--threshold",
        default="auto",
        help="distributed threshold: 'auto' or a rational like 2/5",
    )
    p.set_defaults(run=_cmd_admit)

    p = sub.add_parser("invariants", help="conflict-graph invariant report")
    common(p)
    p.set_defaults(run=_cmd_invariants)

    p = sub.add_parser("beta", help="certified bounds on the local-global ratio")
    common(p)
    p.add_argument(
        "--empirical",
        type=int,
        default=0,
        help="extra random witness demands to try",
    )
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=_cmd_beta)

    p = sub.add_parser("threshold", help="safe admission threshold")
    common(p)
    p.add_argument("--user-b", help="use 1/B for this ratio bound B instead")
    p.set_defaults(run=_cmd_threshold)

    p = sub.add_parser("simulate", help="random admission rounds vs the oracle")
    common(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument(
        "--policy",
        choices=("theorem3", "user", "oracle-exact"),
        default="theorem3",
    )
    p.add_argument("--user-b", help="ratio bound B for the user policy")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(run=_cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.run(args)
    except (GraphError, BoundUnavailableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    if isinstance(report, str):
        _emit_text(report, args.out)
    else:
        _emit(report, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
