"""JSON and CSV wire formats.

Rationals travel as strings in lowest terms ("3/4", integers as "3"),
never as floats. Links travel as "u-v" ids, which is why vertex ids may
not contain "-". All JSON emitted here uses sorted keys so byte-identical
reruns stay byte-identical.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from fractions import Fraction
from typing import Mapping

from .analysis import RatioBounds
from .errors import GraphError
from .graphs import ConflictGraph, Link, NetworkGraph, build_graph
from .invariants import InvariantReport
from .scheduling import Schedule
from .simulate import SimTrace


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphError(f"not a rational: {text!r}") from exc


def link_id(link: Link) -> str:
    return f"{link[0]}-{link[1]}"


def graph_to_obj(g: NetworkGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [[u, v] for u, v in g.links],
    }


def graph_from_obj(obj) -> NetworkGraph:
    if not isinstance(obj, dict):
        raise GraphError("graph JSON must be an object")
    try:
        vertices = obj["vertices"]
        edges = obj["edges"]
    except KeyError as exc:
        raise GraphError(f"graph JSON is missing {exc.args[0]!r}") from exc
    for v in vertices:
        if isinstance(v, str) and "-" in v:
            raise GraphError(
                f"vertex id {v!r} contains '-', which link ids reserve"
            )
    return build_graph(vertices, edges)


def load_graph(path: str) -> NetworkGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise GraphError(f"cannot read graph file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GraphError(f"graph file {path!r} is not valid JSON: {exc}") from exc
    return graph_from_obj(payload)


def demands_to_obj(tau: Mapping[Link, Fraction]) -> dict:
    return {link_id(link): format_fraction(v) for link, v in sorted(tau.items())}


def demands_from_obj(obj, g: NetworkGraph) -> dict[Link, Fraction]:
    if not isinstance(obj, dict):
        raise GraphError("demands JSON must be an object of link id to rational")
    by_id = {link_id(link): link for link in g.links}
    out: dict[Link, Fraction] = {}
    for key, raw in obj.items():
        swapped = "-".join(reversed(key.split("-", 1))) if "-" in key else key
        link = by_id.get(key) or by_id.get(swapped)
        if link is None:
            raise GraphError(f"demand key {key!r} names no link of the graph")
        value = parse_fraction(raw)
        if value < 0:
            raise GraphError(f"demand for {key!r} is negative")
        out[link] = value
    return out


def schedule_to_obj(schedule: Schedule) -> list:
    return [
        {
            "links": sorted(link_id(l) for l in links),
            "duration": format_fraction(duration),
        }
        for links, duration in schedule.entries
    ]


def conflict_to_obj(gc: ConflictGraph) -> dict:
    pairs = []
    for i, nbrs in enumerate(gc.adj):
        for j in nbrs:
            if j > i:
                pairs.append([link_id(gc.links[i]), link_id(gc.links[j])])
    return {
        "k": gc.k,
        "links": [link_id(l) for l in gc.links],
        "conflicts": sorted(pairs),
    }


def ratio_bounds_to_obj(bounds: RatioBounds) -> dict:
    return {
        "lower": format_fraction(bounds.lower),
        "lower_source": bounds.lower_source,
        "lower_witness": demands_to_obj(bounds.lower_witness),
        "upper": None if bounds.upper is None else format_fraction(bounds.upper),
        "imp_upper": (
            None if bounds.imp_upper is None else format_fraction(bounds.imp_upper)
        ),
        "imp_certificate": bounds.imp_certificate,
        "lambda": bounds.cover_number,
        "exact": None if bounds.exact is None else format_fraction(bounds.exact),
    }


def invariant_report_to_obj(report: InvariantReport) -> dict:
    return {
        "nu": report.nu,
        "nu_witness": sorted(link_id(l) for l in report.nu_witness),
        "lambda": report.lam,
        "lambda_witness_links": sorted(link_id(l) for l in report.lam_witness_links),
        "lambda_witness_vertices": list(report.lam_witness_vertices),
        "imp_lower": format_fraction(report.imp_lower),
        "imp_lower_witness": demands_to_obj(report.imp_lower_witness),
        "imp_upper": (
            None if report.imp_upper is None else format_fraction(report.imp_upper)
        ),
        "imp_upper_certificate": report.imp_upper_certificate,
    }


def trace_to_obj(trace: SimTrace) -> dict:
    return {
        "threshold": format_fraction(trace.threshold),
        "messages": [
            {
                "round": m.round,
                "from": m.sender,
                "to": m.receiver,
                "links": m.link_count,
            }
            for m in trace.messages
        ],
        "views": [
            {
                "center": view.center,
                "subgraph": graph_to_obj(view.subgraph),
                "demands": demands_to_obj(dict(view.demands)),
                "local_value": format_fraction(view.local_value),
                "decision": "admit" if view.admit else "reject",
            }
            for view in trace.views
        ],
        "admit": trace.all_admit,
        "oracle_chif": format_fraction(trace.oracle_value),
        "oracle_feasible": trace.oracle_feasible,
        "classification": trace.classification,
    }


METRIC_COLUMNS = (
    "sample_id",
    "seed",
    "local_max",
    "oracle_chif",
    "decision",
    "classification",
)


def metrics_row_to_obj(row: Mapping) -> dict:
    return {
        "sample_id": row["sample_id"],
        "seed": row["seed"],
        "local_max": format_fraction(row["local_max"]),
        "oracle_chif": format_fraction(row["oracle_chif"]),
        "decision": row["decision"],
        "classification": row["classification"],
    }


def metrics_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=METRIC_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(metrics_row_to_obj(row))
    return buf.getvalue()


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def input_digest(obj) -> str:
    packed = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(packed.encode("utf-8")).hexdigest()
