"""Round-based simulation of distributed admission control.

Round 0: every node knows its incident links and their demands. Round 1:
every node sends that knowledge to each neighbor. A node then reconstructs
exactly the subgraph induced by its closed neighborhood, solves the exact
scheduling LP on it, and admits when its local duration stays within the
threshold. The run is compared against a centralized feasibility oracle
and classified; everything is deterministic for fixed inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .analysis import admission_threshold, local_estimate
from .errors import GraphError
from .graphs import Link, NetworkGraph, build_graph, conflict_graph
from .scheduling import fractional_chromatic, normalize_demands
from .search import DEFAULT_SET_CAP


@dataclass(frozen=True)
class Message:
    round: int
    sender: str
    receiver: str
    link_count: int


@dataclass(frozen=True)
class NodeView:
    """What one node reconstructed purely from received messages."""

    center: str
    subgraph: NetworkGraph
    demands: tuple[tuple[Link, Fraction], ...]
    local_value: Fraction
    admit: bool


@dataclass(frozen=True)
class SimTrace:
    threshold: Fraction
    messages: tuple[Message, ...]
    views: tuple[NodeView, ...]
    all_admit: bool
    oracle_value: Fraction
    oracle_feasible: bool
    classification: str


def _classify(admit: bool, feasible: bool) -> str:
    if admit:
        return "true-admit" if feasible else "false-admit"
    return "false-reject" if feasible else "true-reject"


def run_admission(
    g: NetworkGraph,
    tau: Mapping,
    threshold,
    cap: int = DEFAULT_SET_CAP,
) -> SimTrace:
    """Execute the 2-round protocol and check it against the oracle."""
    gc = conflict_graph(g, 2)
    demands = normalize_demands(gc, tau)
    thr = Fraction(threshold)
    if thr <= 0:
        raise GraphError("threshold must be positive")

    incident: dict[str, list[tuple[Link, Fraction]]] = {v: [] for v in g.vertices}
    for link in g.links:
        value = demands.get(link, Fraction(0))
        incident[link[0]].append((link, value))
        incident[link[1]].append((link, value))

    messages = []
    inbox: dict[str, list[list[tuple[Link, Fraction]]]] = {v: [] for v in g.vertices}
    for sender in g.vertices:
        payload = sorted(incident[sender])
        for receiver in g.neighbors(sender):
            messages.append(Message(1, sender, receiver, len(payload)))
            inbox[receiver].append(payload)

    views = []
    for v in g.vertices:
        reach = {v, *g.neighbors(v)}
        known: dict[Link, Fraction] = dict(incident[v])
        for payload in inbox[v]:
            for link, value in payload:
                if link[0] in reach and link[1] in reach:
                    known[link] = value
        subgraph = build_graph(reach, list(known))
        local = {link: val for link, val in known.items() if val > 0}
        value = fractional_chromatic(conflict_graph(subgraph, 2), local, cap)
        views.append(
            NodeView(
                center=v,
                subgraph=subgraph,
                demands=tuple(sorted(known.items())),
                local_value=value,
                admit=value <= thr,
            )
        )

    all_admit = all(view.admit for view in views)
    oracle_value = fractional_chromatic(gc, demands, cap)
    feasible = oracle_value <= 1
    return SimTrace(
        threshold=thr,
        messages=tuple(messages),
        views=tuple(views),
        all_admit=all_admit,
        oracle_value=oracle_value,
        oracle_feasible=feasible,
        classification=_classify(all_admit, feasible),
    )


def sample_demands(
    g: NetworkGraph,
    rng: random.Random,
    denom_max: int = 4,
    target: Fraction | None = None,
    cap: int = DEFAULT_SET_CAP,
) -> dict[Link, Fraction]:
    """One random demand vector, biased toward the decision boundary.

    Raw demands are rationals in (0, 1] with bounded denominator; with the
    scaling step the vector is rescaled so its best local estimate lands
    near the target, which makes both admissions and near-miss rejections
    common.
    """
    tau: dict[Link, Fraction] = {}
    for link in g.links:
        if rng.random() < 0.6:
            den = rng.randint(1, denom_max)
            tau[link] = Fraction(rng.randint(1, den), den)
    if not tau:
        link = g.links[rng.randrange(len(g.links))]
        tau = {link: Fraction(1, denom_max)}
    if target is not None and rng.random() < 0.6:
        estimate = local_estimate(g, tau, cap)
        if estimate > 0:
            rho = rng.choice(
                [Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(4, 3)]
            )
            scale = rho * Fraction(target) / estimate
            tau = {link: value * scale for link, value in tau.items()}
    return tau


def evaluate_policy(
    g: NetworkGraph,
    samples: int,
    seed: int,
    policy: str = "theorem3",
    user_bound=None,
    denom_max: int = 4,
    cap: int = DEFAULT_SET_CAP,
    sampler: Callable[..., dict[Link, Fraction]] | None = None,
) -> dict:
    """Run many random admission rounds and tally the outcomes.

    Policies: "theorem3" uses the certified automatic threshold, "user"
    uses 1 / user_bound as the threshold, and "oracle-exact" admits exactly
    the feasible vectors (reference policy, never misclassifies).
    """
    if samples < 0:
        raise GraphError("sample count must be nonnegative")
    if not g.links:
        raise GraphError("policy evaluation needs at least one link")
    threshold: Fraction | None
    meta: dict = {}
    if policy == "theorem3":
        threshold, meta = admission_threshold(g, cap=cap)
    elif policy == "user":
        if user_bound is None:
            raise GraphError("user policy needs a ratio bound")
        threshold, meta = admission_threshold(g, user_bound=user_bound, cap=cap)
    elif policy == "oracle-exact":
        threshold = None
    else:
        raise GraphError(f"unknown policy {policy!r}")

    draw = sampler or sample_demands
    rng = random.Random(seed)
    rows = []
    tally = {
        "true-admit": 0,
        "false-admit": 0,
        "true-reject": 0,
        "false-reject": 0,
    }
    gc = conflict_graph(g, 2)
    for sample_id in range(samples):
        tau = draw(g, rng, denom_max, target=threshold or Fraction(1), cap=cap)
        if threshold is None:
            oracle_value = fractional_chromatic(gc, tau, cap)
            feasible = oracle_value <= 1
            admit = feasible
            local_max = local_estimate(g, tau, cap)
            classification = _classify(admit, feasible)
        else:
            trace = run_admission(g, tau, threshold, cap)
            oracle_value = trace.oracle_value
            admit = trace.all_admit
            local_max = max(view.local_value for view in trace.views)
            classification = trace.classification
        tally[classification] += 1
        rows.append(
            {
                "sample_id": sample_id,
                "seed": seed,
                "local_max": local_max,
                "oracle_chif": oracle_value,
                "decision": "admit" if admit else "reject",
                "classification": classification,
            }
        )

    feasible_total = tally["true-admit"] + tally["false-reject"]
    summary = {
        "policy": policy,
        "samples": samples,
        "seed": seed,
        "threshold": threshold,
        "false_admit": tally["false-admit"],
        "false_reject": tally["false-reject"],
        "true_admit": tally["true-admit"],
        "true_reject": tally["true-reject"],
        "false_reject_rate": (
            Fraction(tally["false-reject"], feasible_total)
            if feasible_total
            else Fraction(0)
        ),
    }
    summary.update({f"threshold_{k}": v for k, v in meta.items()})
    return {"summary": summary, "rows": rows}
