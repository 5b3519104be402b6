"""DOT and JSON renderings of reduction graphs, spaces and factorizations."""

from __future__ import annotations

import json

from . import dist_core as dc
from . import lambda_core as lc
from .factor import GrothendieckSpace, IsoReport
from .lambda_core import format_position
from .spaces import ReductionGraph, SpaceLattice, class_members

MEMBER_LIMIT = 1000


def show_term(t) -> str:
    return dc.show(t) if isinstance(t, dc.DistTerm) else lc.show(t)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def graph_to_dot(graph: ReductionGraph) -> str:
    lines = ["digraph reductions {", "  rankdir=LR;", "  node [shape=box, fontname=monospace];"]
    for i, t in enumerate(graph.nodes):
        lines.append(f'  n{i} [label="{_dot_escape(show_term(t))}"];')
    for e in graph.edges:
        label = f"#{e.label}" if e.label is not None else format_position(e.position)
        lines.append(f'  n{e.src} -> n{e.dst} [label="{_dot_escape(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_data(graph: ReductionGraph, space: SpaceLattice | None = None) -> dict:
    """Plain data following the schema nodes / edges / classes; member paths list edge indices."""
    data: dict = {
        "nodes": [{"id": i, "term": show_term(t)} for i, t in enumerate(graph.nodes)],
        "edges": [],
    }
    for e in graph.edges:
        edge = {"src": e.src, "dst": e.dst}
        if e.label is not None:
            edge["label"] = e.label
        edge["position"] = format_position(e.position)
        data["edges"].append(edge)
    if space is not None:
        members = class_members(space, MEMBER_LIMIT)
        classes = []
        for c in range(len(space)):
            entry = {"id": c, "members": [list(p) for p in members[c]]}
            if space.labs is not None:
                entry["labs"] = sorted(space.labs[c])
            classes.append(entry)
        data["classes"] = classes
    return data


def space_to_dot(space: SpaceLattice) -> str:
    """Hasse diagram of a space, one node per class labeled by its representative."""
    lines = ["digraph space {", "  node [shape=box, fontname=monospace];"]
    for c in range(len(space)):
        lines.append(f'  c{c} [label="{_dot_escape(str(space.representative(c)))}"];')
    for i, j in space.hasse_edges():
        lines.append(f"  c{i} -> c{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def grothendieck_to_data(groth: GrothendieckSpace, report: IsoReport | None = None) -> dict:
    space = groth.space
    data = graph_to_data(space.graph, space)
    data["base"] = [{"id": a, "class": c, "derivation": str(space.representative(c))}
                    for a, c in enumerate(groth.base)]
    pairs = []
    for k, (a, x) in enumerate(groth.pairs):
        entry = {"id": k, "base": a, "garbage": str(groth.fibers[a].representative(x))}
        if report is not None:
            entry["class"] = report.psi[(a, x)]
        pairs.append(entry)
    data["pairs"] = pairs
    n = len(groth.pairs)
    data["pair_order"] = [[i, j] for i in range(n) for j in range(n)
                          if i != j and groth.pair_leq[i][j]]
    if report is not None:
        data["isomorphism"] = {"ok": report.ok, "failures": report.failures}
    return data


def to_json(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
