"""Canonical JSON and DOT serialization of pipeline artifacts.

All emitted documents have sorted keys and sorted arrays so identical
inputs produce byte-identical output.
"""

from __future__ import annotations

import json

from .decomposition import TOP, DecompositionTree, TreeDecomposition
from .families import TruncatedGraph, canon
from .relevant import RelevantSeparation
from .separations import Separation


def dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def tree_decomposition_to_doc(g: TruncatedGraph, td: TreeDecomposition,
                              k: int) -> dict:
    tree = td.tree
    nodes = []
    for node in tree.nodes:
        if node == TOP:
            nodes.append({"id": node, "A": None, "B": None,
                          "level": tree.levels[node], "orbit": None})
            continue
        m = tree.member_of[node]
        nodes.append({"id": node, "A": list(m.sep.a), "B": list(m.sep.b),
                      "level": tree.levels[node],
                      "orbit": tree.orbit_of[node]})
    return {
        "family": g.family,
        "radius": g.radius,
        "k": k,
        "adhesion": td.adhesion,
        "nodes": sorted(nodes, key=lambda n: n["id"]),
        "edges": sorted([list(e) for e in tree.edges]),
        "parts": {node: list(td.parts[node]) for node in sorted(td.parts)},
        "ray": list(tree.designated_ray),
    }


def tree_decomposition_from_doc(doc: dict
                                ) -> tuple[TreeDecomposition, int]:
    """Rebuild the tree and parts from an emitted document."""
    k = doc["k"]
    member_of = {}
    node_of = {}
    levels = {}
    orbit_of = {}
    nodes = []
    for n in doc["nodes"]:
        nodes.append(n["id"])
        levels[n["id"]] = n["level"]
        if n["A"] is None:
            continue
        sep = Separation(canon(n["A"]), canon(n["B"]))
        member = RelevantSeparation(sep, k, ())
        member_of[n["id"]] = member
        node_of[(sep.a, sep.b)] = n["id"]
        orbit_of[n["id"]] = n["orbit"]
    edges = tuple((s, t) for s, t in doc["edges"])
    tree = DecompositionTree(tuple(nodes), edges, member_of, node_of,
                             levels, orbit_of, tuple(doc["ray"]))
    parts = {node: canon(vs) for node, vs in doc["parts"].items()}
    return TreeDecomposition(tree, parts, doc["adhesion"]), k


def tree_to_dot(td: TreeDecomposition) -> str:
    """DOT rendering of the decomposition tree, parts as node labels."""
    lines = ["digraph decomposition {", "  rankdir=LR;"]
    for node in td.tree.nodes:
        part = ",".join(td.parts[node])
        shape = "doubleoctagon" if node == TOP else "box"
        lines.append(f'  "{node}" [shape={shape} '
                     f'label="{node}\\n{{{part}}}"];')
    for s, t in sorted(td.tree.edges):
        lines.append(f'  "{s}" -> "{t}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def separations_to_doc(pool, alpha=None) -> list[dict]:
    rows = []
    for r in pool:
        row = r.to_json()
        if alpha is not None:
            row["alpha"] = alpha.sep_rank[r]
        rows.append(row)
    return rows
