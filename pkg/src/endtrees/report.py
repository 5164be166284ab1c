"""Figure rendering for the report path.

Deterministic layered layouts: the truncation is drawn by distance from the
base vertex, the decomposition tree by level.  Figures are written next to
the JSON and DOT artifacts.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .decomposition import TreeDecomposition
from .families import TruncatedGraph


def _layered_positions(keys_by_layer):
    pos = {}
    for x, keys in sorted(keys_by_layer.items()):
        for i, key in enumerate(sorted(keys)):
            pos[key] = (x, i - (len(keys) - 1) / 2)
    return pos


def render_truncation(g: TruncatedGraph, path: str) -> None:
    dist = g.distances([g.base])
    layers: dict[int, list[str]] = {}
    for v, d in dist.items():
        layers.setdefault(d, []).append(v)
    pos = _layered_positions(layers)
    fig, ax = plt.subplots(figsize=(8, 6))
    for u, v in g.edges():
        ax.plot([pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]],
                color="0.7", linewidth=0.8, zorder=1)
    for v, (x, y) in pos.items():
        color = "tab:red" if v in g.horizon else "tab:blue"
        marker = "s" if v in g.horizon else "o"
        ax.scatter([x], [y], c=color, marker=marker, s=30, zorder=2)
    ax.set_title(f"{g.family} truncation, radius {g.radius}")
    ax.set_xlabel("distance from base")
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


def render_tree(td: TreeDecomposition, path: str) -> None:
    tree = td.tree
    layers: dict[int, list[str]] = {}
    for node in tree.nodes:
        layers.setdefault(tree.levels[node], []).append(node)
    pos = _layered_positions(layers)
    ray = set(tree.designated_ray)
    fig, ax = plt.subplots(figsize=(8, 6))
    for s, t in tree.edges:
        ax.plot([pos[s][0], pos[t][0]], [pos[s][1], pos[t][1]],
                color="0.7", linewidth=0.8, zorder=1)
    for node, (x, y) in pos.items():
        color = "tab:orange" if node in ray else "tab:green"
        ax.scatter([x], [y], c=color, s=40, zorder=2)
    ax.set_title("decomposition tree (spine highlighted)")
    ax.set_xlabel("level")
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
