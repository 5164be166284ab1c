"""Shared corpus and independent oracles for the test suite.

The oracles here are deliberately naive (exhaustive subset search, brute
permutation checks) so they cannot share bugs with the library code.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import combinations

import pytest

from endtrees.families import TruncatedGraph


def random_connected_graph(seed: int, max_n: int = 12) -> TruncatedGraph:
    rng = random.Random(seed)
    n = rng.randint(4, max_n)
    verts = [f"x{i:02d}" for i in range(n)]
    while True:
        edges = set()
        # random spanning tree first, then extra edges
        order = verts[:]
        rng.shuffle(order)
        for i in range(1, n):
            j = rng.randrange(i)
            edges.add(tuple(sorted((order[i], order[j]))))
        for u, v in combinations(verts, 2):
            if rng.random() < 0.25:
                edges.add(tuple(sorted((u, v))))
        if edges:
            break
    horizon = {rng.choice(verts)}
    return TruncatedGraph(verts, sorted(edges), horizon, radius=1)


def small_corpus() -> list[TruncatedGraph]:
    from endtrees.families import FamilySpec, generate_family
    graphs = [generate_family(FamilySpec("ray"), 4),
              generate_family(FamilySpec("ladder"), 3),
              generate_family(FamilySpec("grid"), 2)]
    graphs = [g for g in graphs if len(g.vertices) <= 12]
    graphs += [random_connected_graph(seed) for seed in range(20)]
    return [g for g in graphs if len(g.vertices) <= 12]


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


def has_xy_path(g: TruncatedGraph, x, y, removed) -> bool:
    x = set(x) - set(removed)
    y = set(y) - set(removed)
    if x & y:
        return True
    seen = set(x)
    queue = deque(x)
    while queue:
        v = queue.popleft()
        if v in y:
            return True
        for w in g.adjacency[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                queue.append(w)
    return bool(seen & y)


def brute_min_vertex_cut(g: TruncatedGraph, x, y) -> int:
    """Smallest vertex set meeting every x-y path (may include x, y)."""
    verts = sorted(g.vertices)
    for size in range(len(verts) + 1):
        for cut in combinations(verts, size):
            if not has_xy_path(g, x, y, set(cut)):
                return size
    return len(verts)


def brute_minimal_separators(g: TruncatedGraph, u: str, v: str,
                             k: int) -> list[tuple[str, ...]]:
    """All minimal u-v separators of size <= k, by exhaustive search."""
    others = sorted(g.vertices - {u, v})
    out = []
    for size in range(1, k + 1):
        for cand in combinations(others, size):
            removed = set(cand)
            if has_xy_path(g, {u}, {v}, removed):
                continue
            comp_u = _component(g, u, removed)
            comp_v = _component(g, v, removed)
            if _attached(g, comp_u, removed) and _attached(g, comp_v, removed):
                out.append(tuple(sorted(cand)))
    return sorted(set(out))


def _component(g, start, removed):
    comp = {start}
    queue = deque([start])
    while queue:
        for w in g.adjacency[queue.popleft()]:
            if w not in removed and w not in comp:
                comp.add(w)
                queue.append(w)
    return comp


def _attached(g, comp, sep):
    seen = set()
    for v in comp:
        seen |= g.adjacency[v] & sep
    return seen == sep


def random_separation(g: TruncatedGraph, rng: random.Random):
    """A random valid separation built from a random separator."""
    from endtrees.families import components
    from endtrees.separations import make_separation
    verts = sorted(g.vertices)
    for _ in range(60):
        sep = set(rng.sample(verts, rng.randint(1, max(1, len(verts) // 3))))
        comps = components(g, sep)
        if not comps:
            continue
        rng.shuffle(comps := list(comps))
        take = comps[:rng.randint(0, len(comps))]
        a = sep.union(*[set(c) for c in take]) if take else set(sep)
        b = g.vertices - (a - sep)
        return make_separation(g, a, b)
    raise AssertionError("could not build a random separation")
