"""Menger machinery on truncations.

Vertex-disjoint paths and minimum vertex cuts via the standard
vertex-splitting unit-capacity max-flow reduction (BFS augmentation), plus
the constructions layered on top of it: minimal-separator enumeration,
pairwise disjoint separator sequences through ball annuli, end vertex degree
and domination detection by radius sweeps.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

from .errors import (BudgetExceeded, DegreeMismatch, Exhausted, NoSeparator,
                     Unstable)
from .families import (FamilySpec, TruncatedGraph, VertexSet, canon,
                       generate_family, neighborhood)

THICK = "Thick"

DEFAULT_BUDGET = 500_000


def get_budget() -> int:
    env = os.environ.get("ENDTREE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class CutResult:
    value: int
    cut: VertexSet
    paths: tuple[tuple[str, ...], ...]
    sources: VertexSet
    targets: VertexSet

    @property
    def cut_is_interior(self) -> bool:
        """True when the cut avoids both endpoint sets."""
        return not (set(self.cut) & (set(self.sources) | set(self.targets)))

    def interior_cut(self, g: TruncatedGraph) -> VertexSet:
        if not self.cut_is_interior:
            raise NoSeparator(
                f"no interior cut; sentinel value {len(g.vertices) + 1}")
        return self.cut


@dataclass(frozen=True)
class SeparatorSequence:
    separators: tuple[VertexSet, ...]
    m: int


class _FlowNet:
    """Unit split-capacity flow network over a vertex-split digraph."""

    INF = 1 << 30

    def __init__(self):
        self.n = 0
        self.head: list[int] = []
        self.to: list[int] = []
        self.cap: list[int] = []
        self.nxt: list[int] = []

    def node(self) -> int:
        self.n += 1
        self.head.append(-1)
        return self.n - 1

    def arc(self, u: int, v: int, c: int):
        for (a, b, cc) in ((u, v, c), (v, u, 0)):
            self.to.append(b)
            self.cap.append(cc)
            self.nxt.append(self.head[a])
            self.head[a] = len(self.to) - 1

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            prev_arc = [-1] * self.n
            prev_arc[s] = -2
            queue = deque([s])
            while queue and prev_arc[t] == -1:
                u = queue.popleft()
                e = self.head[u]
                while e != -1:
                    v = self.to[e]
                    if self.cap[e] > 0 and prev_arc[v] == -1:
                        prev_arc[v] = e
                        queue.append(v)
                    e = self.nxt[e]
            if prev_arc[t] == -1:
                return flow
            v = t
            while v != s:
                e = prev_arc[v]
                self.cap[e] -= 1
                self.cap[e ^ 1] += 1
                v = self.to[e ^ 1]
            flow += 1

    def residual_reachable(self, s: int) -> list[bool]:
        seen = [False] * self.n
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            e = self.head[u]
            while e != -1:
                v = self.to[e]
                if self.cap[e] > 0 and not seen[v]:
                    seen[v] = True
                    queue.append(v)
                e = self.nxt[e]
        return seen


def max_disjoint_paths(g: TruncatedGraph, x, y, excluded=()) -> CutResult:
    """Max family of pairwise vertex-disjoint X-Y paths plus a dual cut.

    Internal vertices avoid `excluded`.  The returned cut is a minimum
    vertex cut over all vertices; it avoids x and y whenever an interior
    cut of the same size exists (`cut_is_interior`).
    """
    x = frozenset(x)
    y = frozenset(y)
    excluded = frozenset(excluded)
    if not x or not y:
        raise ValueError("source and target sets must be nonempty")
    for name, s in (("x", x), ("y", y), ("excluded", excluded)):
        if not s <= g.vertices:
            raise KeyError(f"{name} contains unknown vertex ids")
    if (x | y) & excluded:
        raise ValueError("excluded set must avoid the endpoints")

    usable = sorted(g.vertices - excluded)
    net = _FlowNet()
    node_in = {}
    node_out = {}
    for v in usable:
        node_in[v] = net.node()
        node_out[v] = net.node()
        net.arc(node_in[v], node_out[v], 1)
    s = net.node()
    t = net.node()
    for v in usable:
        for w in sorted(g.adjacency[v]):
            if w in node_in:
                net.arc(node_out[v], node_in[w], net.INF)
    for v in sorted(x):
        net.arc(s, node_in[v], net.INF)
    for v in sorted(y):
        net.arc(node_out[v], t, net.INF)
    value = net.max_flow(s, t)

    # minimum vertex cut: saturated split arcs on the residual boundary
    seen = net.residual_reachable(s)
    cut = [v for v in usable if seen[node_in[v]] and not seen[node_out[v]]]

    paths = _decompose_paths(net, node_in, node_out, s, t, usable)
    assert len(paths) == value
    return CutResult(value, canon(cut), tuple(paths), canon(x), canon(y))


def _decompose_paths(net, node_in, node_out, s, t, usable):
    # arcs with positive flow = reverse arcs (odd index) with positive cap
    flow_out = {}
    for v in usable:
        targets = []
        e = net.head[node_out[v]]
        while e != -1:
            if e % 2 == 0 and net.cap[e ^ 1] > 0 and net.to[e] != t:
                targets.append(net.to[e])
            e = net.nxt[e]
        flow_out[v] = targets
    in_of = {n: v for v, n in node_in.items()}
    starts = []
    e = net.head[s]
    while e != -1:
        if e % 2 == 0 and net.cap[e ^ 1] > 0:
            starts.append(in_of[net.to[e]])
        e = net.nxt[e]
    paths = []
    for v in sorted(starts):
        path = [v]
        # follow unit flow until the vertex feeds the sink
        while flow_out[path[-1]]:
            nxt = in_of[flow_out[path[-1]].pop()]
            path.append(nxt)
        paths.append(tuple(path))
    return sorted(paths)


def enumerate_minimal_separators(g: TruncatedGraph, u: str, v: str,
                                 k: int) -> list[VertexSet]:
    """All separators of size <= k separating u and v minimally.

    Complete: every minimal separator hits every u-v path, so branching on
    the vertices of a shortest path reaches it.  Minimality (both end
    components see the whole separator) is checked explicitly.
    """
    if u == v:
        raise ValueError("u and v must differ")
    budget = get_budget()
    nodes = 0
    candidates: set[frozenset[str]] = set()
    visited: set[frozenset[str]] = set()

    def shortest_path(removed):
        prev = {u: None}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            if a == v:
                path = []
                while a is not None:
                    path.append(a)
                    a = prev[a]
                return path[::-1]
            for b in sorted(g.adjacency[a]):
                if b not in prev and b not in removed:
                    prev[b] = a
                    queue.append(b)
        return None

    def rec(removed: frozenset[str]):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("separator enumeration budget hit")
        if removed in visited:
            return
        visited.add(removed)
        path = shortest_path(removed)
        if path is None:
            candidates.add(removed)
            return
        if len(removed) == k:
            return
        for w in path[1:-1]:
            rec(removed | {w})

    rec(frozenset())

    out = []
    for cand in candidates:
        if _separates_minimally(g, cand, u, v):
            out.append(canon(cand))
    return sorted(set(out))


def _separates_minimally(g, sep, u, v):
    sep = set(sep)
    comp_of = {}
    for a in (u, v):
        comp = {a}
        queue = deque([a])
        while queue:
            for w in g.adjacency[queue.popleft()]:
                if w not in sep and w not in comp:
                    comp.add(w)
                    queue.append(w)
        comp_of[a] = comp
    if v in comp_of[u]:
        return False
    for comp in comp_of.values():
        attached = set()
        for c in comp:
            attached |= g.adjacency[c] & sep
        if attached != sep:
            return False
    return True


def disjoint_separator_sequence(g: TruncatedGraph, m: int) -> SeparatorSequence:
    """Pairwise disjoint size-m separators between the base and the horizon.

    Walks outward through ball annuli: at each stage the minimum cut between
    the current ball boundary and the horizon is taken as the next separator,
    and the ball is grown past it, which forces disjointness.
    """
    dist = g.distances([g.base])
    separators: list[VertexSet] = []
    i = 0
    while True:
        ball = frozenset(w for w, d in dist.items() if d <= i)
        boundary = frozenset(neighborhood(g, ball))
        if not boundary or boundary & g.horizon:
            break
        res = max_disjoint_paths(g, boundary, g.horizon, excluded=ball)
        if res.value != m:
            raise DegreeMismatch(
                f"annulus at ball radius {i} has cut {res.value}, expected {m}")
        cut = res.cut
        if set(cut) & g.horizon:
            break
        separators.append(cut)
        i = max(dist[t] for t in cut)
    if len(separators) < 2:
        raise Exhausted("truncation too small for a separator sequence")
    return SeparatorSequence(tuple(separators), m)


def _sphere(g: TruncatedGraph, r: int) -> frozenset[str]:
    dist = g.distances([g.base])
    return frozenset(v for v, d in dist.items() if d == r)


def degree_sweep(spec: FamilySpec, radii, cap: int) -> list[dict]:
    """Per-radius boundary-to-horizon cut values."""
    rows = []
    for r in radii:
        g = generate_family(spec, r)
        ball = g.ball(g.base, r - 1)
        boundary = _sphere(g, r)
        res = max_disjoint_paths(g, boundary, g.horizon, excluded=ball)
        rows.append({"radius": r, "value": min(res.value, cap)})
    return rows


def end_vertex_degree(spec: FamilySpec, radii, cap: int = 8):
    """Stabilised end degree over a radius sweep, or THICK."""
    radii = list(radii)
    if len(radii) < 3 or sorted(set(radii)) != radii:
        raise ValueError("radii must be strictly increasing, at least 3 values")
    values = [row["value"] for row in degree_sweep(spec, radii, cap)]
    if values[-1] >= cap:
        return THICK
    if values[-2] == values[-1]:
        return values[-1]
    if all(a < b for a, b in zip(values, values[1:])):
        return THICK
    return THICK


def reference_ray(g: TruncatedGraph) -> tuple[str, ...]:
    """Canonical shortest base-to-horizon path (lexicographic BFS)."""
    prev = {g.base: None}
    queue = deque([g.base])
    goal = None
    while queue:
        a = queue.popleft()
        if a in g.horizon:
            goal = a
            break
        for b in sorted(g.adjacency[a]):
            if b not in prev:
                prev[b] = a
                queue.append(b)
    path = []
    while goal is not None:
        path.append(goal)
        goal = prev[goal]
    return tuple(path[::-1])


def fan_to_ray(g: TruncatedGraph, v: str, ray) -> int:
    """Max number of v-to-ray paths pairwise meeting only in v."""
    ray_set = frozenset(ray) - {v}
    if not ray_set:
        return 0
    net = _FlowNet()
    node_in, node_out = {}, {}
    for w in sorted(g.vertices):
        if w == v:
            continue
        node_in[w] = net.node()
        node_out[w] = net.node()
        net.arc(node_in[w], node_out[w], 1)
    s = net.node()
    t = net.node()
    for w in sorted(g.adjacency[v]):
        net.arc(s, node_in[w], net.INF)
    for w in sorted(g.vertices):
        if w == v:
            continue
        if w in ray_set:
            net.arc(node_out[w], t, net.INF)
            continue  # paths stop at their first ray vertex
        for z in sorted(g.adjacency[w]):
            if z != v and z in node_in:
                net.arc(node_out[w], node_in[z], net.INF)
    return net.max_flow(s, t)


def find_dominating_vertices(spec: FamilySpec, radii, cap: int = 8) -> VertexSet:
    """Vertices whose fan onto the reference ray keeps growing with radius.

    A vertex is reported dominating if its fan value reaches `cap` or is
    strictly increasing across the last three radii; the reported set must
    agree over the two largest radii.
    """
    radii = list(radii)
    if len(radii) < 3 or sorted(set(radii)) != radii:
        raise ValueError("radii must be strictly increasing, at least 3 values")
    fans: list[dict[str, int]] = []
    graphs = []
    for r in radii:
        g = generate_family(spec, r)
        ray = reference_ray(g)
        fans.append({v: fan_to_ray(g, v, ray) for v in sorted(g.vertices)})
        graphs.append(g)

    def dominating_at(idx: int) -> frozenset[str]:
        last3 = fans[idx - 2: idx + 1]
        common = set(last3[0]) & set(last3[1]) & set(last3[2])
        out = set()
        for v in common:
            vals = [f[v] for f in last3]
            if vals[-1] >= cap or vals[0] < vals[1] < vals[2]:
                out.add(v)
        return frozenset(out)

    final = dominating_at(len(radii) - 1)
    if len(radii) >= 4:
        # with a long enough sweep, the reported set must already have
        # settled one window earlier
        prev = dominating_at(len(radii) - 2)
        if final != prev:
            raise Unstable("dominating set changed at the largest radius; "
                           "increase the radii")
    return canon(final)
