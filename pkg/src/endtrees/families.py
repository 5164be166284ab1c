"""Finite truncations of one-ended graph families.

A truncation is a radius-parameterised snapshot of an infinite family with a
designated *horizon*: the boundary set standing in for the direction of the
unique end.  All built-in generators are deterministic; vertex ids are
canonical strings derived from family coordinates so that the same vertex has
the same id at every radius.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import FamilyError, HorizonSplit, PayloadError

VertexSet = tuple[str, ...]

BUILTIN_FAMILIES = (
    "ray",
    "ladder",
    "canopy",
    "canopy_fig2",
    "dominated_canopy",
    "alpha_example",
    "grid",
)


def canon(vertices: Iterable[str]) -> VertexSet:
    """Canonical duplicate-free sorted tuple; structural set equality."""
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class FamilySpec:
    name: str
    parameters: Mapping[str, int] = field(default_factory=dict)
    payload: Optional[dict] = None

    def __post_init__(self):
        if self.name not in BUILTIN_FAMILIES and self.name != "custom":
            raise FamilyError(f"unknown family {self.name!r}")
        if self.name == "custom" and self.payload is None:
            raise FamilyError("custom family needs an explicit payload")


class TruncatedGraph:
    """Immutable finite graph with a horizon. All operations are pure."""

    def __init__(self, vertices, edges, horizon, radius, labels=None,
                 base=None, family="custom"):
        self.vertices: frozenset[str] = frozenset(vertices)
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in edges:
            if u == v:
                raise PayloadError(f"self-loop at {u}")
            if u not in adj or v not in adj:
                raise PayloadError(f"edge {u}--{v} uses unknown vertex")
            adj[u].add(v)
            adj[v].add(u)
        self.adjacency: dict[str, frozenset[str]] = {
            v: frozenset(ns) for v, ns in adj.items()
        }
        self.horizon: frozenset[str] = frozenset(horizon)
        if not self.horizon:
            raise PayloadError("horizon must be nonempty")
        if not self.horizon <= self.vertices:
            raise PayloadError("horizon must be a subset of the vertices")
        self.radius = radius
        self.labels: dict[str, str] = dict(labels or {})
        self.family = family
        if not self._connected():
            raise PayloadError("truncation must be connected")
        if base is None:
            dist = self.distances(self.horizon)
            far = max(dist.values())
            base = min(v for v, d in dist.items() if d == far)
        self.base: str = base

    def _connected(self) -> bool:
        start = next(iter(self.vertices))
        seen = {start}
        queue = deque([start])
        while queue:
            for w in self.adjacency[queue.popleft()]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    def edges(self) -> list[tuple[str, str]]:
        out = []
        for v in sorted(self.vertices):
            for w in sorted(self.adjacency[v]):
                if v < w:
                    out.append((v, w))
        return out

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def distances(self, sources: Iterable[str]) -> dict[str, int]:
        """BFS distance from the nearest source; unreachable vertices absent."""
        dist = {s: 0 for s in sources}
        queue = deque(dist)
        while queue:
            v = queue.popleft()
            for w in self.adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def ball(self, center: str, r: int) -> frozenset[str]:
        dist = self.distances([center])
        return frozenset(v for v, d in dist.items() if d <= r)

    def __repr__(self):
        return (f"TruncatedGraph({self.family}, R={self.radius}, "
                f"|V|={len(self.vertices)})")


# ---------------------------------------------------------------------------
# built-in generators

def _gen_ray(radius: int):
    verts = [f"v{i}" for i in range(radius + 1)]
    edges = [(f"v{i}", f"v{i+1}") for i in range(radius)]
    return verts, edges, {f"v{radius}"}, {}, "v0"


def _gen_ladder(radius: int):
    verts, edges = [], []
    for i in range(radius + 1):
        verts += [f"a{i}", f"b{i}"]
        edges.append((f"a{i}", f"b{i}"))
        if i:
            edges += [(f"a{i-1}", f"a{i}"), (f"b{i-1}", f"b{i}")]
    return verts, edges, {f"a{radius}", f"b{radius}"}, {}, "a0"


def _canopy_tree(radius: int):
    """Spine r_0..r_R; the descendants of r_i form a depth-i binary tree."""
    verts = [f"spine:{i}" for i in range(radius + 1)]
    edges = [(f"spine:{i}", f"spine:{i+1}") for i in range(radius)]
    # labels mark only the leaf/internal distinction: the spine is not
    # structurally special below the horizon (a spine vertex's descending
    # spine segment and its hanging subtree are interchangeable)
    labels = {v: "tree" for v in verts}
    labels["spine:0"] = "leaf"
    for i in range(1, radius + 1):
        # hanging subtree below spine:i, rooted at address "" with height i-1
        root = f"t:{i}:"
        verts.append(root)
        edges.append((f"spine:{i}", root))
        stack = [""]
        while stack:
            addr = stack.pop()
            height = i - 1 - len(addr)
            labels[f"t:{i}:{addr}"] = "leaf" if height == 0 else "tree"
            if height > 0:
                for bit in "01":
                    child = addr + bit
                    verts.append(f"t:{i}:{child}")
                    edges.append((f"t:{i}:{addr}", f"t:{i}:{child}"))
                    stack.append(child)
    return verts, edges, labels


def _gen_canopy(radius: int):
    verts, edges, labels = _canopy_tree(radius)
    return verts, edges, {f"spine:{radius}"}, labels, "spine:0"


def _gen_canopy_fig2(radius: int):
    base_verts, base_edges, base_labels = _canopy_tree(radius)
    verts, edges, labels = [], [], {}
    for v in base_verts:
        for layer in "01":
            verts.append(f"{v}|{layer}")
            labels[f"{v}|{layer}"] = base_labels[v]
        edges.append((f"{v}|0", f"{v}|1"))
    for u, v in base_edges:
        edges += [(f"{u}|0", f"{v}|0"), (f"{u}|1", f"{v}|1")]
    horizon = {f"spine:{radius}|0", f"spine:{radius}|1"}
    return verts, edges, horizon, labels, "spine:0|0"


def _gen_dominated_canopy(radius: int, pendants: int = 3):
    verts, edges, labels = _canopy_tree(radius)
    leaves = [v for v in verts if labels[v] == "leaf"]
    verts.append("apex")
    labels["apex"] = "apex"
    for leaf in leaves:
        edges.append(("apex", leaf))
    for j in range(pendants):
        verts.append(f"pend:{j}")
        labels[f"pend:{j}"] = "pendant"
        edges.append(("apex", f"pend:{j}"))
    return verts, edges, {f"spine:{radius}"}, labels, "spine:0"


def _gen_alpha_example(radius: int):
    # ray w:0..w:R; for n = 1..R a path P_n of length n whose far endpoint
    # is identified with w:0.  The base vertex w:0 has degree R + 1, so the
    # family is not locally finite at the base.
    verts = [f"w:{i}" for i in range(radius + 1)]
    edges = [(f"w:{i}", f"w:{i+1}") for i in range(radius)]
    for n in range(1, radius + 1):
        for j in range(n):
            verts.append(f"P:{n}:{j}")
            if j:
                edges.append((f"P:{n}:{j-1}", f"P:{n}:{j}"))
        edges.append((f"P:{n}:{n-1}", "w:0"))
    return verts, edges, {f"w:{radius}"}, {}, "w:0"


def _gen_grid(radius: int):
    verts, edges = [], []
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            verts.append(f"g:{x}:{y}")
            if x > -radius:
                edges.append((f"g:{x-1}:{y}", f"g:{x}:{y}"))
            if y > -radius:
                edges.append((f"g:{x}:{y-1}", f"g:{x}:{y}"))
    horizon = {f"g:{x}:{y}" for x in range(-radius, radius + 1)
               for y in range(-radius, radius + 1)
               if abs(x) == radius or abs(y) == radius}
    return verts, edges, horizon, {}, "g:0:0"


def generate_family(spec: FamilySpec, radius: int) -> TruncatedGraph:
    """Build the radius-R truncation of a built-in or custom family."""
    if spec.name == "custom":
        return load_payload(spec.payload, radius=radius)
    if radius < 2:
        raise FamilyError("radius must be at least 2")
    if spec.name == "ray":
        parts = _gen_ray(radius)
    elif spec.name == "ladder":
        parts = _gen_ladder(radius)
    elif spec.name == "canopy":
        parts = _gen_canopy(radius)
    elif spec.name == "canopy_fig2":
        parts = _gen_canopy_fig2(radius)
    elif spec.name == "dominated_canopy":
        pendants = int(spec.parameters.get("pendants", 3))
        if pendants < 1:
            raise FamilyError("pendants must be positive")
        parts = _gen_dominated_canopy(radius, pendants)
    elif spec.name == "alpha_example":
        parts = _gen_alpha_example(radius)
    elif spec.name == "grid":
        parts = _gen_grid(radius)
    else:  # pragma: no cover - guarded by FamilySpec
        raise FamilyError(spec.name)
    verts, edges, horizon, labels, base = parts
    return TruncatedGraph(verts, edges, horizon, radius, labels, base,
                          family=spec.name)


# ---------------------------------------------------------------------------
# elementary set operations

def neighborhood(g: TruncatedGraph, s: Iterable[str]) -> VertexSet:
    """Vertices outside s adjacent to some vertex of s."""
    s = set(s)
    unknown = s - g.vertices
    if unknown:
        raise KeyError(f"unknown vertex ids: {sorted(unknown)}")
    out = set()
    for v in s:
        out |= g.adjacency[v]
    return canon(out - s)


def components(g: TruncatedGraph, removed: Iterable[str]) -> list[VertexSet]:
    """Connected components of g - removed, canonically ordered."""
    removed = set(removed)
    unknown = removed - g.vertices
    if unknown:
        raise KeyError(f"unknown vertex ids: {sorted(unknown)}")
    left = set(g.vertices) - removed
    comps = []
    while left:
        start = next(iter(left))
        comp = {start}
        queue = deque([start])
        while queue:
            for w in g.adjacency[queue.popleft()]:
                if w in left and w not in comp:
                    comp.add(w)
                    queue.append(w)
        left -= comp
        comps.append(canon(comp))
    return sorted(comps)


def horizon_component(g: TruncatedGraph, removed: Iterable[str]) -> VertexSet:
    """The unique component of g - removed holding the whole horizon."""
    removed = set(removed)
    if removed & g.horizon:
        raise HorizonSplit("removed set intersects the horizon; "
                           "increase the truncation radius")
    for comp in components(g, removed):
        if g.horizon <= set(comp):
            return comp
    raise HorizonSplit("horizon meets several components; "
                       "increase the truncation radius")


# ---------------------------------------------------------------------------
# custom payload + DOT export

def load_payload(payload: dict, radius: int = 0) -> TruncatedGraph:
    try:
        verts = payload["vertices"]
        edges = [tuple(e) for e in payload["edges"]]
        horizon = payload["horizon"]
    except (KeyError, TypeError) as exc:
        raise PayloadError(f"malformed payload: {exc}") from exc
    return TruncatedGraph(verts, edges, horizon, radius,
                          payload.get("labels"), payload.get("base"))


def dump_payload(g: TruncatedGraph) -> str:
    doc = {
        "vertices": sorted(g.vertices),
        "edges": [list(e) for e in g.edges()],
        "horizon": sorted(g.horizon),
        "labels": {v: g.labels[v] for v in sorted(g.labels)},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def graph_to_dot(g: TruncatedGraph) -> str:
    """DOT rendering; horizon vertices are drawn as boxes."""
    lines = [f'graph "{g.family}" {{']
    for v in sorted(g.vertices):
        shape = "box" if v in g.horizon else "ellipse"
        lines.append(f'  "{v}" [shape={shape}];')
    for u, v in g.edges():
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
