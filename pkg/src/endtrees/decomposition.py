"""Invariant nested families, decomposition trees, parts, ray decompositions.

The pipeline: a spine of relevant separations is grown level by level
through the nice-set recursion, each level is closed under the automorphism
group, the directed tree is built by the inclusion rule on consecutive
levels, and the parts are carved out of the A sides.  A synthetic top node
absorbs the uncovered remainder near the horizon so the finite tree stays
connected even when the top level is a whole orbit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .connectivity import disjoint_separator_sequence, max_disjoint_paths
from .errors import (Disconnected, EmptyNiceSet, NestednessViolation,
                     NotEnoughLevels, OutdegreeViolation)
from .families import TruncatedGraph, VertexSet, canon
from .relevant import RelevantSeparation, compute_nice_set
from .separations import Separation, nested
from .symmetry import AutomorphismGroup, check_family_invariance

TOP = "top"


@dataclass(frozen=True)
class NestedFamily:
    members: tuple[RelevantSeparation, ...]
    levels: dict
    orbit_of: dict
    spine: tuple[RelevantSeparation, ...]

    @property
    def level_count(self) -> int:
        return max(self.levels.values())

    def level_members(self, n: int):
        return [m for m in self.members
                if self.levels[_key(m)] == n]


@dataclass(frozen=True)
class DecompositionTree:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    member_of: dict
    node_of: dict
    levels: dict
    orbit_of: dict
    designated_ray: tuple[str, ...]


@dataclass(frozen=True)
class TreeDecomposition:
    tree: DecompositionTree
    parts: dict
    adhesion: int


@dataclass(frozen=True)
class RayDecomposition:
    slabs: tuple[VertexSet, ...]
    interfaces: tuple[VertexSet, ...]
    m: int


def _key(member: RelevantSeparation):
    return (member.sep.a, member.sep.b)


def pick_seed(g: TruncatedGraph, pool) -> RelevantSeparation:
    """The lexicographically least pool member whose A side holds the base."""
    cands = [r for r in pool if g.base in r.sep.a_set]
    if not cands:
        raise NotEnoughLevels("no relevant separation covers the base vertex")
    return min(cands, key=lambda r: (len(r.sep.a), r.sep.a))


def build_invariant_family(g: TruncatedGraph, k: int, pool, alpha,
                           aut: AutomorphismGroup) -> NestedFamily:
    """The orbit-closed nested family grown by the spine recursion.

    Each spine member is the nice-set element extending its predecessor's A
    side (lexicographically least on ties); its whole nice set is one orbit
    and becomes the level.  The seed itself is excluded from the family.
    """
    seed = pick_seed(g, pool)
    spine = [seed]
    members: list[RelevantSeparation] = []
    levels: dict = {}
    orbit_of: dict = {}
    n = 0
    while True:
        try:
            nice = compute_nice_set(g, spine[-1], pool, alpha, aut)
        except EmptyNiceSet:
            break
        n += 1
        x_side = spine[-1].sep.a_set
        extenders = [r for r in nice if x_side <= r.sep.a_set]
        assert extenders, "some nice member must extend the spine"
        nxt = min(extenders, key=lambda r: (len(r.small_side), r.small_side))
        assert x_side < nxt.sep.a_set, "spine A sides must strictly grow"
        spine.append(nxt)
        for r in nice:
            if _key(r) not in levels:
                members.append(r)
                levels[_key(r)] = n
                orbit_of[_key(r)] = n - 1
    if n < 3:
        raise NotEnoughLevels(
            f"only {n} spine levels fit; increase the radius")
    members.sort(key=lambda r: (levels[_key(r)], r.small_side))
    fam = NestedFamily(tuple(members), levels, orbit_of, tuple(spine[1:]))
    for r1, r2 in combinations(members, 2):
        if not nested(r1.sep, r2.sep):
            raise NestednessViolation(f"{r1.sep} crosses {r2.sep}")
    ok, witness = check_family_invariance(members, aut)
    assert ok, f"family must be invariant, witness {witness}"
    return fam


def build_tree(family: NestedFamily) -> DecompositionTree:
    """The directed tree: level-n members point into level n+1 by inclusion.

    The top level points to a synthetic top node standing in for the
    unbounded remainder, so outdegree is exactly one everywhere below it.
    """
    members = family.members
    node_of = {_key(m): f"t{i}" for i, m in enumerate(members)}
    member_of = {v: m for m in members for v in [node_of[_key(m)]]}
    top_level = family.level_count
    edges = []
    for m in members:
        lvl = family.levels[_key(m)]
        if lvl == top_level:
            edges.append((node_of[_key(m)], TOP))
            continue
        succs = [o for o in members
                 if family.levels[_key(o)] == lvl + 1
                 and m.sep.a_set <= o.sep.a_set]
        if len(succs) != 1:
            raise OutdegreeViolation(
                f"node at level {lvl} has {len(succs)} successors")
        edges.append((node_of[_key(m)], node_of[_key(succs[0])]))
    nodes = tuple(node_of[_key(m)] for m in members) + (TOP,)
    _check_tree_shape(nodes, edges)
    ray = tuple(node_of[_key(m)] for m in family.spine) + (TOP,)
    levels = {node_of[kk]: n for kk, n in family.levels.items()}
    levels[TOP] = top_level + 1
    orbit_of = {node_of[kk]: o for kk, o in family.orbit_of.items()}
    return DecompositionTree(nodes, tuple(edges), member_of, node_of,
                             levels, orbit_of, ray)


def _check_tree_shape(nodes, edges):
    if len(edges) != len(nodes) - 1:
        raise Disconnected("edge count must be node count minus one")
    adj: dict[str, set[str]] = {v: set() for v in nodes}
    for s, t in edges:
        adj[s].add(t)
        adj[t].add(s)
    seen = {nodes[0]}
    queue = deque([nodes[0]])
    while queue:
        for w in adj[queue.popleft()]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != len(nodes):
        raise Disconnected("tree is not connected")


def build_tree_decomposition(g: TruncatedGraph, family: NestedFamily,
                             tree: DecompositionTree) -> TreeDecomposition:
    """Parts: each node's A side minus the strict sides of its predecessors."""
    preds: dict[str, list[str]] = {v: [] for v in tree.nodes}
    for s, t in tree.edges:
        preds[t].append(s)
    parts = {}
    for node in tree.nodes:
        if node == TOP:
            covered = set()
            for s, t in tree.edges:
                if t == TOP:
                    m = tree.member_of[s]
                    covered |= set(m.small_side)
            parts[node] = canon(g.vertices - covered)
            continue
        m = tree.member_of[node]
        part = set(m.sep.a)
        for u in preds[node]:
            mu = tree.member_of[u]
            part -= set(mu.small_side)
        parts[node] = canon(part)
    adhesion = max(m.sep.order for m in family.members)
    assert adhesion == family.members[0].k, "adhesion must equal the degree"
    return TreeDecomposition(tree, parts, adhesion)


def induced_tree_generators(tree: DecompositionTree,
                            aut: AutomorphismGroup) -> list[dict]:
    """The node permutations each graph generator induces on the tree."""
    from .symmetry import apply_to_separation
    out = []
    for gen in aut.generators:
        perm = {TOP: TOP}
        for node, m in tree.member_of.items():
            img = apply_to_separation(gen, m.sep)
            perm[node] = tree.node_of[(img.a, img.b)]
        out.append(perm)
    return out


def spine_deletion_depth(tree: DecompositionTree) -> int:
    """Longest directed path (edges) after deleting the designated ray."""
    ray = set(tree.designated_ray)
    succ: dict[str, list[str]] = {}
    for s, t in tree.edges:
        if s not in ray and t not in ray:
            succ.setdefault(s, []).append(t)
    depth: dict[str, int] = {}

    def walk(v):
        if v in depth:
            return depth[v]
        depth[v] = 1 + max((walk(w) for w in succ.get(v, [])), default=-1)
        return depth[v]

    return max((walk(v) for v in tree.nodes if v not in ray), default=0)


def verify_tree_decomposition(g: TruncatedGraph, td: TreeDecomposition,
                              k: int) -> dict:
    """Axioms, adhesion, display and tree-shape checks; failures reported."""
    tree = td.tree
    parts = td.parts
    failures: list[str] = []
    covered = set()
    for p in parts.values():
        covered |= set(p)
    non_horizon = g.vertices - g.horizon
    coverage = len(covered & non_horizon) / len(non_horizon)

    # (T1) on the covered region: every vertex under some node's A side
    # must appear in a part
    region = set()
    for node in tree.nodes:
        if node == TOP:
            region |= set(parts[node])
        else:
            region |= tree.member_of[node].sep.a_set
    for v in sorted(region - covered):
        failures.append(f"T1: {v} is in the covered region but in no part")

    # (T2): both endpoints in the region -> some part holds the edge
    for u, v in g.edges():
        if u in region and v in region:
            if not any(u in set(p) and v in set(p) for p in parts.values()):
                failures.append(f"T2: edge {u}-{v} in no part")

    # (T3): the nodes holding v induce a connected subtree
    adj: dict[str, set[str]] = {n: set() for n in tree.nodes}
    for s, t in tree.edges:
        adj[s].add(t)
        adj[t].add(s)
    for v in sorted(covered):
        holders = [n for n in tree.nodes if v in set(parts[n])]
        seen = {holders[0]}
        queue = deque([holders[0]])
        holder_set = set(holders)
        while queue:
            for w in adj[queue.popleft()]:
                if w in holder_set and w not in seen:
                    seen.add(w)
                    queue.append(w)
        if seen != holder_set:
            failures.append(f"T3: parts holding {v} are disconnected")

    # adhesion sets and display per tree edge
    ray = tree.designated_ray
    for s, t in tree.edges:
        m = tree.member_of[s]
        adhesion_set = set(parts[s]) & set(parts[t])
        if adhesion_set != set(m.sep.separator):
            failures.append(f"adhesion set of {s}->{t} is not the separator")
        if len(set(m.sep.separator)) != k:
            failures.append(f"adhesion size of {s}->{t} is not {k}")
        if not g.horizon <= m.sep.b_set:
            failures.append(f"display: horizon not behind edge {s}->{t}")
        # associated-separation consistency: the union of parts on the s
        # side must be the member's A side (within the covered region)
        side = _side_nodes(tree, adj, s, t)
        x_s = set()
        for n in side:
            x_s |= set(parts[n])
        if x_s != m.sep.a_set & covered:
            failures.append(f"associated separation of {s}->{t} mismatch")

    depth = spine_deletion_depth(tree)
    level_count = max(tree.levels.values())
    if depth >= level_count:
        failures.append("spine-deletion depth bound violated")

    return {
        "coverage": coverage,
        "t1_pass": coverage >= 0.9 and
        not any(f.startswith("T1") for f in failures),
        "t2_pass": not any(f.startswith("T2") for f in failures),
        "t3_pass": not any(f.startswith("T3") for f in failures),
        "adhesion": td.adhesion,
        "adhesion_pass": td.adhesion == k and
        not any(f.startswith("adhesion") for f in failures),
        "display_pass": not any(f.startswith("display") for f in failures),
        "spine_deletion_depth": depth,
        "depth_pass": depth < level_count,
        "ray": list(ray),
        "failures": failures,
        "passed": coverage >= 0.9 and not failures,
    }


def _side_nodes(tree: DecompositionTree, adj, s: str, t: str) -> set[str]:
    # component of tree - edge st containing s
    seen = {s}
    queue = deque([s])
    while queue:
        cur = queue.popleft()
        for w in adj[cur]:
            if (cur, w) in ((s, t), (t, s)):
                continue
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def ray_decomposition(g: TruncatedGraph, m: int) -> RayDecomposition:
    """Slabs between consecutive separators of the annulus sequence.

    The four conditions: the slabs cover g, interfaces have size m, each
    internal slab carries m disjoint interface-to-interface paths, and only
    the final slab touches the horizon.
    """
    seq = disjoint_separator_sequence(g, m)
    seps = seq.separators
    horizon_sides = []
    for t in seps:
        comp = _horizon_side(g, frozenset(t))
        horizon_sides.append(comp)
    slabs = [canon(g.vertices - horizon_sides[0])]
    for i in range(1, len(seps)):
        slab = (horizon_sides[i - 1] - horizon_sides[i]) | set(seps[i - 1])
        slabs.append(canon(slab))
    slabs.append(canon(horizon_sides[-1] | set(seps[-1])))

    union = set()
    for s in slabs:
        union |= set(s)
    assert union == g.vertices, "slabs must cover the graph"
    for t in seps:
        assert len(t) == m, "interfaces must have size m"
    for i in range(1, len(seps)):
        slab = set(slabs[i])
        res = max_disjoint_paths(g, seps[i - 1], seps[i],
                                 excluded=g.vertices - slab)
        assert res.value == m, \
            f"slab {i} must carry {m} disjoint interface paths"
    for i, slab in enumerate(slabs[:-1]):
        assert not (set(slab) & g.horizon), \
            "only the final slab may touch the horizon"
    return RayDecomposition(tuple(slabs), seps, m)


def _horizon_side(g: TruncatedGraph, removed: frozenset[str]):
    start = sorted(g.horizon)[0]
    comp = {start}
    queue = deque([start])
    while queue:
        for w in g.adjacency[queue.popleft()]:
            if w not in removed and w not in comp:
                comp.add(w)
                queue.append(w)
    return comp
