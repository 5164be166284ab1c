"""Relevant separations: recognition, enumeration, ranking, nice sets.

A separation (A, B) of a truncation is relevant for end degree k when its
order is exactly k, A - B is connected and attached to the whole separator,
the horizon lies in B - A, and no smaller-order separation pushes the
horizon further out.  The last condition is certified constructively by k
vertex-disjoint separator-to-horizon paths through the B side.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .connectivity import disjoint_separator_sequence, max_disjoint_paths
from .errors import (BudgetExceeded, CycleDetected, EmptyNiceSet,
                     HorizonOnWrongSide, SeparatorNotAttached,
                     SideDisconnected, SmallerCutExists, WrongOrder)
from .families import TruncatedGraph, VertexSet, canon, neighborhood
from .separations import Separation, is_tight, leq, lt, make_separation

DEFAULT_POOL_BUDGET = 200_000


@dataclass(frozen=True)
class RelevantSeparation:
    sep: Separation
    k: int
    certificate: tuple[tuple[str, ...], ...]

    @property
    def small_side(self) -> VertexSet:
        return self.sep.a_only

    def to_json(self) -> dict:
        return {"a": list(self.sep.a), "b": list(self.sep.b), "k": self.k,
                "certificate": [list(p) for p in self.certificate]}


@dataclass(frozen=True)
class AlphaTable:
    sep_rank: dict
    vertex_rank: dict
    pool: tuple

    def rank_of_set(self, vs) -> int:
        return max((self.vertex_rank.get(v, 0) for v in vs), default=0)


def verify_relevant(g: TruncatedGraph, s: Separation,
                    k: int) -> RelevantSeparation:
    """Check the five relevance conditions; package the path certificate."""
    if s.order != k:
        raise WrongOrder(f"order {s.order}, expected {k}")
    small = set(s.a_only)
    if not small or not _connected(g, small):
        raise SideDisconnected("A - B must be nonempty and connected")
    for v in s.separator:
        if not (g.adjacency[v] & small):
            raise SeparatorNotAttached(f"{v} has no neighbour in A - B")
    if not g.horizon <= (s.b_set - s.a_set):
        raise HorizonOnWrongSide("horizon must lie in B - A")
    res = max_disjoint_paths(g, s.separator, g.horizon, excluded=s.a_only)
    if res.value < k:
        raise SmallerCutExists(
            f"only {res.value} disjoint separator-to-horizon paths")
    assert is_tight(g, s), "relevant separations are tight"
    return RelevantSeparation(s, k, res.paths[:k])


def _connected(g: TruncatedGraph, vs: set[str]) -> bool:
    start = next(iter(vs))
    seen = {start}
    queue = deque([start])
    while queue:
        for w in g.adjacency[queue.popleft()]:
            if w in vs and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == vs


def _from_small_side(g: TruncatedGraph, small: frozenset[str],
                     k: int) -> RelevantSeparation | None:
    sep_set = neighborhood(g, small)
    if len(sep_set) != k:
        return None
    a = small | set(sep_set)
    b = g.vertices - small
    try:
        return verify_relevant(g, make_separation(g, a, b), k)
    except (WrongOrder, SideDisconnected, SeparatorNotAttached,
            HorizonOnWrongSide, SmallerCutExists):
        return None


def enumerate_relevant(g: TruncatedGraph, k: int, max_side: int,
                       budget: int = DEFAULT_POOL_BUDGET
                       ) -> list[RelevantSeparation]:
    """All relevant separations with |A - B| <= max_side.

    Candidate small sides are grown breadth-first as connected sets; the
    small side determines the separation, so results are keyed by it.
    """
    seen: set[frozenset[str]] = set()
    queue: deque[frozenset[str]] = deque()
    for v in sorted(g.vertices - g.horizon):
        c = frozenset([v])
        seen.add(c)
        queue.append(c)
    out = []
    while queue:
        c = queue.popleft()
        rel = _from_small_side(g, c, k)
        if rel is not None:
            out.append(rel)
        if len(c) == max_side:
            continue
        for w in sorted(neighborhood(g, c)):
            if w in g.horizon:
                continue
            bigger = c | {w}
            if bigger not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded("relevant enumeration budget hit")
                seen.add(bigger)
                queue.append(bigger)
    return sorted(out, key=lambda r: (len(r.small_side), r.small_side))


def degenerate_relevant(g: TruncatedGraph, vertices,
                        k: int) -> RelevantSeparation | None:
    """The rank-zero separation (S, V) with empty small side, if valid.

    The attachment condition is vacuous for an empty small side; validity
    reduces to k disjoint paths from the separator to the horizon.
    """
    sep_set = frozenset(vertices)
    if len(sep_set) != k or sep_set & g.horizon:
        return None
    res = max_disjoint_paths(g, sep_set, g.horizon)
    if res.value < k:
        return None
    s = Separation(canon(sep_set), canon(g.vertices))
    return RelevantSeparation(s, k, res.paths[:k])


def relevant_pool(g: TruncatedGraph, k: int,
                  budget: int = DEFAULT_POOL_BUDGET,
                  include_degenerate: bool = True
                  ) -> list[RelevantSeparation]:
    """The complete relevant pool, generated separator-first.

    A - B is always a full component of g minus the separator, so iterating
    over k-subsets of the non-horizon vertices and their components is
    exhaustive with no bound on the side size.  Degenerate members (empty
    small side) are the rank-zero floor of the ranking and are included by
    default.
    """
    interior = sorted(g.vertices - g.horizon)
    count = 0
    out = {}
    for sep_set in combinations(interior, k):
        count += 1
        if count > budget:
            raise BudgetExceeded("relevant pool budget hit")
        removed = frozenset(sep_set)
        if include_degenerate:
            deg = degenerate_relevant(g, removed, k)
            if deg is not None:
                out[("deg", removed)] = deg
        comps = _components_without(g, removed)
        for comp in comps:
            if comp & g.horizon:
                continue
            rel = _from_small_side(g, comp, k)
            if rel is not None:
                out[comp] = rel
    return sorted(out.values(), key=lambda r: (len(r.small_side),
                                               r.small_side, r.sep.a))


def _components_without(g: TruncatedGraph, removed: frozenset[str]):
    left = g.vertices - removed
    comps = []
    seen: set[str] = set()
    for v in sorted(left):
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            for w in g.adjacency[queue.popleft()]:
                if w in left and w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def build_exhausting_sequence(g: TruncatedGraph,
                              k: int) -> list[RelevantSeparation]:
    """A strictly increasing chain of relevant separations exhausting g.

    Built from the disjoint separator sequence: the n-th side A_n is the
    base component of g minus the (n+1)-th separator, together with that
    separator.
    """
    seq = disjoint_separator_sequence(g, k)
    chain = []
    prev = None
    for t in seq.separators[1:]:
        removed = frozenset(t)
        base_comp = _component_of(g, g.base, removed)
        a = base_comp | removed
        b = (g.vertices - base_comp)
        rel = verify_relevant(g, make_separation(g, a, b), k)
        if prev is not None:
            assert lt(prev.sep, rel.sep), "chain must strictly increase"
            assert rel.sep.b_set < prev.sep.b_set, "B sides must shrink"
        chain.append(rel)
        prev = rel
    return chain


def _component_of(g: TruncatedGraph, v: str, removed: frozenset[str]):
    comp = {v}
    queue = deque([v])
    while queue:
        for w in g.adjacency[queue.popleft()]:
            if w not in removed and w not in comp:
                comp.add(w)
                queue.append(w)
    return frozenset(comp)


def compute_alpha(g: TruncatedGraph, pool) -> AlphaTable:
    """Longest-chain ranks over the pool's strict order, plus vertex ranks."""
    if not pool:
        raise ValueError("pool must be nonempty")
    seps = [r.sep for r in pool]
    # degenerate members (B = V) are the floor: nothing lies strictly below
    # one, so only proper members need a full scan
    below = {}
    for s in seps:
        below[s] = [t for t in seps if lt(t, s)] if s.a_only else []
    rank: dict[Separation, int] = {}
    state: dict[Separation, int] = {}

    def visit(s):
        if state.get(s) == 1:
            raise CycleDetected("strict order has a cycle (equality bug)")
        if s in rank:
            return rank[s]
        state[s] = 1
        rank[s] = 1 + max((visit(t) for t in below[s]), default=-1)
        state[s] = 2
        return rank[s]

    for s in seps:
        visit(s)
    vertex_rank: dict[str, int] = {}
    for s in seps:
        for v in s.separator:
            vertex_rank[v] = max(vertex_rank.get(v, 0), rank[s])
    return AlphaTable({r: rank[r.sep] for r in pool}, vertex_rank,
                      tuple(pool))


def compute_nice_set(g: TruncatedGraph, x: RelevantSeparation, pool,
                     alpha: AlphaTable, aut) -> list[RelevantSeparation]:
    """Minimal pool members outranking x whose A side captures an image of x.

    A pool member is admissible when every separator vertex outranks the
    rank of x's A side and some automorphic image of that side fits inside
    the member's A side; the minimal admissible members are returned, and
    their structural properties (per-image uniqueness, pairwise A-inside-D
    nesting, single orbit) are asserted.
    """
    x_side = frozenset(x.sep.a)
    alpha_x = alpha.rank_of_set(x_side)
    images = aut.set_orbit(x_side)
    admissible = []
    for r in pool:
        if any(alpha.vertex_rank.get(v, 0) <= alpha_x
               for v in r.sep.separator):
            continue
        if any(img <= r.sep.a_set for img in images):
            admissible.append(r)
    minimal = [r for r in admissible
               if not any(lt(o.sep, r.sep) for o in admissible)]
    if not minimal:
        raise EmptyNiceSet("no admissible extension; increase the radius")
    minimal.sort(key=lambda r: (len(r.small_side), r.small_side))
    _assert_nice_structure(minimal, images, aut)
    return minimal


def _assert_nice_structure(minimal, images, aut):
    for img in images:
        holders = [r for r in minimal if img <= r.sep.a_set]
        assert len(holders) == 1, \
            "each image must lie in exactly one minimal member"
    for r1, r2 in combinations(minimal, 2):
        assert r1.sep.a_set <= r2.sep.b_set and r2.sep.a_set <= r1.sep.b_set, \
            "minimal members must nest A inside the partner's B"
    if len(minimal) > 1:
        orbit = _separation_orbit(minimal[0].sep, aut)
        for r in minimal[1:]:
            assert (r.sep.a, r.sep.b) in orbit, \
                "minimal members must form a single orbit"


def _separation_orbit(s: Separation, aut, budget: int = 100_000):
    from .symmetry import apply_to_separation
    seen = {(s.a, s.b)}
    queue = [s]
    while queue:
        cur = queue.pop()
        for gen in aut.generators:
            img = apply_to_separation(gen, cur)
            if (img.a, img.b) not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded("separation orbit budget hit")
                seen.add((img.a, img.b))
                queue.append(img)
    return seen
