"""Automorphism search on truncations and the checks built on it.

The group computed here is the full group of adjacency-preserving
permutations that fix the horizon setwise.  Near the horizon this
over-approximates the symmetries of the underlying infinite family, so
callers trim a margin (default 1) in orbit counts and invariance checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded
from .families import TruncatedGraph, VertexSet, canon
from .separations import Separation

LARGE = "Large"

ORDER_CAP = 10 ** 9

VERTEX_CAP = 5000

Perm = dict  # vertex id -> vertex id, total on g.vertices


@dataclass
class AutomorphismGroup:
    generators: list[Perm]
    orbits: tuple[VertexSet, ...]
    order: object  # int, or LARGE past ORDER_CAP

    def orbit_of(self, v: str) -> VertexSet:
        for orb in self.orbits:
            if v in orb:
                return orb
        raise KeyError(v)

    def set_orbit(self, vs: frozenset[str], budget: int = 100_000
                  ) -> list[frozenset[str]]:
        """Closure of a vertex set under the generator images."""
        seen = {vs}
        queue = [vs]
        while queue:
            cur = queue.pop()
            for gen in self.generators:
                img = frozenset(gen[v] for v in cur)
                if img not in seen:
                    if len(seen) >= budget:
                        raise BudgetExceeded("set-orbit budget hit")
                    seen.add(img)
                    queue.append(img)
        return sorted(seen, key=sorted)


def _initial_colors(g: TruncatedGraph) -> dict[str, tuple]:
    dist = g.distances(g.horizon)
    return {v: (g.degree(v), dist[v], g.labels.get(v, ""), v in g.horizon)
            for v in g.vertices}


def _refine_pair(g: TruncatedGraph, c1: dict, c2: dict):
    """Run equitable refinement on two colorings in a shared color space."""
    # normalize heterogeneous color keys to ints so signatures sort
    palette = {c: i for i, c in enumerate(
        sorted(set(c1.values()) | set(c2.values()), key=repr))}
    c1 = {v: palette[c] for v, c in c1.items()}
    c2 = {v: palette[c] for v, c in c2.items()}
    while True:
        table: dict[tuple, int] = {}
        n1, n2 = {}, {}
        for colors, out in ((c1, n1), (c2, n2)):
            for v in g.vertices:
                sig = (colors[v], tuple(sorted(colors[w]
                                               for w in g.adjacency[v])))
                if sig not in table:
                    table[sig] = len(table)
                out[v] = table[sig]
        if len(set(n1.values())) == len(set(c1.values())) \
                and len(set(n2.values())) == len(set(c2.values())):
            return n1, n2
        c1, c2 = n1, n2


def _cells(colors: dict) -> dict[int, list[str]]:
    cells: dict[int, list[str]] = {}
    for v in sorted(colors):
        cells.setdefault(colors[v], []).append(v)
    return cells


def _is_automorphism(g: TruncatedGraph, perm: Perm) -> bool:
    if frozenset(perm[v] for v in g.horizon) != g.horizon:
        return False
    for v in g.vertices:
        if {perm[w] for w in g.adjacency[v]} != g.adjacency[perm[v]]:
            return False
    return True


class _Search:
    def __init__(self, g: TruncatedGraph, budget: int):
        self.g = g
        self.base = _initial_colors(g)
        self.budget = budget
        self.nodes = 0

    def find(self, constraints: list[tuple[str, str]]) -> Perm | None:
        """An automorphism mapping each (src, dst) pair, or None."""
        c1 = dict(self.base)
        c2 = dict(self.base)
        for i, (src, dst) in enumerate(constraints):
            c1[src] = (c1[src], "fix", i)
            c2[dst] = (c2[dst], "fix", i)
        return self._search(c1, c2)

    def _search(self, c1, c2) -> Perm | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded("automorphism search budget hit")
        c1, c2 = _refine_pair(self.g, c1, c2)
        cells1, cells2 = _cells(c1), _cells(c2)
        if {k: len(v) for k, v in cells1.items()} != \
                {k: len(v) for k, v in cells2.items()}:
            return None
        target = None
        for color in sorted(cells1):
            if len(cells1[color]) > 1:
                if target is None or len(cells1[color]) < len(cells1[target]):
                    target = color
        if target is None:
            perm = {cells1[c][0]: cells2[c][0] for c in cells1}
            return perm if _is_automorphism(self.g, perm) else None
        u = cells1[target][0]
        for z in cells2[target]:
            d1 = dict(c1)
            d2 = dict(c2)
            d1[u] = (c1[u], "pick")
            d2[z] = (c2[z], "pick")
            found = self._search(d1, d2)
            if found is not None:
                return found
        return None


def automorphisms(g: TruncatedGraph, budget: int = 200_000
                  ) -> AutomorphismGroup:
    """Generators, orbits and order of the horizon-setwise group.

    Stabilizer chain over the vertices in canonical order; the order is the
    product of the chain's orbit lengths (orbit-stabilizer), reported as
    LARGE past ORDER_CAP.
    """
    if len(g.vertices) > VERTEX_CAP:
        raise BudgetExceeded(f"graph exceeds the {VERTEX_CAP}-vertex cap")
    search = _Search(g, budget)
    generators: list[Perm] = []
    order = 1
    prefix: list[tuple[str, str]] = []
    verts = sorted(g.vertices)
    for v in verts:
        fixed = [s for s, _ in prefix]
        refined, _ = _refine_pair(g, _individualized(search.base, fixed),
                                  _individualized(search.base, fixed))
        cell = [w for w in verts if refined[w] == refined[v] and w != v]
        if not cell:
            prefix.append((v, v))
            continue
        # orbit of v in the prefix stabilizer, grown Schreier-style: known
        # prefix-fixing generators seed it, one search per unseen candidate
        stab = [gen for gen in generators
                if all(gen[p] == p for p in fixed)]
        orbit = _point_orbit(v, stab)
        for w in cell:
            if w in orbit:
                continue
            perm = search.find(prefix + [(v, w)])
            if perm is not None:
                generators.append(perm)
                stab.append(perm)
                orbit = _point_orbit(v, stab)
        order *= len(orbit)
        prefix.append((v, v))
    orbits = _orbit_partition(g, generators)
    return AutomorphismGroup(generators, orbits,
                             order if order <= ORDER_CAP else LARGE)


def _point_orbit(v: str, gens: list[Perm]) -> set[str]:
    orbit = {v}
    queue = [v]
    while queue:
        u = queue.pop()
        for gen in gens:
            w = gen[u]
            if w not in orbit:
                orbit.add(w)
                queue.append(w)
    return orbit


def _individualized(base: dict, fixed: list[str]) -> dict:
    colors = dict(base)
    for i, v in enumerate(fixed):
        colors[v] = (colors[v], "fix", i)
    return colors


def _orbit_partition(g: TruncatedGraph, generators: list[Perm]
                     ) -> tuple[VertexSet, ...]:
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for gen in generators:
        for v, w in gen.items():
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[max(rv, rw)] = min(rv, rw)
    groups: dict[str, list[str]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return tuple(sorted((canon(vs) for vs in groups.values())))


def orbit_count_interior(g: TruncatedGraph, aut: AutomorphismGroup,
                         margin: int = 1) -> int:
    """Orbit count over vertices at distance >= margin from the horizon."""
    if margin >= g.radius:
        raise ValueError("margin must be smaller than the radius")
    dist = g.distances(g.horizon)
    interior = {v for v, d in dist.items() if d >= margin}
    return sum(1 for orb in aut.orbits if set(orb) & interior)


def apply_to_separation(gen: Perm, s: Separation) -> Separation:
    return Separation(canon(gen[v] for v in s.a), canon(gen[v] for v in s.b))


def check_family_invariance(family, aut: AutomorphismGroup):
    """(True, None) iff every generator maps every member into the family."""
    plain = set()
    for m in family:
        s = m.sep if hasattr(m, "sep") else m
        plain.add(s)
        plain.add(s.reverse())
    for gi, gen in enumerate(aut.generators):
        for s in sorted(plain, key=lambda s: (s.a, s.b)):
            img = apply_to_separation(gen, s)
            if img not in plain:
                return False, (gi, s)
    return True, None


def tree_tail_check(t, generators: list[Perm]):
    """Each tree generator must fix a tail of the designated ray pointwise.

    `t` needs a `designated_ray` attribute listing node ids from the bottom
    of the spine to the top node.
    """
    ray = list(t.designated_ray)
    for gi, gen in enumerate(generators):
        fixed_tail = False
        for i in range(len(ray)):
            if all(gen[n] == n for n in ray[i:]):
                fixed_tail = True
                break
        if not fixed_tail:
            return False, gi
    return True, None


def independence_split(g: TruncatedGraph, gen: Perm, s: Separation
                       ) -> tuple[Perm, Perm] | None:
    """Side-restricted extensions of a separator-fixing automorphism.

    If `gen` fixes the separator of `s` pointwise and each strict side
    setwise, its restriction to either side extended by the identity is
    again an automorphism; both extensions are returned after verification.
    Returns None when the hypotheses fail.
    """
    sep = set(s.separator)
    a_only = set(s.a_only)
    b_only = set(s.b_only)
    if any(gen[v] != v for v in sep):
        return None
    if {gen[v] for v in a_only} != a_only or \
            {gen[v] for v in b_only} != b_only:
        return None
    left = {v: (gen[v] if v in a_only else v) for v in g.vertices}
    right = {v: (gen[v] if v in b_only else v) for v in g.vertices}
    assert _is_automorphism(g, left) and _is_automorphism(g, right), \
        "side restriction must extend to an automorphism"
    return left, right
