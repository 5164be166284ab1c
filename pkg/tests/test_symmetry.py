"""Automorphism search against a brute-force permutation oracle."""

from itertools import permutations

import pytest

from endtrees.families import FamilySpec, TruncatedGraph, generate_family
from endtrees.separations import make_separation
from endtrees.symmetry import (LARGE, apply_to_separation, automorphisms,
                               check_family_invariance, independence_split,
                               orbit_count_interior)

from conftest import random_connected_graph


def brute_group_order(g: TruncatedGraph) -> int:
    """Count all adjacency-preserving, horizon-setwise permutations."""
    verts = sorted(g.vertices)
    count = 0
    for image in permutations(verts):
        perm = dict(zip(verts, image))
        if {perm[v] for v in g.horizon} != g.horizon:
            continue
        if all({perm[w] for w in g.adjacency[v]} == g.adjacency[perm[v]]
               for v in verts):
            count += 1
    return count


def _is_automorphism(g, perm):
    return ({perm[v] for v in g.horizon} == g.horizon
            and all({perm[w] for w in g.adjacency[v]} == g.adjacency[perm[v]]
                    for v in g.vertices))


def test_order_matches_brute_force_on_small_graphs():
    graphs = [generate_family(FamilySpec("ray"), 4),
              generate_family(FamilySpec("ladder"), 3),
              generate_family(FamilySpec("canopy"), 2)]
    graphs += [random_connected_graph(seed, max_n=7) for seed in range(12)]
    for g in graphs:
        if len(g.vertices) > 8:
            continue
        aut = automorphisms(g)
        assert aut.order == brute_group_order(g), g.family


def test_generators_are_automorphisms(corpus):
    for g in corpus[:10]:
        aut = automorphisms(g)
        for gen in aut.generators:
            assert _is_automorphism(g, gen)


def test_orbits_partition_vertices():
    g = generate_family(FamilySpec("canopy"), 4)
    aut = automorphisms(g)
    seen = set()
    for orb in aut.orbits:
        assert not (set(orb) & seen)
        seen |= set(orb)
    assert seen == g.vertices
    assert aut.orbit_of("spine:4") == ("spine:4",)


def test_canopy_group_orders():
    # full symmetry of a rooted complete binary tree of depth 4
    aut4 = automorphisms(generate_family(FamilySpec("canopy"), 4))
    assert aut4.order == 2 ** 15
    aut5 = automorphisms(generate_family(FamilySpec("canopy"), 5))
    assert aut5.order == LARGE


def test_ladder_reflection():
    g = generate_family(FamilySpec("ladder"), 3)
    aut = automorphisms(g)
    assert aut.order == 2
    gen = next(gen for gen in aut.generators
               if any(gen[v] != v for v in g.vertices))
    assert gen["a1"] == "b1" and gen["b1"] == "a1"


def test_orbit_count_interior():
    g = generate_family(FamilySpec("canopy"), 4)
    aut = automorphisms(g)
    total = len(aut.orbits)
    assert orbit_count_interior(g, aut, 1) == total - 1
    with pytest.raises(ValueError):
        orbit_count_interior(g, aut, g.radius)


def test_set_orbit_of_leaf_block():
    g = generate_family(FamilySpec("canopy"), 4)
    aut = automorphisms(g)
    images = aut.set_orbit(frozenset({"spine:0", "spine:1"}))
    # one image per edge into a leaf
    assert len(images) == 16
    for img in images:
        assert len(img) == 2


def test_apply_to_separation():
    g = generate_family(FamilySpec("ladder"), 3)
    aut = automorphisms(g)
    gen = next(gen for gen in aut.generators
               if any(gen[v] != v for v in g.vertices))
    s = make_separation(g, {"a0", "b0", "a1", "b1"}, g.vertices - {"a0", "b0"})
    img = apply_to_separation(gen, s)
    assert img == s  # the reflection fixes every rung block setwise


def test_family_invariance_and_mutation():
    from endtrees.relevant import relevant_pool
    g = generate_family(FamilySpec("canopy"), 4)
    aut = automorphisms(g)
    pool = relevant_pool(g, 1)
    ok, witness = check_family_invariance(pool, aut)
    assert ok and witness is None
    # dropping one member of a nontrivial orbit must be detected
    victim = next(r for r in pool if r.small_side == ("t:1:",))
    mutated = [r for r in pool if r is not victim]
    ok, witness = check_family_invariance(mutated, aut)
    assert not ok and witness is not None


def test_independence_split_positive():
    g = TruncatedGraph(["p", "q", "c0", "c1", "c2", "h"],
                       [("p", "c0"), ("q", "c0"), ("c0", "c1"),
                        ("c1", "c2"), ("c2", "h")], {"h"}, 3)
    s = make_separation(g, {"p", "q", "c0", "c1"}, {"c1", "c2", "h"})
    swap = {v: v for v in g.vertices}
    swap["p"], swap["q"] = "q", "p"
    split = independence_split(g, swap, s)
    assert split is not None
    left, right = split
    assert _is_automorphism(g, left) and _is_automorphism(g, right)
    assert left["p"] == "q"
    assert all(right[v] == v for v in s.a_only)


def test_independence_split_rejects_side_movers():
    g = generate_family(FamilySpec("ladder"), 3)
    aut = automorphisms(g)
    gen = next(gen for gen in aut.generators
               if any(gen[v] != v for v in g.vertices))
    s = make_separation(g, {"a0", "b0", "a1", "b1"}, g.vertices - {"a0", "b0"})
    # the reflection moves separator vertices, so no split applies
    assert independence_split(g, gen, s) is None
