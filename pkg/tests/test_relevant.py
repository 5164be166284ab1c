"""Relevance conditions, ranking, nice sets, exhausting chains."""

import pytest

from endtrees.errors import (EmptyNiceSet, HorizonOnWrongSide,
                             SeparatorNotAttached, SideDisconnected,
                             SmallerCutExists, WrongOrder)
from endtrees.families import FamilySpec, TruncatedGraph, generate_family
from endtrees.relevant import (build_exhausting_sequence, compute_alpha,
                               compute_nice_set, degenerate_relevant,
                               enumerate_relevant, relevant_pool,
                               verify_relevant)
from endtrees.separations import leq, lt, make_separation, nested
from endtrees.symmetry import automorphisms


def _ray_prefix(g, i):
    a = {f"v{j}" for j in range(i + 1)}
    return make_separation(g, a, (g.vertices - a) | {f"v{i}"})


def test_verify_relevant_accepts_ray_prefix():
    g = generate_family(FamilySpec("ray"), 5)
    r = verify_relevant(g, _ray_prefix(g, 2), 1)
    assert r.small_side == ("v0", "v1")
    assert len(r.certificate) == 1
    assert r.certificate[0][0] == "v2" and r.certificate[0][-1] == "v5"


def test_verify_relevant_wrong_order():
    g = generate_family(FamilySpec("ray"), 5)
    with pytest.raises(WrongOrder):
        verify_relevant(g, _ray_prefix(g, 2), 2)


def test_verify_relevant_disconnected_side():
    g = generate_family(FamilySpec("ray"), 5)
    s = make_separation(g, {"v0", "v1", "v2", "v3"},
                        {"v1", "v3", "v4", "v5"})
    with pytest.raises(SideDisconnected):
        verify_relevant(g, s, 2)


def test_verify_relevant_unattached_separator():
    g = generate_family(FamilySpec("ray"), 5)
    s = make_separation(g, {"v0", "v1", "v3"},
                        {"v1", "v2", "v3", "v4", "v5"})
    with pytest.raises(SeparatorNotAttached):
        verify_relevant(g, s, 2)


def test_verify_relevant_horizon_side():
    g = generate_family(FamilySpec("ray"), 5)
    s = make_separation(g, g.vertices - {"v0", "v1"}, {"v0", "v1", "v2"})
    with pytest.raises(HorizonOnWrongSide):
        verify_relevant(g, s, 1)


def test_verify_relevant_smaller_cut():
    # both separator vertices funnel through c, so the 2-cut is not tight
    # against the horizon
    g = TruncatedGraph(["x", "a", "b", "c", "h"],
                       [("x", "a"), ("x", "b"), ("a", "c"), ("b", "c"),
                        ("c", "h")], {"h"}, 2)
    s = make_separation(g, {"x", "a", "b"}, {"a", "b", "c", "h"})
    with pytest.raises(SmallerCutExists):
        verify_relevant(g, s, 2)


def test_enumerate_relevant_ray():
    g = generate_family(FamilySpec("ray"), 5)
    pool = enumerate_relevant(g, 1, max_side=6)
    sides = [r.small_side for r in pool]
    assert sides == [tuple(f"v{j}" for j in range(i)) for i in range(1, 5)]


def test_degenerate_members():
    g = generate_family(FamilySpec("ray"), 5)
    d = degenerate_relevant(g, {"v2"}, 1)
    assert d is not None and d.small_side == ()
    assert d.sep.b == tuple(sorted(g.vertices))
    assert degenerate_relevant(g, {"v5"}, 1) is None


def test_relevant_pool_extends_enumeration():
    g = generate_family(FamilySpec("ladder"), 4)
    pool = relevant_pool(g, 2)
    proper = [r for r in pool if r.small_side]
    listed = enumerate_relevant(g, 2, max_side=len(g.vertices))
    assert {r.sep for r in proper} == {r.sep for r in listed}
    degenerate = [r for r in pool if not r.small_side]
    assert degenerate and all(len(r.sep.separator) == 2 for r in degenerate)


def test_pool_nestedness_matches_option_clause():
    g = generate_family(FamilySpec("ladder"), 5)
    pool = relevant_pool(g, 2)
    seps = [r.sep for r in pool]
    for s in seps:
        for t in seps:
            comparable = leq(s, t) or leq(t, s)
            option = s.a_set <= t.b_set and t.a_set <= s.b_set
            assert nested(s, t) == (comparable or option)


def test_alpha_ranks_on_ray():
    g = generate_family(FamilySpec("ray"), 6)
    pool = relevant_pool(g, 1)
    alpha = compute_alpha(g, pool)
    # degenerate members sit at rank zero; each prefix adds one level
    for r in pool:
        assert alpha.sep_rank[r] == len(r.small_side)
    assert alpha.vertex_rank["v0"] == 0
    for i in range(1, 5):
        assert alpha.vertex_rank[f"v{i}"] == i


def test_alpha_rank_bounds_separator_ranks():
    g = generate_family(FamilySpec("canopy"), 4)
    pool = relevant_pool(g, 1)
    alpha = compute_alpha(g, pool)
    for r in pool:
        for v in r.sep.separator:
            assert alpha.vertex_rank[v] >= alpha.sep_rank[r]


def test_nice_set_on_ray():
    g = generate_family(FamilySpec("ray"), 6)
    pool = relevant_pool(g, 1)
    alpha = compute_alpha(g, pool)
    aut = automorphisms(g)
    x = next(r for r in pool if r.small_side == ("v0", "v1"))
    nice = compute_nice_set(g, x, pool, alpha, aut)
    assert [r.small_side for r in nice] == [("v0", "v1", "v2")]
    top = max((r for r in pool if r.small_side), key=lambda r: len(r.small_side))
    with pytest.raises(EmptyNiceSet):
        compute_nice_set(g, top, pool, alpha, aut)


def test_nice_set_on_canopy_leaf_block():
    g = generate_family(FamilySpec("canopy"), 4)
    pool = relevant_pool(g, 1)
    alpha = compute_alpha(g, pool)
    aut = automorphisms(g)
    leaf = next(r for r in pool if len(r.small_side) == 1)
    nice = compute_nice_set(g, leaf, pool, alpha, aut)
    # minimal admissible members are the three-vertex subtree blocks, one
    # per automorphic image of the leaf block
    assert all(len(r.small_side) == 3 for r in nice)
    assert len(nice) == 8


def test_exhausting_sequence_is_strict_chain():
    g = generate_family(FamilySpec("ray"), 9)
    chain = build_exhausting_sequence(g, 1)
    assert len(chain) >= 3
    for r in chain:
        assert r.sep.order == 1
    for r1, r2 in zip(chain, chain[1:]):
        assert lt(r1.sep, r2.sep)


def test_exhausting_sequence_ladder():
    g = generate_family(FamilySpec("ladder"), 9)
    chain = build_exhausting_sequence(g, 2)
    for r1, r2 in zip(chain, chain[1:]):
        assert lt(r1.sep, r2.sep)
    assert set(chain[-1].sep.a_set) | set(g.horizon) | \
        set(chain[-1].sep.b_set) == g.vertices
