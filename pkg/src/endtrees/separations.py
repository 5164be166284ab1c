"""Separations of a truncation: validity, order, corners, nestedness.

A separation is an ordered pair (A, B) of vertex sets covering the graph with
no edge between A - B and B - A.  Both sides are stored because the corner
algebra and the nestedness clauses are side-sensitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import CrossEdge, NotCovering
from .families import TruncatedGraph, VertexSet, canon


@dataclass(frozen=True)
class Separation:
    a: VertexSet
    b: VertexSet

    @cached_property
    def a_set(self) -> frozenset[str]:
        return frozenset(self.a)

    @cached_property
    def b_set(self) -> frozenset[str]:
        return frozenset(self.b)

    @cached_property
    def separator(self) -> VertexSet:
        return canon(self.a_set & self.b_set)

    @cached_property
    def a_only(self) -> VertexSet:
        return canon(self.a_set - self.b_set)

    @cached_property
    def b_only(self) -> VertexSet:
        return canon(self.b_set - self.a_set)

    @property
    def order(self) -> int:
        return len(self.separator)

    def reverse(self) -> "Separation":
        return Separation(self.b, self.a)

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b)}

    @classmethod
    def from_json(cls, doc: dict) -> "Separation":
        return cls(canon(doc["a"]), canon(doc["b"]))


def make_separation(g: TruncatedGraph, a: Iterable[str],
                    b: Iterable[str]) -> Separation:
    """Validate (a, b) as a separation of g."""
    a = frozenset(a)
    b = frozenset(b)
    if a | b != g.vertices:
        raise NotCovering("A and B do not cover the vertex set")
    a_only = a - b
    for v in sorted(a_only):
        for w in g.adjacency[v]:
            if w in b and w not in a:
                raise CrossEdge(v, w)
    return Separation(canon(a), canon(b))


def is_proper(s: Separation) -> bool:
    return bool(s.a_only) and bool(s.b_only)


def is_tight(g: TruncatedGraph, s: Separation) -> bool:
    """Every separator vertex has neighbours on both strict sides."""
    a_only = set(s.a_only)
    b_only = set(s.b_only)
    for v in s.separator:
        ns = g.adjacency[v]
        if not (ns & a_only) or not (ns & b_only):
            return False
    return True


def corner_separations(s1: Separation, s2: Separation
                       ) -> tuple[Separation, Separation]:
    """The two corner separations of a pair; order sums are preserved."""
    a, b = s1.a_set, s1.b_set
    c, d = s2.a_set, s2.b_set
    out1 = Separation(canon(a & c), canon(b | d))
    out2 = Separation(canon(b & d), canon(a | c))
    assert out1.order + out2.order == s1.order + s2.order, \
        "corner order sum must match the input order sum"
    return out1, out2


def leq(s1: Separation, s2: Separation) -> bool:
    """(A,B) <= (C,D) iff A is a subset of C and B a superset of D."""
    return s1.a_set <= s2.a_set and s1.b_set >= s2.b_set


def lt(s1: Separation, s2: Separation) -> bool:
    return leq(s1, s2) and s1 != s2


def nested(s1: Separation, s2: Separation) -> bool:
    a, b = s1.a_set, s1.b_set
    c, d = s2.a_set, s2.b_set
    return ((a <= c and d <= b) or (a <= d and c <= b)
            or (b <= c and d <= a) or (b <= d and c <= a))
