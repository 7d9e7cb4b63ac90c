"""Exact invariants for graphs with independence number at most two.

Key fact used throughout: in such a graph every color class has at most two
vertices, so a proper coloring is a matching in the complement plus
singletons, and the chromatic number equals n minus the complement's matching
number.  That turns the chromatic number, vertex-criticality and the
anti-matching condition into polynomial matching computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cliques import clique_number, max_clique
from .errors import PreconditionError
from .graphs import (
    Graph,
    bits,
    complement,
    connected_component_mask,
    delete_vertices,
    is_connected_mask,
    mask_of,
)
from .matching import maximum_matching


@lru_cache(maxsize=1 << 14)
def alpha_at_most_two(g: Graph) -> bool:
    """True iff the graph has no independent set of three vertices."""
    co = complement(g)
    for v in range(co.n):
        row = co.adj[v] & ~((1 << (v + 1)) - 1)
        for u in bits(row):
            if co.adj[v] & co.adj[u] & ~((1 << (u + 1)) - 1):
                return False
    return True


@lru_cache(maxsize=1 << 15)
def chromatic_number_alpha2(g: Graph) -> int:
    """Chromatic number, valid only when the independence number is <= 2."""
    if not alpha_at_most_two(g):
        raise PreconditionError("graph has an independent set of size 3")
    return g.n - len(maximum_matching(complement(g)))


@dataclass(frozen=True)
class AntiMatching:
    """Disjoint vertex pairs that are pairwise non-adjacent in the graph
    (a matching of the complement)."""

    pairs: tuple[tuple[int, int], ...]

    def size(self) -> int:
        return len(self.pairs)


def max_anti_matching(g: Graph) -> AntiMatching:
    pairs = maximum_matching(complement(g))
    return AntiMatching(tuple(sorted(pairs)))


@dataclass(frozen=True)
class CapacityReport:
    """The partition of the vertex set induced by a clique.

    ``complete_part`` sees every clique vertex, ``anticomplete_part`` sees
    none, ``mixed_part`` sees some but not all.  The capacity of the clique is
    |mixed| + |complete u anticomplete| / 2; it is stored doubled so that
    comparisons against integer thresholds stay in integer arithmetic.
    """

    clique: frozenset[int]
    complete_part: frozenset[int]
    anticomplete_part: frozenset[int]
    mixed_part: frozenset[int]
    doubled_capacity: int


def capacity(g: Graph, clique_vertices) -> CapacityReport:
    cmask = mask_of(clique_vertices)
    if cmask == 0:
        raise PreconditionError("capacity is defined for nonempty cliques")
    if cmask & ~g.vertex_mask():
        raise PreconditionError("vertex out of range")
    members = list(bits(cmask))
    for v in members:
        if (g.adj[v] & cmask) != cmask ^ (1 << v):
            raise PreconditionError("capacity is defined only for cliques")
    a = b = d = 0
    for v in bits(g.vertex_mask() & ~cmask):
        hits = g.adj[v] & cmask
        if hits == cmask:
            a |= 1 << v
        elif hits == 0:
            b |= 1 << v
        else:
            d |= 1 << v
    return CapacityReport(
        clique=frozenset(members),
        complete_part=frozenset(bits(a)),
        anticomplete_part=frozenset(bits(b)),
        mixed_part=frozenset(bits(d)),
        doubled_capacity=2 * d.bit_count() + a.bit_count() + b.bit_count(),
    )


def doubled_capacity_of_mask(g: Graph, cmask: int) -> int:
    """Doubled capacity of a clique given as a mask, skipping validation."""
    a_b = 0
    d = 0
    for v in bits(g.vertex_mask() & ~cmask):
        hits = g.adj[v] & cmask
        if hits == cmask or hits == 0:
            a_b += 1
        else:
            d += 1
    return 2 * d + a_b


def is_five_wheel(g: Graph) -> bool:
    """True iff the graph is a five-cycle plus one vertex adjacent to all of it."""
    if g.n != 6 or sorted(g.degrees()) != [3, 3, 3, 3, 3, 5]:
        return False
    hub = max(range(6), key=g.degree)
    rim = g.vertex_mask() & ~(1 << hub)
    if not all(g.degree(v) == 3 for v in bits(rim)):
        return False
    # The rim must induce a connected 2-regular graph on 5 vertices: a C5.
    return is_connected_mask(g, rim)


def is_vertex_critical(g: Graph) -> bool:
    """True iff deleting any single vertex lowers the chromatic number."""
    chi = chromatic_number_alpha2(g)
    for v in range(g.n):
        h, _ = delete_vertices(g, (v,))
        if chromatic_number_alpha2(h) == chi:
            return False
    return True


def co_components(g: Graph) -> list[frozenset[int]]:
    """Connected components of the complement, ordered by smallest member.

    The graph is anti-connected iff there is exactly one component; grouping
    distinct components on two sides always yields a join partition (every
    cross pair is an edge of the graph).
    """
    co = complement(g)
    remaining = g.vertex_mask()
    out = []
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = connected_component_mask(co, start, remaining)
        out.append(frozenset(bits(comp)))
        remaining &= ~comp
    return out


__all__ = [
    "AntiMatching",
    "CapacityReport",
    "alpha_at_most_two",
    "capacity",
    "chromatic_number_alpha2",
    "clique_number",
    "co_components",
    "doubled_capacity_of_mask",
    "is_five_wheel",
    "is_vertex_critical",
    "max_anti_matching",
    "max_clique",
]
