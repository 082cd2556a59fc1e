"""Digraphs <-> balanced bipartite graphs with a perfect matching.

Contraction rule: for the i-th matching pair ``(w_i, b_i)``, the arc ``i -> j``
(``i != j``) exists iff ``b_i w_j`` is an edge. With this orientation
``d(w_i) = d^-(i) + 1`` and ``d(b_i) = d^+(i) + 1``, so the non-arc degree sums
of the digraph and the nonadjacent cross-pair degree sums of the bipartite
graph differ by exactly 2.
"""

from __future__ import annotations

from hamlab.graph_core import (
    AlternatingCycle,
    BipartiteGraphWithMatching,
    Digraph,
    Graph,
)


def contract(g: BipartiteGraphWithMatching) -> Digraph:
    return Digraph(g.half_order, g.cross)


def expand(d: Digraph) -> BipartiteGraphWithMatching:
    """Inverse of :func:`contract`; index-aligned, so ``contract(expand(d)) == d``."""
    return BipartiteGraphWithMatching(d.order, d.out_masks)


def converse(d: Digraph) -> Digraph:
    return d.converse()


def double_undirected(g: Graph) -> Digraph:
    """Replace every edge ``uv`` with the arcs ``(u, v)`` and ``(v, u)``."""
    return Digraph(g.order, g.adj_masks)


def cycle_to_alternating(g: BipartiteGraphWithMatching, cycle: list[int]) -> AlternatingCycle:
    """Translate a directed cycle of ``contract(g)`` into an M-alternating cycle of ``g``."""
    return AlternatingCycle.from_pairs(g, cycle)


def alternating_to_cycle(c: AlternatingCycle) -> list[int]:
    return list(c.pairs)

