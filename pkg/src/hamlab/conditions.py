"""Degree-sum and minimum-degree conditions with exact slack and witnesses.

Slack is always measured against the classical threshold (Woodall ``|D|``,
Las Vergnas ``nu/2 + 2``, Ore ``|G|``, ...). The relaxed conditions of the
main theorems are the ``slack >= -1`` level sets. An empty quantified set is
reported as vacuous (``slack is None``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from hamlab.errors import DomainError
from hamlab.graph_core import (
    BipartiteGraphWithMatching,
    Digraph,
    Graph,
    iter_bits,
    popcount,
)

DigraphMode = Literal["woodall", "all-pairs", "all-pairs-distinct", "ghouila-houri", "semi-degree"]
BipartiteMode = Literal["las-vergnas"]
UndirectedMode = Literal["ore", "dirac"]

DIGRAPH_MODES = ("woodall", "all-pairs", "all-pairs-distinct", "ghouila-houri", "semi-degree")
UNDIRECTED_MODES = ("ore", "dirac")


@dataclass(frozen=True)
class ConditionReport:
    mode: str
    threshold: int
    slack: int | None
    witnesses: tuple[tuple[int, ...], ...]

    @property
    def vacuous(self) -> bool:
        return self.slack is None

    def satisfies(self, min_slack: int = 0) -> bool:
        return self.slack is None or self.slack >= min_slack

    def slack_text(self) -> str:
        return "vacuous" if self.slack is None else str(self.slack)


def _minimum(mode: str, threshold: int, items: list[tuple[int, tuple[int, ...]]]) -> ConditionReport:
    if not items:
        return ConditionReport(mode, threshold, None, ())
    low = min(v for v, _ in items)
    wit = tuple(w for v, w in items if v == low)
    return ConditionReport(mode, threshold, low - threshold, wit)


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


def digraph_slack(d: Digraph, mode: DigraphMode = "woodall") -> ConditionReport:
    """Slack of one of the digraph conditions.

    ``woodall`` ranges over ordered pairs ``(u, v)`` of distinct vertices with
    no arc ``u -> v`` and sums ``d+(u) + d-(v)``. ``all-pairs`` ranges over
    every ordered pair including ``u = v``; only with the diagonal do the
    exceptions shrink to the primed subfamilies (``D1(1,2)`` satisfies the
    distinct-pair version at slack -1 and is not Hamiltonian).
    ``all-pairs-distinct`` is that weaker variant. ``ghouila-houri`` and
    ``semi-degree`` are per-vertex; the latter compares ``min(d+, d-)`` with ``ceil(|D|/2)``, which is
    equivalent to ``>= |D|/2`` on integers. Strong connectivity, which
    Ghouila-Houri also assumes, is not part of the slack.
    """
    n = d.order
    if n < 2:
        raise DomainError("conditions need order >= 2")
    out = [popcount(m) for m in d.out_masks]
    inn = [popcount(m) for m in d.in_masks]
    if mode in ("woodall", "all-pairs", "all-pairs-distinct"):
        items = []
        for u in range(n):
            for v in range(n):
                if u == v and mode != "all-pairs":
                    continue
                if mode == "woodall" and d.out_masks[u] >> v & 1:
                    continue
                items.append((out[u] + inn[v], (u, v)))
        return _minimum(mode, n, items)
    if mode == "ghouila-houri":
        return _minimum(mode, n, [(out[v] + inn[v], (v,)) for v in range(n)])
    if mode == "semi-degree":
        return _minimum(mode, _ceil_half(n), [(min(out[v], inn[v]), (v,)) for v in range(n)])
    raise DomainError(f"unknown digraph condition {mode!r}")


def bipartite_slack(g: BipartiteGraphWithMatching, mode: BipartiteMode = "las-vergnas") -> ConditionReport:
    """``d(w) + d(b) - (nu/2 + 2)`` minimised over nonadjacent ``w in W``, ``b in B``."""
    if mode != "las-vergnas":
        raise DomainError(f"unknown bipartite condition {mode!r}")
    items = []
    for w in g.w_vertices:
        dw = g.degree(w)
        for b in g.b_vertices:
            if not g.has_edge(w, b):
                items.append((dw + g.degree(b), (w, b)))
    return _minimum(mode, g.half_order + 2, items)


def undirected_slack(g: Graph, mode: UndirectedMode = "ore") -> ConditionReport:
    """Ore over unordered nonadjacent pairs, or Dirac against ``ceil(|G|/2)``."""
    n = g.order
    deg = [popcount(m) for m in g.adj_masks]
    if mode == "ore":
        if n < 2:
            raise DomainError("ore condition needs order >= 2")
        items = [
            (deg[u] + deg[v], (u, v))
            for u in range(n)
            for v in range(u + 1, n)
            if not g.adj_masks[u] >> v & 1
        ]
        return _minimum(mode, n, items)
    if mode == "dirac":
        if n < 3:
            raise DomainError("dirac condition needs order >= 3")
        return _minimum(mode, _ceil_half(n), [(deg[v], (v,)) for v in range(n)])
    raise DomainError(f"unknown undirected condition {mode!r}")


# Bitmask-level fast paths for the enumeration loops. They return the slack
# value only (None when vacuous).


def woodall_slack_value(n: int, out_masks: tuple[int, ...] | list[int], in_masks: tuple[int, ...] | list[int]) -> int | None:
    out = [popcount(m) for m in out_masks]
    inn = [popcount(m) for m in in_masks]
    full = (1 << n) - 1
    best = None
    for u in range(n):
        missing = full & ~out_masks[u] & ~(1 << u)
        if missing:
            low = min(inn[v] for v in iter_bits(missing)) + out[u]
            if best is None or low < best:
                best = low
    return None if best is None else best - n


def all_pairs_slack_value(n: int, out_masks, in_masks) -> int:
    """Diagonal included, as in ``digraph_slack(d, "all-pairs")``."""
    return min(popcount(m) for m in out_masks) + min(popcount(m) for m in in_masks) - n


def ore_slack_value(n: int, adj_masks) -> int | None:
    deg = [popcount(m) for m in adj_masks]
    full = (1 << n) - 1
    best = None
    for u in range(n):
        missing = full & ~adj_masks[u] & ~((1 << (u + 1)) - 1)
        if missing:
            low = min(deg[v] for v in iter_bits(missing)) + deg[u]
            if best is None or low < best:
                best = low
    return None if best is None else best - n
