"""Augmentation moves: absorbing a closed alternating path or a second
alternating cycle into an alternating cycle.

All positions follow the cycle's own indexing: ``u_{2i} = w_{c_i}`` and
``u_{2i-1} = b_{c_{i-1}}`` for the pair sequence ``c_0 .. c_{m-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, NamedTuple

from hamlab.errors import DomainError
from hamlab.graph_core import (
    AlternatingCycle,
    AlternatingPath,
    BipartiteGraphWithMatching,
    b_vertex,
    is_alternating_cycle,
    is_closed_alternating_path,
    w_vertex,
)

Outcome = Literal["merged", "partial", "blocked"]


class PathDichotomy(NamedTuple):
    """Position ``i``: is ``u_{2i}`` adjacent to the path's B end, and is
    ``u_{2i-1}`` adjacent to its W end? A merge at ``i`` needs both."""

    index: int
    u_even: int
    b_end: int
    even_adjacent: bool
    u_odd: int
    w_end: int
    odd_adjacent: bool

    @property
    def holds(self) -> bool:
        return not (self.even_adjacent and self.odd_adjacent)

    def recheck(self, g: BipartiteGraphWithMatching) -> bool:
        return (
            g.has_edge(self.u_even, self.b_end) == self.even_adjacent
            and g.has_edge(self.u_odd, self.w_end) == self.odd_adjacent
        )


class CycleDichotomy(NamedTuple):
    """Position ``i``: neighbours of ``u_{2i-1}`` and ``u_{2i}`` on the other cycle."""

    index: int
    u_odd: int
    odd_neighbors: tuple[int, ...]
    u_even: int
    even_neighbors: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return not (self.odd_neighbors and self.even_neighbors)

    def recheck(self, g: BipartiteGraphWithMatching, other: AlternatingCycle) -> bool:
        verts = other.sequence
        odd = tuple(v for v in verts if g.has_edge(self.u_odd, v))
        even = tuple(v for v in verts if g.has_edge(self.u_even, v))
        return odd == self.odd_neighbors and even == self.even_neighbors


@dataclass(frozen=True)
class MergeResult:
    outcome: Outcome
    cycle: AlternatingCycle | None
    index: int | None = None
    certificate: tuple = field(default=())

    @property
    def blocked(self) -> bool:
        return self.outcome == "blocked"


def _check_disjoint(a: frozenset[int], b: frozenset[int]) -> None:
    if a & b:
        raise DomainError("inputs share vertices")


def merge_path_into_cycle(
    g: BipartiteGraphWithMatching, c: AlternatingCycle, p: AlternatingPath
) -> MergeResult:
    """Insert ``p`` between ``u_{2k-1}`` and ``u_{2k}`` for the first ``k``
    with ``u_{2k} ~ b`` and ``u_{2k-1} ~ w``; otherwise return the full
    per-position certificate."""
    if not is_alternating_cycle(g, c.sequence):
        raise DomainError("c is not an alternating cycle of g")
    if not is_closed_alternating_path(g, p.sequence):
        raise DomainError("p is not a closed alternating path of g")
    _check_disjoint(c.vertex_set, p.vertex_set)
    cp = c.pairs
    m = len(cp)
    w, b = p.w_end, p.b_end
    cert = []
    for k in range(m):
        u_even, u_odd = w_vertex(cp[k]), b_vertex(cp[k - 1])
        entry = PathDichotomy(k, u_even, b, g.has_edge(u_even, b), u_odd, w, g.has_edge(u_odd, w))
        if not entry.holds:
            pairs = cp[k:] + cp[:k] + p.pairs
            merged = AlternatingCycle.from_pairs(g, pairs)
            return MergeResult("merged", merged, k, ())
        cert.append(entry)
    return MergeResult("blocked", None, None, tuple(cert))


def merge_cycle_into_cycle(
    g: BipartiteGraphWithMatching, c: AlternatingCycle, c1: AlternatingCycle
) -> MergeResult:
    """Reroute ``c`` through ``c1`` at a position where both ``u_{2k-1}`` and
    ``u_{2k}`` see ``c1``.

    The detour enters ``c1`` at a W vertex and leaves at a B vertex, taking
    the longest forward segment available. ``merged`` means all of ``c1`` was
    absorbed; ``partial`` means only a segment fits.
    """
    for cyc, name in ((c, "c"), (c1, "c1")):
        if not is_alternating_cycle(g, cyc.sequence):
            raise DomainError(f"{name} is not an alternating cycle of g")
    _check_disjoint(c.vertex_set, c1.vertex_set)
    cp, dp = c.pairs, c1.pairs
    m, m1 = len(cp), len(dp)
    cert = []
    best: tuple[int, int, int, int] | None = None  # (segment, k, j, l)
    for k in range(m):
        u_odd, u_even = b_vertex(cp[k - 1]), w_vertex(cp[k])
        entry_j = [j for j in range(m1) if g.has_edge(u_odd, w_vertex(dp[j]))]
        entry_l = [l for l in range(m1) if g.has_edge(u_even, b_vertex(dp[l]))]
        entry = CycleDichotomy(
            k,
            u_odd,
            tuple(v for v in c1.sequence if g.has_edge(u_odd, v)),
            u_even,
            tuple(v for v in c1.sequence if g.has_edge(u_even, v)),
        )
        cert.append(entry)
        for j in entry_j:
            for l in entry_l:
                seg = (l - j) % m1 + 1
                if best is None or seg > best[0]:
                    best = (seg, k, j, l)
    if best is None:
        return MergeResult("blocked", None, None, tuple(cert))
    seg, k, j, _ = best
    detour = tuple(dp[(j + t) % m1] for t in range(seg))
    merged = AlternatingCycle.from_pairs(g, cp[k:] + cp[:k] + detour)
    return MergeResult("merged" if seg == m1 else "partial", merged, k, ())


def lemma1_bound_holds(g: BipartiteGraphWithMatching, c: AlternatingCycle, p: AlternatingPath) -> bool | None:
    """``|N_C(b)| + |N_C(w)| <= m - |P|/2 + 1`` when both ends of ``p`` see ``c``
    (None when one end has no neighbour on ``c``)."""
    verts = c.sequence
    nb = sum(1 for v in verts if g.has_edge(p.b_end, v))
    nw = sum(1 for v in verts if g.has_edge(p.w_end, v))
    if nb == 0 or nw == 0:
        return None
    m = len(c.pairs)
    return nb + nw <= m - len(p) // 2 + 1
