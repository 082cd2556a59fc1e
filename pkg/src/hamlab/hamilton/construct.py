"""Greedy cycle growth by path and cycle absorption, with an exact fallback."""

from __future__ import annotations

from dataclasses import dataclass

from hamlab.correspondence import contract
from hamlab.errors import CapabilityError
from hamlab.graph_core import (
    AlternatingCycle,
    AlternatingPath,
    BipartiteGraphWithMatching,
    Digraph,
    iter_bits,
)
from hamlab.hamilton.lemmas import merge_cycle_into_cycle, merge_path_into_cycle
from hamlab.hamilton.solver import HAMILTON_CAP, find_alternating_hamilton_cycle


@dataclass(frozen=True)
class TraceStep:
    move: str  # seed, merge-path, merge-cycle, partial-cycle, stall, exact
    length: int
    detail: dict

    def to_dict(self) -> dict:
        return {"move": self.move, "length": self.length, **self.detail}


def _any_cycle(d: Digraph, allowed: int) -> list[int] | None:
    """Some directed cycle inside ``allowed``, by walking until a repeat."""
    for start in iter_bits(allowed):
        walk = [start]
        pos = {start: 0}
        v = start
        while True:
            nxt = d.out_masks[v] & allowed
            if not nxt:
                break
            # prefer an unseen successor to lengthen the walk
            fresh = [u for u in iter_bits(nxt) if u not in pos]
            u = fresh[0] if fresh else next(iter_bits(nxt))
            if u in pos:
                return walk[pos[u] :]
            pos[u] = len(walk)
            walk.append(u)
            v = u
    return None


def _greedy_path(d: Digraph, start: int, allowed: int) -> list[int]:
    path = [start]
    used = 1 << start
    v = start
    while True:
        nxt = d.out_masks[v] & allowed & ~used
        if not nxt:
            return path
        v = (nxt & -nxt).bit_length() - 1
        used |= 1 << v
        path.append(v)


def constructive_solve(
    g: BipartiteGraphWithMatching, cap: int = 2 * HAMILTON_CAP
) -> tuple[AlternatingCycle | None, list[TraceStep]]:
    """Grow an alternating cycle greedily; fall back to the exact solver on a stall.

    Returns the Hamilton cycle (or None when none exists) and the move trace.
    """
    if g.nu > cap:
        raise CapabilityError(f"nu = {g.nu} above constructive solver cap {cap}")
    d = contract(g)
    n = d.order
    full = (1 << n) - 1
    trace: list[TraceStep] = []
    seed = _any_cycle(d, full) if n >= 2 else None
    if seed is None:
        trace.append(TraceStep("stall", 0, {"reason": "no alternating cycle"}))
        return None, trace
    cyc = AlternatingCycle.from_pairs(g, seed)
    trace.append(TraceStep("seed", len(cyc), {"pairs": list(cyc.pairs)}))

    while len(cyc.pairs) < n:
        on = 0
        for p in cyc.pairs:
            on |= 1 << p
        rest = full & ~on
        progress = False
        # longer absorbable paths first
        paths = sorted(
            (_greedy_path(d, v, rest) for v in iter_bits(rest)), key=len, reverse=True
        )
        certs = []
        for path in paths:
            for k in range(len(path), 0, -1):
                res = merge_path_into_cycle(g, cyc, AlternatingPath(tuple(path[:k])))
                if not res.blocked:
                    cyc = res.cycle
                    trace.append(TraceStep("merge-path", len(cyc), {"path": path[:k], "at": res.index}))
                    progress = True
                    break
                certs.append(len(res.certificate))
            if progress:
                break
        if progress:
            continue
        other = _any_cycle(d, rest)
        if other is not None:
            res = merge_cycle_into_cycle(g, cyc, AlternatingCycle(tuple(other)))
            if not res.blocked:
                cyc = res.cycle
                move = "merge-cycle" if res.outcome == "merged" else "partial-cycle"
                trace.append(TraceStep(move, len(cyc), {"cycle": other, "at": res.index}))
                continue
        trace.append(
            TraceStep("stall", len(cyc), {"outside": [v for v in iter_bits(rest)], "blockedPaths": len(certs)})
        )
        exact = find_alternating_hamilton_cycle(g)
        trace.append(TraceStep("exact", 0 if exact is None else len(exact), {"found": exact is not None}))
        return exact, trace
    return cyc, trace
