"""Exact Hamilton-cycle search and longest cycle / path enumeration."""

from __future__ import annotations

from typing import Sequence

from hamlab.correspondence import contract
from hamlab.errors import CapabilityError, Cancelled, DomainError
from hamlab.graph_core import (
    AlternatingCycle,
    BipartiteGraphWithMatching,
    Digraph,
    is_alternating_cycle,
    is_strongly_connected,
    iter_bits,
)

HAMILTON_CAP = 20
LONGEST_CAP = 10
LONGEST_LIMIT = 64
_POLL = 1024


class CancellationToken:
    """Cooperative cancellation flag polled by the long searches."""

    def __init__(self) -> None:
        self._cancelled = False

    def cancel(self) -> None:
        self._cancelled = True

    @property
    def cancelled(self) -> bool:
        return self._cancelled


def is_hamilton_cycle(d: Digraph, cycle: Sequence[int]) -> bool:
    n = d.order
    if len(cycle) != n or sorted(cycle) != list(range(n)):
        return False
    return all(d.has_arc(cycle[t], cycle[(t + 1) % n]) for t in range(n))


def _reach(masks: Sequence[int], start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def find_hamilton_cycle(
    d: Digraph, cap: int = HAMILTON_CAP, cancel: CancellationToken | None = None
) -> list[int] | None:
    """Directed Hamilton cycle starting at vertex 0, or None if none exists.

    Backtracking in vertex order with three prunings: a remaining vertex with
    no usable in- or out-arc, loss of reachability between the current
    vertex, the unvisited set and vertex 0, and forced successors (an
    unvisited vertex whose only usable in-neighbour is the current vertex).
    """
    n = d.order
    if n < 2:
        raise DomainError("Hamilton cycles need order >= 2")
    if n > cap:
        raise CapabilityError(f"order {n} above exact solver cap {cap}")
    out, inn = d.out_masks, d.in_masks
    if any(m == 0 for m in out) or any(m == 0 for m in inn):
        return None
    if not is_strongly_connected(d):
        return None
    full = (1 << n) - 1
    path = [0]
    nodes = 0

    def search(v: int, unvisited: int) -> bool:
        nonlocal nodes
        nodes += 1
        if cancel is not None and nodes % _POLL == 0 and cancel.cancelled:
            raise Cancelled("Hamilton search cancelled")
        if not unvisited:
            return bool(out[v] & 1)
        if not out[v] & unvisited or not inn[0] & unvisited:
            return False
        forced = 0
        vbit = 1 << v
        for x in iter_bits(unvisited):
            ins = inn[x] & (unvisited | vbit)
            if not ins or not out[x] & (unvisited | 1):
                return False
            if ins == vbit:
                if forced:
                    return False
                forced = 1 << x
        if unvisited & (unvisited - 1):
            if _reach(out, v, unvisited | 1) != unvisited | vbit | 1:
                return False
            if _reach(inn, 0, unvisited) != unvisited | 1:
                return False
        choices = forced if forced else out[v] & unvisited
        for u in iter_bits(choices):
            path.append(u)
            if search(u, unvisited & ~(1 << u)):
                return True
            path.pop()
        return False

    if search(0, full & ~1):
        assert is_hamilton_cycle(d, path)
        return list(path)
    return None


def is_hamiltonian(d: Digraph, cap: int = HAMILTON_CAP) -> bool:
    return find_hamilton_cycle(d, cap) is not None


def find_alternating_hamilton_cycle(
    g: BipartiteGraphWithMatching,
    cap: int = 2 * HAMILTON_CAP,
    cancel: CancellationToken | None = None,
) -> AlternatingCycle | None:
    if g.nu > cap:
        raise CapabilityError(f"nu = {g.nu} above alternating solver cap {cap}")
    if g.half_order == 1:
        # a single matching edge is not a cycle
        return None
    cyc = find_hamilton_cycle(contract(g), cap // 2, cancel)
    if cyc is None:
        return None
    res = AlternatingCycle(tuple(cyc))
    assert is_alternating_cycle(g, res.sequence)
    return res


def longest_cycles(
    d: Digraph,
    within: int | None = None,
    limit: int = LONGEST_LIMIT,
    cap: int = LONGEST_CAP,
) -> list[list[int]]:
    """All longest directed cycles (up to ``limit`` of them), each listed
    once, starting at its smallest vertex. Empty when ``d`` is acyclic."""
    n = d.order
    if n > cap:
        raise CapabilityError(f"order {n} above longest-cycle cap {cap}")
    allowed = (1 << n) - 1 if within is None else within
    out = d.out_masks
    best: list[list[int]] = []
    best_len = 1
    path: list[int] = []

    def search(start: int, v: int, avail: int) -> None:
        nonlocal best_len, best
        if out[v] >> start & 1 and len(path) >= 2:
            k = len(path)
            if k > best_len:
                best_len, best = k, [list(path)]
            elif k == best_len and len(best) < limit:
                best.append(list(path))
        # the remaining vertices cannot beat the record
        if len(path) + bin(avail).count("1") < best_len:
            return
        for u in iter_bits(out[v] & avail):
            path.append(u)
            search(start, u, avail & ~(1 << u))
            path.pop()

    for start in iter_bits(allowed):
        higher = allowed & ~((1 << (start + 1)) - 1)
        path.append(start)
        search(start, start, higher)
        path.pop()
    return best


def longest_paths(
    d: Digraph,
    within: int | None = None,
    limit: int = LONGEST_LIMIT,
    cap: int = LONGEST_CAP,
) -> list[list[int]]:
    """All longest directed paths inside ``within`` (a single vertex counts)."""
    n = d.order
    if n > cap:
        raise CapabilityError(f"order {n} above longest-path cap {cap}")
    allowed = (1 << n) - 1 if within is None else within
    out = d.out_masks
    best: list[list[int]] = []
    best_len = 0
    path: list[int] = []

    def search(v: int, avail: int) -> None:
        nonlocal best_len, best
        k = len(path)
        if k > best_len:
            best_len, best = k, [list(path)]
        elif k == best_len and len(best) < limit:
            best.append(list(path))
        if k + bin(avail).count("1") < best_len:
            return
        for u in iter_bits(out[v] & avail):
            path.append(u)
            search(u, avail & ~(1 << u))
            path.pop()

    for start in iter_bits(allowed):
        path.append(start)
        search(start, allowed & ~(1 << start))
        path.pop()
    return best


def longest_alternating_cycle(
    g: BipartiteGraphWithMatching, cap: int = 2 * LONGEST_CAP
) -> AlternatingCycle | None:
    """A maximum-length M-alternating cycle, or None when there is none."""
    if g.nu > cap:
        raise CapabilityError(f"nu = {g.nu} above longest-cycle cap {cap}")
    cycles = longest_cycles(contract(g), limit=1, cap=cap // 2)
    if not cycles:
        return None
    return AlternatingCycle.from_pairs(g, cycles[0])
