"""Extremal-structure analyzer for non-Hamiltonian matched bipartite graphs
sitting on the slack -1 boundary.

Everything is computed on the contraction (pairs), then every claim is
checked with raw adjacency queries on the bipartite graph. With the cycle
``C = c_0 .. c_{m-1}`` (``u_{2i} = w_{c_i}``), a longest path
``P_1 = a_0 .. a_{p-1}`` in ``G_1 = G - C`` and anchors with arcs
``c_{s-1} -> a_0`` and ``a_{p-1} -> c_r``, the opposite path is
``P_2 = c_s .. c_{r-1}`` and the central path is ``R = c_r .. c_{s-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from hamlab.conditions import bipartite_slack
from hamlab.correspondence import contract
from hamlab.errors import CapabilityError
from hamlab.graph_core import (
    AlternatingCycle,
    AlternatingPath,
    BipartiteGraphWithMatching,
    b_vertex,
    w_vertex,
)
from hamlab.hamilton.solver import (
    LONGEST_CAP,
    LONGEST_LIMIT,
    find_alternating_hamilton_cycle,
    longest_cycles,
    longest_paths,
)

EdgeType = Literal["I", "II", "III", "IV"]
_TYPE_OF = {(1, 1): "I", (1, 2): "II", (2, 1): "III", (2, 2): "IV"}


@dataclass(frozen=True)
class StructureDecomposition:
    cycle: AlternatingCycle
    critical_pairs: tuple[int, ...]
    critical_path: AlternatingPath
    opposite_pairs: tuple[int, ...]
    central_pairs: tuple[int, ...]
    anchors: tuple[int, int]  # (u_{2s-1}, u_{2r}) as vertices of g

    @property
    def m(self) -> int:
        return len(self.cycle.pairs)

    @property
    def p1(self) -> int:
        return len(self.critical_path.pairs)

    @property
    def p2(self) -> int:
        return len(self.opposite_pairs)

    @property
    def r(self) -> int:
        return len(self.central_pairs)

    def to_dict(self) -> dict:
        return {
            "cycle": self.cycle.sequence,
            "criticalGraph": _vertices(self.critical_pairs),
            "criticalPath": self.critical_path.sequence,
            "oppositePath": _vertices(self.opposite_pairs),
            "centralPath": _vertices(self.central_pairs),
            "anchors": list(self.anchors),
        }


@dataclass(frozen=True)
class EdgeTypeTally:
    # (u_{2i-1}, u_{2i}, type or None when the edge fits no single type)
    per_edge: tuple[tuple[int, int, str | None], ...]
    t11: int
    t12: int
    t21: int
    t22: int

    @property
    def t1(self) -> int:
        return self.t11

    @property
    def t2(self) -> int:
        return self.t22

    @property
    def t0(self) -> int | None:
        return self.t12 if self.t12 == self.t21 else None

    @property
    def complete(self) -> bool:
        return all(t is not None for _, _, t in self.per_edge)

    def to_dict(self) -> dict:
        return {
            "perEdge": [[a, b, t] for a, b, t in self.per_edge],
            "t11": self.t11,
            "t12": self.t12,
            "t21": self.t21,
            "t22": self.t22,
        }


@dataclass(frozen=True)
class ClaimResult:
    name: str
    passed: bool
    applicable: bool = True
    detail: str = ""


@dataclass(frozen=True)
class StructureReport:
    status: Literal["hamiltonian", "condition-violated", "acyclic", "analyzed", "no-decomposition"]
    decomposition: StructureDecomposition | None = None
    tally: EdgeTypeTally | None = None
    claims: tuple[ClaimResult, ...] = field(default=())
    case: str | None = None
    minimizers: int = 0

    @property
    def all_claims_pass(self) -> bool:
        return all(c.passed for c in self.claims)

    def claim(self, name: str) -> ClaimResult:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "case": self.case,
            "minimizers": self.minimizers,
            "decomposition": None if self.decomposition is None else self.decomposition.to_dict(),
            "tally": None if self.tally is None else self.tally.to_dict(),
            "claims": [
                {"name": c.name, "passed": c.passed, "applicable": c.applicable, "detail": c.detail}
                for c in self.claims
            ],
        }


def _vertices(pairs) -> list[int]:
    out = []
    for p in pairs:
        out.extend((w_vertex(p), b_vertex(p)))
    return out


def _candidates(g: BipartiteGraphWithMatching, limit: int) -> tuple[list[StructureDecomposition], int]:
    """All decompositions whose opposite path is globally shortest (capped)."""
    d = contract(g)
    n = d.order
    full = (1 << n) - 1
    best_len: int | None = None
    found: list[StructureDecomposition] = []
    total = 0
    for cyc in longest_cycles(d, limit=limit):
        m = len(cyc)
        on_c = 0
        for p in cyc:
            on_c |= 1 << p
        rest = full & ~on_c
        if not rest:
            continue
        crit = tuple(v for v in range(n) if rest >> v & 1)
        for path in longest_paths(d, rest, limit=limit):
            first, last = path[0], path[-1]
            for s in range(m):
                if not d.has_arc(cyc[s - 1], first):
                    continue
                for r in range(m):
                    if not d.has_arc(last, cyc[r]):
                        continue
                    length = (r - s) % m
                    if length == 0:
                        continue
                    if best_len is not None and length > best_len:
                        continue
                    if best_len is None or length < best_len:
                        best_len, found, total = length, [], 0
                    total += 1
                    if len(found) >= limit:
                        continue
                    opp = tuple(cyc[(s + t) % m] for t in range(length))
                    cen = tuple(cyc[(r + t) % m] for t in range(m - length))
                    found.append(
                        StructureDecomposition(
                            cycle=AlternatingCycle(tuple(cyc)),
                            critical_pairs=crit,
                            critical_path=AlternatingPath(tuple(path)),
                            opposite_pairs=opp,
                            central_pairs=cen,
                            anchors=(b_vertex(cyc[s - 1]), w_vertex(cyc[r])),
                        )
                    )
    return found, total


def _complete_bipartite(g: BipartiteGraphWithMatching, pairs) -> list[tuple[int, int]]:
    return [
        (w_vertex(a), b_vertex(b))
        for a in pairs
        for b in pairs
        if not g.has_edge(w_vertex(a), b_vertex(b))
    ]


def _tally(g: BipartiteGraphWithMatching, dec: StructureDecomposition) -> EdgeTypeTally:
    rho = dec.central_pairs
    g1w = [w_vertex(a) for a in dec.critical_pairs]
    g1b = [b_vertex(a) for a in dec.critical_pairs]
    g2w = [w_vertex(a) for a in dec.opposite_pairs]
    g2b = [b_vertex(a) for a in dec.opposite_pairs]
    per = []
    counts = {"I": 0, "II": 0, "III": 0, "IV": 0}
    for i in range(1, len(rho)):
        left, right = b_vertex(rho[i - 1]), w_vertex(rho[i])
        e1 = all(g.has_edge(left, v) for v in g1w)
        e2 = all(g.has_edge(right, v) for v in g1b)
        e1p = all(g.has_edge(left, v) for v in g2w)
        e2p = all(g.has_edge(right, v) for v in g2b)
        side1 = 1 if e1 and not e2 else 2 if e2 and not e1 else None
        side2 = 1 if e1p and not e2p else 2 if e2p and not e1p else None
        t = _TYPE_OF.get((side1, side2)) if side1 and side2 else None
        if t is not None:
            counts[t] += 1
        per.append((left, right, t))
    return EdgeTypeTally(tuple(per), counts["I"], counts["II"], counts["III"], counts["IV"])


def _claims(
    g: BipartiteGraphWithMatching, dec: StructureDecomposition, tally: EdgeTypeTally
) -> tuple[ClaimResult, ...]:
    nu = g.nu
    g1 = _vertices(dec.critical_pairs)
    g2 = _vertices(dec.opposite_pairs)
    u_odd, u_even = dec.anchors
    res = []

    length = len(dec.cycle)
    res.append(ClaimResult("claim1", 2 * length >= nu + 2, detail=f"|C|={length}, nu/2+1={nu // 2 + 1}"))

    missing = _complete_bipartite(g, dec.critical_pairs)
    res.append(ClaimResult("claim2", not missing, detail=f"missing G1 edges {missing}"))

    cross = [(x, y) for x in g1 for y in g2 if g.has_edge(x, y)]
    bad = [v for v in g1 if v % 2 == 0 and not g.has_edge(u_odd, v)]
    bad += [v for v in g1 if v % 2 == 1 and not g.has_edge(u_even, v)]
    res.append(
        ClaimResult("claim3", not cross and not bad, detail=f"G1-G2 edges {cross}, unattached {bad}")
    )

    missing2 = _complete_bipartite(g, dec.opposite_pairs)
    bad2 = [v for v in g2 if v % 2 == 0 and not g.has_edge(u_odd, v)]
    bad2 += [v for v in g2 if v % 2 == 1 and not g.has_edge(u_even, v)]
    res.append(
        ClaimResult("claim4", not missing2 and not bad2, detail=f"missing G2 edges {missing2}, unattached {bad2}")
    )

    case2 = dec.r >= 2
    res.append(ClaimResult("claim5", not case2 or len(g1) == 2, case2, detail=f"|G1|={len(g1)}"))

    # exactly one end of every central non-matching edge sees G_j, and fully
    attach_bad = []
    for j, block in ((1, g1), (2, g2)):
        bw = [v for v in block if v % 2 == 0]
        bb = [v for v in block if v % 2 == 1]
        for left, right, _ in tally.per_edge:
            lsee = [v for v in bw if g.has_edge(left, v)]
            rsee = [v for v in bb if g.has_edge(right, v)]
            if bool(lsee) == bool(rsee) or (lsee and len(lsee) < len(bw)) or (rsee and len(rsee) < len(bb)):
                attach_bad.append((j, left, right))
    res.append(ClaimResult("attachment", not attach_bad, case2, detail=f"violations {attach_bad}"))

    ok6 = tally.complete and tally.t12 == tally.t21 and (tally.t12 == 0 or tally.t11 == tally.t22 == 0)
    res.append(
        ClaimResult(
            "claim6",
            not case2 or ok6,
            case2,
            detail=f"t11={tally.t11} t12={tally.t12} t21={tally.t21} t22={tally.t22}",
        )
    )
    return tuple(res)


def _case(dec: StructureDecomposition, tally: EdgeTypeTally) -> str:
    if dec.r == 1:
        return "1"
    if tally.t0 == 0:
        return "2.1"
    if tally.t0 is not None and tally.t1 == tally.t2 == 0:
        return "2.2.1" if dec.p2 >= 2 else "2.2.2"
    return "unclassified"


def analyze_structure(
    g: BipartiteGraphWithMatching, limit: int = LONGEST_LIMIT, cap: int = 2 * LONGEST_CAP
) -> StructureReport:
    """Decompose ``g`` around a longest alternating cycle and check the claims.

    Among all decompositions with the shortest opposite path (up to ``limit``)
    the first one on which every claim passes is reported; if none passes,
    the first minimizer is reported with its failures.
    """
    if g.nu > cap:
        raise CapabilityError(f"nu = {g.nu} above analyzer cap {cap}")
    if find_alternating_hamilton_cycle(g) is not None:
        return StructureReport("hamiltonian")
    if not bipartite_slack(g).satisfies(-1):
        return StructureReport("condition-violated")
    found, total = _candidates(g, limit)
    if not found:
        status = "acyclic" if not longest_cycles(contract(g), limit=1) else "no-decomposition"
        return StructureReport(status)
    chosen = None
    for dec in found:
        tally = _tally(g, dec)
        claims = _claims(g, dec, tally)
        if chosen is None:
            chosen = (dec, tally, claims)
        if all(c.passed for c in claims):
            chosen = (dec, tally, claims)
            break
    dec, tally, claims = chosen
    return StructureReport("analyzed", dec, tally, claims, _case(dec, tally), total)
