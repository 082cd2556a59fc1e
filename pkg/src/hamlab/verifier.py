"""Exhaustive labeled enumeration campaigns and the constrained G4 search."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Literal

from hamlab.codec import ReportRecord, read_report_record, write_report_record
from hamlab.conditions import (
    all_pairs_slack_value,
    bipartite_slack,
    ore_slack_value,
    woodall_slack_value,
)
from hamlab.correspondence import contract, double_undirected, expand
from hamlab.errors import CapabilityError, DomainError, SerializationError
from hamlab.families import recognize_bipartite, recognize_directed, recognize_undirected
from hamlab.graph_core import (
    BipartiteGraphWithMatching,
    CanonicalCode,
    Digraph,
    Graph,
    canonical_code,
)
from hamlab.hamilton.solver import find_alternating_hamilton_cycle, find_hamilton_cycle

DIGRAPH_ENUM_CAP = 6
GRAPH_ENUM_CAP = 7
SHARD_SLACK_BITS = 4

Filter = Literal["none", "woodall", "all-pairs", "ore"]
Variant = Literal["theorem11", "theorem14", "theorem12", "corollary"]
VARIANTS = ("theorem11", "theorem14", "theorem12", "corollary")


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _shard_bits(nslots: int, count: int) -> int:
    if count <= 1:
        return 0
    return min(nslots, (count - 1).bit_length() + SHARD_SLACK_BITS)


def _check_shard(shard: tuple[int, int]) -> tuple[int, int]:
    index, count = shard
    if count < 1 or not 0 <= index < count:
        raise DomainError(f"bad shard {index}/{count}")
    return index, count


def _enumerate(
    n: int,
    slots: list[tuple[int, int]],
    symmetric: bool,
    shard: tuple[int, int],
    min_slack: int | None,
    pairs_mode: str,
) -> Iterator[tuple[int, ...]]:
    """Depth-first over the slot bits, yielding adjacency masks.

    With ``min_slack`` set, a branch is cut as soon as some constrained pair
    cannot reach ``n + min_slack`` even if every undecided slot became an arc.
    ``pairs_mode`` is ``"nonarc"`` (pairs decided absent) or ``"all"``.
    """
    index, count = _check_shard(shard)
    k = _shard_bits(len(slots), count)
    total = len(slots)
    out = [0] * n
    # ceilings: decided arcs plus undecided slots touching the vertex
    out_ceil = [0] * n
    in_ceil = [0] * n
    for u, v in slots:
        out_ceil[u] += 1
        in_ceil[v] += 1
        if symmetric:
            out_ceil[v] += 1
            in_ceil[u] += 1
    need = None if min_slack is None else n + min_slack
    absent: list[tuple[int, int]] = []
    all_pairs = [(u, v) for u in range(n) for v in range(n)]

    def feasible(u: int, v: int) -> bool:
        if pairs_mode == "all":
            return all(out_ceil[a] + in_ceil[b] >= need for a, b in all_pairs if a in (u, v) or b in (u, v))
        for a, b in absent:
            if out_ceil[a] + in_ceil[b] < need:
                return False
        return True

    def rec(t: int, prefix: int) -> Iterator[tuple[int, ...]]:
        if t == k and prefix % count != index:
            return
        if t == total:
            yield tuple(out)
            return
        u, v = slots[t]
        nbit = prefix << 1 if t < k else prefix
        # absent first so the order matches counting upward in binary
        out_ceil[u] -= 1
        in_ceil[v] -= 1
        if symmetric:
            out_ceil[v] -= 1
            in_ceil[u] -= 1
        absent.append((u, v))
        if symmetric:
            absent.append((v, u))
        if need is None or feasible(u, v):
            yield from rec(t + 1, nbit)
        if symmetric:
            absent.pop()
        absent.pop()
        out_ceil[u] += 1
        in_ceil[v] += 1
        if symmetric:
            out_ceil[v] += 1
            in_ceil[u] += 1
        out[u] |= 1 << v
        if symmetric:
            out[v] |= 1 << u
        yield from rec(t + 1, nbit | 1 if t < k else prefix)
        out[u] &= ~(1 << v)
        if symmetric:
            out[v] &= ~(1 << u)

    yield from rec(0, 0)


def _digraph_slots(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def _graph_slots(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def shard_size(nslots: int, shard: tuple[int, int]) -> int:
    """Number of labeled graphs in the shard's keyspace (pruned ones included)."""
    index, count = _check_shard(shard)
    k = _shard_bits(nslots, count)
    prefixes = sum(1 for p in range(1 << k) if p % count == index)
    return prefixes << (nslots - k)


def enumerate_digraphs(
    order: int,
    shard: tuple[int, int] = (0, 1),
    filter: Filter = "none",
    min_slack: int = -1,
) -> Iterator[Digraph]:
    """Every labeled loop-free digraph of ``order`` in the shard, optionally
    restricted (exactly) to Woodall or all-pairs slack ``>= min_slack``."""
    if order > DIGRAPH_ENUM_CAP:
        raise CapabilityError(f"order {order} above digraph enumeration cap {DIGRAPH_ENUM_CAP}")
    if order < 1:
        raise DomainError("order must be >= 1")
    slots = _digraph_slots(order)
    if filter == "none":
        for masks in _enumerate(order, slots, False, shard, None, "nonarc"):
            yield Digraph(order, masks)
        return
    if filter not in ("woodall", "all-pairs"):
        raise DomainError(f"unknown digraph filter {filter!r}")
    mode = "nonarc" if filter == "woodall" else "all"
    for masks in _enumerate(order, slots, False, shard, min_slack, mode):
        d = Digraph(order, masks)
        s = (
            woodall_slack_value(order, d.out_masks, d.in_masks)
            if filter == "woodall"
            else all_pairs_slack_value(order, d.out_masks, d.in_masks)
        )
        if s is None or s >= min_slack:
            yield d


def enumerate_graphs(
    order: int,
    shard: tuple[int, int] = (0, 1),
    filter: Filter = "none",
    min_slack: int = -1,
) -> Iterator[Graph]:
    if order > GRAPH_ENUM_CAP:
        raise CapabilityError(f"order {order} above graph enumeration cap {GRAPH_ENUM_CAP}")
    if order < 1:
        raise DomainError("order must be >= 1")
    slots = _graph_slots(order)
    if filter == "none":
        for masks in _enumerate(order, slots, True, shard, None, "nonarc"):
            yield Graph(order, masks)
        return
    if filter != "ore":
        raise DomainError(f"unknown graph filter {filter!r}")
    for masks in _enumerate(order, slots, True, shard, min_slack, "nonarc"):
        s = ore_slack_value(order, masks)
        if s is None or s >= min_slack:
            yield Graph(order, masks)


# ---------------------------------------------------------------------------
# Campaigns
# ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    order: int
    variant: str
    total_labeled: int = 0
    condition_satisfying: int = 0
    hamiltonian_count: int = 0
    # (canonical code hex, tag label or None, slack) per labeled exception
    exceptions: list[tuple[str, str | None, int | None]] = field(default_factory=list)
    original_violations: int = 0
    shard_id: int = 0
    shard_count: int = 1
    elapsed_micros: int = 0

    @property
    def unrecognized(self) -> list[tuple[str, str | None, int | None]]:
        return [e for e in self.exceptions if e[1] is None]

    @property
    def certified(self) -> bool:
        return not self.unrecognized

    @property
    def conserved(self) -> bool:
        return self.condition_satisfying == self.hamiltonian_count + len(self.exceptions)

    def exception_classes(self) -> dict[str, str | None]:
        out: dict[str, str | None] = {}
        for code, tag, _ in self.exceptions:
            out.setdefault(code, tag)
        return dict(sorted(out.items()))

    def summary(self) -> dict:
        return {
            "order": self.order,
            "variant": self.variant,
            "totalLabeled": self.total_labeled,
            "conditionSatisfying": self.condition_satisfying,
            "hamiltonianCount": self.hamiltonian_count,
            "exceptionCount": len(self.exceptions),
            "exceptionClasses": self.exception_classes(),
            "unrecognizedCount": len(self.unrecognized),
            "originalViolations": self.original_violations,
            "certified": self.certified,
            "shardId": self.shard_id,
            "shardCount": self.shard_count,
            "elapsedMicros": self.elapsed_micros,
        }

    def to_jsonl(self) -> str:
        lines = [
            write_report_record(
                ReportRecord(code, self.order, slack, False, tag, self.shard_id, self.elapsed_micros)
            )
            for code, tag, slack in self.exceptions
        ]
        lines.append(json.dumps({"summary": self.summary()}, separators=(",", ":"), sort_keys=True))
        return "\n".join(lines) + "\n"


def read_report_jsonl(text: str) -> list[VerifyReport]:
    """Rebuild reports from JSONL; each summary line closes one report."""
    reports = []
    pending: list[ReportRecord] = []
    for raw in text.splitlines():
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SerializationError(f"invalid JSON: {exc}") from exc
        if isinstance(obj, dict) and "summary" in obj:
            s = obj["summary"]
            try:
                rep = VerifyReport(
                    order=s["order"],
                    variant=s["variant"],
                    total_labeled=s["totalLabeled"],
                    condition_satisfying=s["conditionSatisfying"],
                    hamiltonian_count=s["hamiltonianCount"],
                    exceptions=[(r.code, r.family_tag, r.condition_slack) for r in pending],
                    original_violations=s["originalViolations"],
                    shard_id=s["shardId"],
                    shard_count=s["shardCount"],
                    elapsed_micros=s["elapsedMicros"],
                )
            except (KeyError, TypeError) as exc:
                raise SerializationError(f"bad summary line: {exc}") from exc
            reports.append(rep)
            pending = []
        else:
            pending.append(read_report_record(raw))
    if pending:
        raise SerializationError("records after the last summary line")
    return reports


def merge_reports(reports: Iterable[VerifyReport]) -> VerifyReport:
    """Combine shard reports of one campaign (shards ordered by index)."""
    reps = sorted(reports, key=lambda r: r.shard_id)
    if not reps:
        raise DomainError("nothing to merge")
    first = reps[0]
    for r in reps:
        if (r.order, r.variant, r.shard_count) != (first.order, first.variant, first.shard_count):
            raise DomainError("reports come from different campaigns")
    if len({r.shard_id for r in reps}) != len(reps):
        raise DomainError("duplicate shard in merge")
    merged = VerifyReport(first.order, first.variant, shard_id=0, shard_count=1)
    for r in reps:
        merged.total_labeled += r.total_labeled
        merged.condition_satisfying += r.condition_satisfying
        merged.hamiltonian_count += r.hamiltonian_count
        merged.exceptions.extend(r.exceptions)
        merged.original_violations += r.original_violations
        merged.elapsed_micros += r.elapsed_micros
    if len(reps) != first.shard_count:
        merged.shard_count = first.shard_count
        merged.shard_id = -1  # partial merge
    return merged


def _digraph_campaign(order: int, variant: str, shard, recognize_cache) -> VerifyReport:
    rep = VerifyReport(order, variant)
    filt = "all-pairs" if variant == "theorem14" else "woodall"
    slack_of = all_pairs_slack_value if variant == "theorem14" else woodall_slack_value
    rep.total_labeled = shard_size(order * (order - 1), shard)
    for d in enumerate_digraphs(order, shard, filt, -1):
        if variant == "theorem12":
            g = expand(d)
            slack = bipartite_slack(g).slack
            if slack is not None and slack < -1:
                continue
            rep.condition_satisfying += 1
            if find_alternating_hamilton_cycle(g) is not None:
                rep.hamiltonian_count += 1
                continue
            code = canonical_code(g).hex()
            if code not in recognize_cache:
                tag = recognize_bipartite(g)
                recognize_cache[code] = None if tag is None else tag.label
        else:
            slack = slack_of(order, d.out_masks, d.in_masks)
            rep.condition_satisfying += 1
            if find_hamilton_cycle(d) is not None:
                rep.hamiltonian_count += 1
                continue
            code = canonical_code(d).hex()
            if code not in recognize_cache:
                tag = recognize_directed(d, variant)
                recognize_cache[code] = None if tag is None else tag.label
        rep.exceptions.append((code, recognize_cache[code], slack))
        if slack is None or slack >= 0:
            rep.original_violations += 1
    return rep


def _graph_campaign(order: int, shard, recognize_cache) -> VerifyReport:
    rep = VerifyReport(order, "corollary")
    rep.total_labeled = shard_size(order * (order - 1) // 2, shard)
    for g in enumerate_graphs(order, shard, "ore", -1):
        slack = ore_slack_value(order, g.adj_masks)
        rep.condition_satisfying += 1
        if find_hamilton_cycle(double_undirected(g)) is not None:
            rep.hamiltonian_count += 1
            continue
        code = canonical_code(g).hex()
        if code not in recognize_cache:
            tag = recognize_undirected(g)
            recognize_cache[code] = None if tag is None else tag.label
        rep.exceptions.append((code, recognize_cache[code], slack))
        if slack is None or slack >= 0:
            rep.original_violations += 1
    return rep


def verify_main_theorem(
    order: int,
    variant: Variant = "theorem11",
    shard: tuple[int, int] = (0, 1),
    timing: bool = False,
) -> VerifyReport:
    """Run one campaign shard.

    ``theorem11``/``theorem14`` enumerate digraphs of ``order``; ``theorem12``
    enumerates digraphs of ``order`` and checks their expansions (``nu =
    2 * order``); ``corollary`` enumerates undirected graphs (order >= 3).
    Wall time is recorded only with ``timing=True`` so reports stay
    byte-reproducible by default.
    """
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    index, count = _check_shard(shard)
    start = time.perf_counter()
    cache: dict[str, str | None] = {}
    if variant == "corollary":
        if order < 3:
            raise DomainError("corollary campaign needs order >= 3")
        rep = _graph_campaign(order, shard, cache)
    else:
        if order < 2:
            raise DomainError("digraph campaigns need order >= 2")
        rep = _digraph_campaign(order, variant, shard, cache)
    rep.shard_id, rep.shard_count = index, count
    if timing:
        rep.elapsed_micros = int((time.perf_counter() - start) * 1e6)
    return rep


def _run_shard(args: tuple[int, str, int, int, bool]) -> VerifyReport:
    order, variant, index, count, timing = args
    return verify_main_theorem(order, variant, (index, count), timing)


def verify_parallel(order: int, variant: Variant, shards: int, jobs: int, timing: bool = False) -> VerifyReport:
    tasks = [(order, variant, i, shards, timing) for i in range(shards)]
    if jobs <= 1:
        reps = [_run_shard(t) for t in tasks]
    else:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            reps = pool.map(_run_shard, tasks)
    return merge_reports(reps)


# ---------------------------------------------------------------------------
# G4 derivation
# ---------------------------------------------------------------------------

# Skeleton vertex ids (w_i = 2i, b_i = 2i + 1):
# G1 = {v0, v1}, G2 = {v0', v1'}, R = u0 .. u9 with u_{2k} u_{2k+1} in M.
_V0, _V1, _V0P, _V1P = 0, 1, 2, 3


def _u(j: int) -> int:
    return 4 + j


@dataclass
class DeriveResult:
    classes: list[tuple[str, BipartiteGraphWithMatching]]
    candidates: int
    survivors: int
    patterns: dict[str, int]

    @property
    def unique(self) -> bool:
        return len(self.classes) == 1


def _skeleton(pattern: tuple[str, ...]) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Forced edges and the free W-B pairs of the r = 5 skeleton.

    ``pattern[i-1]`` is the type (II or III) of the central edge u_{2i-1} u_{2i}.
    """
    edges = [(_V0, _V1), (_V0P, _V1P)]
    edges += [(_u(2 * k), _u(2 * k + 1)) for k in range(5)]
    edges += [(_u(2 * i - 1), _u(2 * i)) for i in range(1, 5)]
    # cycle closure through G2 and the anchors of P1 = v0 v1
    edges += [(_u(9), _V0P), (_V1P, _u(0)), (_u(0), _V1), (_u(9), _V0)]
    # u0 and u9 see both blocks; the central edges follow their type
    edges += [(_u(0), _V1P), (_u(9), _V0P)]
    for i, t in enumerate(pattern, start=1):
        left, right = _u(2 * i - 1), _u(2 * i)
        if t == "II":
            edges += [(left, _V0), (right, _V1P)]
        else:
            edges += [(right, _V1), (left, _V0P)]
    fixed = {frozenset(e) for e in edges}
    free = []
    for k in range(5):
        w = _u(2 * k)
        for j in range(5):
            b = _u(2 * j + 1)
            if frozenset((w, b)) not in fixed:
                free.append((w, b))
    return sorted(set(tuple(sorted(e)) for e in edges)), free


def derive_g4(
    patterns: Iterable[tuple[str, ...]] | None = None,
    progress: Callable[[int], None] | None = None,
) -> DeriveResult:
    """Exhaust the free pairs of the skeleton and keep the graphs with slack
    >= -1, no alternating Hamilton cycle and no G1-G3 membership.

    By default every arrangement of two type-II and two type-III central
    edges is searched; the survivors are grouped by canonical code.
    """
    if patterns is None:
        patterns = sorted(set(itertools.permutations(("II", "II", "III", "III"))))
    classes: dict[str, BipartiteGraphWithMatching] = {}
    per_pattern: dict[str, int] = {}
    candidates = survivors = 0
    for pattern in patterns:
        forced, free = _skeleton(tuple(pattern))
        found = 0
        for bits in range(1 << len(free)):
            candidates += 1
            if progress is not None and candidates % 4096 == 0:
                progress(candidates)
            edges = forced + [free[t] for t in range(len(free)) if bits >> t & 1]
            g = BipartiteGraphWithMatching.from_vertex_edges(7, edges)
            if not bipartite_slack(g).satisfies(-1):
                continue
            if find_alternating_hamilton_cycle(g) is not None:
                continue
            tag = recognize_bipartite(g)
            if tag is not None and tag.kind in ("G1", "G2", "G3"):
                continue
            found += 1
            survivors += 1
            classes.setdefault(canonical_code(g).hex(), g)
        per_pattern["-".join(pattern)] = found
    return DeriveResult(sorted(classes.items()), candidates, survivors, per_pattern)


def contraction_code(g: BipartiteGraphWithMatching) -> CanonicalCode:
    return canonical_code(contract(g))
