"""Immutable graph values, degree queries, induced subgraphs and canonical codes.

Adjacency is stored as one Python int bitmask per vertex. Three value types live
here:

* :class:`Digraph` - loop-free simple digraph.
* :class:`Graph` - simple undirected graph.
* :class:`BipartiteGraphWithMatching` - balanced bipartite graph with a
  designated perfect matching. Vertex ``2*i`` is ``w_i`` (part W), vertex
  ``2*i + 1`` is ``b_i`` (part B), and ``w_i b_i`` is the i-th matching edge.
  Cross edges are stored as the bitmask of indices ``j`` with ``b_i w_j``
  adjacent, which is exactly the out-neighbourhood of ``i`` in the contraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from hamlab.errors import CapabilityError, DomainError

DEFAULT_CANON_CAP = 12


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _check_vertex(v: int, order: int) -> None:
    if not 0 <= v < order:
        raise DomainError(f"vertex {v} out of range for order {order}")


class Induced(NamedTuple):
    """An induced subgraph together with ``mapping[new] = old``."""

    graph: "Digraph | Graph | BipartiteGraphWithMatching"
    mapping: tuple[int, ...]


# ---------------------------------------------------------------------------
# Digraph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Digraph:
    """Loop-free simple digraph on vertices ``0 .. order-1``.

    ``out_masks[u]`` has bit ``v`` set iff the arc ``(u, v)`` is present.
    """

    order: int
    out_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise DomainError("order must be non-negative")
        if len(self.out_masks) != self.order:
            raise DomainError("out_masks length must equal order")
        full = (1 << self.order) - 1
        for u, mask in enumerate(self.out_masks):
            if mask & ~full or mask < 0:
                raise DomainError(f"arc endpoint out of range at vertex {u}")
            if mask >> u & 1:
                raise DomainError(f"loop at vertex {u}")

    @classmethod
    def from_arcs(cls, order: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        out = [0] * order
        for u, v in arcs:
            _check_vertex(u, order)
            _check_vertex(v, order)
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            out[u] |= 1 << v
        return cls(order, tuple(out))

    @classmethod
    def empty(cls, order: int) -> "Digraph":
        return cls(order, (0,) * order)

    @classmethod
    def complete(cls, order: int) -> "Digraph":
        full = (1 << order) - 1
        return cls(order, tuple(full & ~(1 << u) for u in range(order)))

    @classmethod
    def cycle(cls, order: int) -> "Digraph":
        return cls.from_arcs(order, ((i, (i + 1) % order) for i in range(order)))

    @classmethod
    def transitive_tournament(cls, order: int) -> "Digraph":
        return cls.from_arcs(order, ((i, j) for i in range(order) for j in range(i + 1, order)))

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        inn = [0] * self.order
        for u, mask in enumerate(self.out_masks):
            for v in iter_bits(mask):
                inn[v] |= 1 << u
        return tuple(inn)

    @property
    def vertices(self) -> range:
        return range(self.order)

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in iter_bits(self.out_masks[u])]

    @property
    def arc_count(self) -> int:
        return sum(popcount(m) for m in self.out_masks)

    def has_arc(self, u: int, v: int) -> bool:
        _check_vertex(u, self.order)
        _check_vertex(v, self.order)
        return bool(self.out_masks[u] >> v & 1)

    def out_degree(self, v: int) -> int:
        _check_vertex(v, self.order)
        return popcount(self.out_masks[v])

    def in_degree(self, v: int) -> int:
        _check_vertex(v, self.order)
        return popcount(self.in_masks[v])

    def degree(self, v: int) -> int:
        return self.out_degree(v) + self.in_degree(v)

    def successors(self, v: int) -> list[int]:
        _check_vertex(v, self.order)
        return list(iter_bits(self.out_masks[v]))

    def predecessors(self, v: int) -> list[int]:
        _check_vertex(v, self.order)
        return list(iter_bits(self.in_masks[v]))

    def converse(self) -> "Digraph":
        return Digraph(self.order, self.in_masks)

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Return the digraph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.order)):
            raise DomainError("relabel needs a permutation of the vertex set")
        return Digraph.from_arcs(self.order, ((perm[u], perm[v]) for u, v in self.arcs))

    def induced(self, vertices: Iterable[int]) -> Induced:
        keep = sorted(set(vertices))
        for v in keep:
            _check_vertex(v, self.order)
        index = {old: new for new, old in enumerate(keep)}
        arcs = [(index[u], index[v]) for u, v in self.arcs if u in index and v in index]
        return Induced(Digraph.from_arcs(len(keep), arcs), tuple(keep))

    def __repr__(self) -> str:
        return f"Digraph(order={self.order}, arcs={self.arcs})"


def is_strongly_connected(d: Digraph, within: int | None = None) -> bool:
    """Strong connectivity of ``d`` (or of the subdigraph induced on ``within``)."""
    full = (1 << d.order) - 1 if within is None else within
    if full == 0:
        return True
    start = (full & -full).bit_length() - 1
    for masks in (d.out_masks, d.in_masks):
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= masks[v]
            nxt &= full & ~seen
            seen |= nxt
            frontier = nxt
        if seen != full:
            return False
    return True


# ---------------------------------------------------------------------------
# Undirected graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj_masks`` is symmetric and loop-free."""

    order: int
    adj_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj_masks) != self.order:
            raise DomainError("adj_masks length must equal order")
        full = (1 << self.order) - 1
        for u, mask in enumerate(self.adj_masks):
            if mask & ~full or mask >> u & 1:
                raise DomainError(f"bad adjacency at vertex {u}")
            for v in iter_bits(mask):
                if not self.adj_masks[v] >> u & 1:
                    raise DomainError("adjacency must be symmetric")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * order
        for u, v in edges:
            _check_vertex(u, order)
            _check_vertex(v, order)
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(order, tuple(adj))

    @classmethod
    def empty(cls, order: int) -> "Graph":
        return cls(order, (0,) * order)

    @classmethod
    def complete(cls, order: int) -> "Graph":
        full = (1 << order) - 1
        return cls(order, tuple(full & ~(1 << u) for u in range(order)))

    @classmethod
    def path(cls, order: int) -> "Graph":
        return cls.from_edges(order, ((i, i + 1) for i in range(order - 1)))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in iter_bits(self.adj_masks[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        _check_vertex(u, self.order)
        _check_vertex(v, self.order)
        return bool(self.adj_masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        _check_vertex(v, self.order)
        return popcount(self.adj_masks[v])

    def neighbors(self, v: int) -> list[int]:
        _check_vertex(v, self.order)
        return list(iter_bits(self.adj_masks[v]))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        if sorted(perm) != list(range(self.order)):
            raise DomainError("relabel needs a permutation of the vertex set")
        return Graph.from_edges(self.order, ((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Iterable[int]) -> Induced:
        keep = sorted(set(vertices))
        for v in keep:
            _check_vertex(v, self.order)
        index = {old: new for new, old in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Induced(Graph.from_edges(len(keep), edges), tuple(keep))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edges})"


# ---------------------------------------------------------------------------
# Balanced bipartite graph with a perfect matching
# ---------------------------------------------------------------------------


def w_vertex(i: int) -> int:
    return 2 * i


def b_vertex(i: int) -> int:
    return 2 * i + 1


def is_w(v: int) -> bool:
    return v % 2 == 0


def partner(v: int) -> int:
    return v ^ 1


def pair_of(v: int) -> int:
    return v >> 1


@dataclass(frozen=True)
class BipartiteGraphWithMatching:
    """Balanced bipartite graph ``G = (W, B)`` with perfect matching ``M``.

    ``cross[i]`` has bit ``j`` set iff ``b_i`` is adjacent to ``w_j`` (``i != j``).
    The matching edges ``w_i b_i`` are implicit.
    """

    half_order: int
    cross: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.cross) != self.half_order:
            raise DomainError("cross length must equal half_order")
        full = (1 << self.half_order) - 1
        for i, mask in enumerate(self.cross):
            if mask & ~full or mask >> i & 1:
                raise DomainError(f"bad cross adjacency at pair {i}")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        matching: Iterable[tuple[int, int]],
    ) -> "BipartiteGraphWithMatching":
        """Build from ``(w, b)`` index pairs, each index in ``range(n)``.

        ``w`` keeps its index; ``b`` is renamed so that the partner of ``w_i``
        becomes ``b_i``.
        """
        edge_set = set()
        for w, b in edges:
            _check_vertex(w, n)
            _check_vertex(b, n)
            edge_set.add((w, b))
        b_of_w: dict[int, int] = {}
        used_b: set[int] = set()
        for w, b in matching:
            _check_vertex(w, n)
            _check_vertex(b, n)
            if w in b_of_w or b in used_b:
                raise DomainError("matching covers a vertex twice")
            if (w, b) not in edge_set:
                raise DomainError(f"matching edge ({w}, {b}) is not an edge of the graph")
            b_of_w[w] = b
            used_b.add(b)
        if len(b_of_w) != n:
            raise DomainError("matching is not perfect")
        pair_of_b = {b: w for w, b in b_of_w.items()}
        cross = [0] * n
        for w, b in edge_set:
            i = pair_of_b[b]
            if i != w:
                cross[i] |= 1 << w
        return cls(n, tuple(cross))

    @classmethod
    def from_vertex_edges(
        cls, half_order: int, edges: Iterable[tuple[int, int]]
    ) -> "BipartiteGraphWithMatching":
        """Build from edges given as global vertex ids (``w_i = 2i``, ``b_i = 2i+1``)."""
        cross = [0] * half_order
        for u, v in edges:
            _check_vertex(u, 2 * half_order)
            _check_vertex(v, 2 * half_order)
            if is_w(u) == is_w(v):
                raise DomainError(f"edge ({u}, {v}) does not join W to B")
            w, b = (u, v) if is_w(u) else (v, u)
            i, j = pair_of(b), pair_of(w)
            if i != j:
                cross[i] |= 1 << j
        return cls(half_order, tuple(cross))

    @property
    def nu(self) -> int:
        return 2 * self.half_order

    @property
    def vertices(self) -> range:
        return range(self.nu)

    @property
    def w_vertices(self) -> list[int]:
        return [w_vertex(i) for i in range(self.half_order)]

    @property
    def b_vertices(self) -> list[int]:
        return [b_vertex(i) for i in range(self.half_order)]

    @property
    def matching(self) -> list[tuple[int, int]]:
        return [(w_vertex(i), b_vertex(i)) for i in range(self.half_order)]

    @cached_property
    def _w_masks(self) -> tuple[int, ...]:
        # w_masks[j] has bit i set iff w_j ~ b_i (i != j)
        res = [0] * self.half_order
        for i, mask in enumerate(self.cross):
            for j in iter_bits(mask):
                res[j] |= 1 << i
        return tuple(res)

    @property
    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(w, b)`` vertex pairs, matching edges included."""
        out = [(w_vertex(i), b_vertex(i)) for i in range(self.half_order)]
        for i, mask in enumerate(self.cross):
            out.extend((w_vertex(j), b_vertex(i)) for j in iter_bits(mask))
        return sorted(out)

    def has_edge(self, u: int, v: int) -> bool:
        _check_vertex(u, self.nu)
        _check_vertex(v, self.nu)
        if is_w(u) == is_w(v):
            return False
        w, b = (u, v) if is_w(u) else (v, u)
        i, j = pair_of(b), pair_of(w)
        return i == j or bool(self.cross[i] >> j & 1)

    def is_matching_edge(self, u: int, v: int) -> bool:
        return u ^ 1 == v

    def neighbors(self, v: int) -> list[int]:
        _check_vertex(v, self.nu)
        i = pair_of(v)
        if is_w(v):
            return sorted([b_vertex(i)] + [b_vertex(k) for k in iter_bits(self._w_masks[i])])
        return sorted([w_vertex(i)] + [w_vertex(k) for k in iter_bits(self.cross[i])])

    def degree(self, v: int) -> int:
        _check_vertex(v, self.nu)
        i = pair_of(v)
        mask = self._w_masks[i] if is_w(v) else self.cross[i]
        return 1 + popcount(mask)

    def induced(self, vertices: Iterable[int]) -> Induced:
        """Subgraph on an M-closed vertex set; pairs keep their relative order."""
        keep = set(vertices)
        for v in keep:
            _check_vertex(v, self.nu)
            if partner(v) not in keep:
                raise DomainError(f"vertex set is not M-closed: {v} without its partner")
        pairs = sorted({pair_of(v) for v in keep})
        index = {old: new for new, old in enumerate(pairs)}
        cross = []
        for old in pairs:
            mask = 0
            for j in iter_bits(self.cross[old]):
                if j in index:
                    mask |= 1 << index[j]
            cross.append(mask)
        mapping = []
        for old in pairs:
            mapping.extend((w_vertex(old), b_vertex(old)))
        return Induced(BipartiteGraphWithMatching(len(pairs), tuple(cross)), tuple(mapping))

    def swap_sides(self) -> "BipartiteGraphWithMatching":
        """Exchange the roles of W and B (the contraction becomes its converse)."""
        return BipartiteGraphWithMatching(self.half_order, self._w_masks)

    def relabel_pairs(self, perm: Sequence[int]) -> "BipartiteGraphWithMatching":
        """Rename matching pair ``i`` to ``perm[i]``."""
        if sorted(perm) != list(range(self.half_order)):
            raise DomainError("relabel needs a permutation of the matching pairs")
        cross = [0] * self.half_order
        for i, mask in enumerate(self.cross):
            for j in iter_bits(mask):
                cross[perm[i]] |= 1 << perm[j]
        return BipartiteGraphWithMatching(self.half_order, tuple(cross))

    def __repr__(self) -> str:
        return f"BipartiteGraphWithMatching(n={self.half_order}, edges={self.edges})"


# ---------------------------------------------------------------------------
# Alternating cycles and closed alternating paths
# ---------------------------------------------------------------------------


def is_alternating_cycle(g: BipartiteGraphWithMatching, seq: Sequence[int]) -> bool:
    """Independent validator working only from raw adjacency queries."""
    k = len(seq)
    if k < 4 or k % 2 or len(set(seq)) != k:
        return False
    if any(not 0 <= v < g.nu for v in seq):
        return False
    in_m = []
    for t in range(k):
        u, v = seq[t], seq[(t + 1) % k]
        if is_w(u) == is_w(v) or not g.has_edge(u, v):
            return False
        in_m.append(g.is_matching_edge(u, v))
    return all(in_m[t] != in_m[(t + 1) % k] for t in range(k))


def is_closed_alternating_path(g: BipartiteGraphWithMatching, seq: Sequence[int]) -> bool:
    """Path starting and ending with matching edges, alternating in between."""
    k = len(seq)
    if k < 2 or k % 2 or len(set(seq)) != k:
        return False
    if any(not 0 <= v < g.nu for v in seq):
        return False
    for t in range(k - 1):
        u, v = seq[t], seq[t + 1]
        if not g.has_edge(u, v):
            return False
        if g.is_matching_edge(u, v) != (t % 2 == 0):
            return False
    return True


def _pairs_from_sequence(seq: Sequence[int]) -> tuple[int, ...] | None:
    """Read a sequence in the direction where matching edges go W -> B."""
    k = len(seq)
    if k % 2:
        return None
    for start in (0, 1):
        ok = all(seq[(start + t) % k] ^ 1 == seq[(start + t + 1) % k] for t in range(0, k, 2))
        if not ok:
            continue
        rot = [seq[(start + t) % k] for t in range(k)]
        if is_w(rot[0]):
            return tuple(pair_of(rot[t]) for t in range(0, k, 2))
        rev = rot[::-1]
        return tuple(pair_of(rev[t]) for t in range(0, k, 2))
    return None


@dataclass(frozen=True)
class AlternatingCycle:
    """M-alternating cycle stored as the cyclic sequence of matching pairs.

    The vertex sequence is ``w_{p0} b_{p0} w_{p1} b_{p1} ...``, so position
    ``2i`` is the W vertex and every even offset starts a matching edge.
    """

    pairs: tuple[int, ...]

    @classmethod
    def from_sequence(cls, g: BipartiteGraphWithMatching, seq: Sequence[int]) -> "AlternatingCycle":
        if not is_alternating_cycle(g, seq):
            raise DomainError(f"not an M-alternating cycle: {list(seq)}")
        pairs = _pairs_from_sequence(seq)
        assert pairs is not None
        return cls(pairs)

    @classmethod
    def from_pairs(cls, g: BipartiteGraphWithMatching, pairs: Sequence[int]) -> "AlternatingCycle":
        cyc = cls(tuple(pairs))
        if not is_alternating_cycle(g, cyc.sequence):
            raise DomainError(f"pairs {list(pairs)} do not form an M-alternating cycle")
        return cyc

    @property
    def sequence(self) -> list[int]:
        out = []
        for p in self.pairs:
            out.extend((w_vertex(p), b_vertex(p)))
        return out

    @property
    def m_edge_offsets(self) -> list[int]:
        return list(range(0, 2 * len(self.pairs), 2))

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.sequence)

    def __len__(self) -> int:
        return 2 * len(self.pairs)


@dataclass(frozen=True)
class AlternatingPath:
    """Closed M-alternating path ``w_{p0} b_{p0} ... w_{pk} b_{pk}``."""

    pairs: tuple[int, ...]

    @classmethod
    def from_sequence(cls, g: BipartiteGraphWithMatching, seq: Sequence[int]) -> "AlternatingPath":
        seq = list(seq)
        if seq and not is_w(seq[0]):
            seq.reverse()
        if not is_closed_alternating_path(g, seq):
            raise DomainError(f"not a closed M-alternating path: {seq}")
        return cls(tuple(pair_of(seq[t]) for t in range(0, len(seq), 2)))

    @classmethod
    def from_pairs(cls, g: BipartiteGraphWithMatching, pairs: Sequence[int]) -> "AlternatingPath":
        path = cls(tuple(pairs))
        if not is_closed_alternating_path(g, path.sequence):
            raise DomainError(f"pairs {list(pairs)} do not form a closed M-alternating path")
        return path

    @property
    def sequence(self) -> list[int]:
        out = []
        for p in self.pairs:
            out.extend((w_vertex(p), b_vertex(p)))
        return out

    @property
    def w_end(self) -> int:
        return w_vertex(self.pairs[0])

    @property
    def b_end(self) -> int:
        return b_vertex(self.pairs[-1])

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.sequence)

    def __len__(self) -> int:
        return 2 * len(self.pairs)


# ---------------------------------------------------------------------------
# Canonical codes
# ---------------------------------------------------------------------------

_KIND_DIGRAPH = b"D"
_KIND_GRAPH = b"G"
_KIND_MATCHED = b"M"


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-class key: kind byte, order byte, canonical adjacency bits."""

    data: bytes = field(compare=True)

    def hex(self) -> str:
        return self.data.hex()

    @classmethod
    def fromhex(cls, text: str) -> "CanonicalCode":
        try:
            return cls(bytes.fromhex(text))
        except ValueError as exc:
            raise DomainError(f"bad canonical code hex: {text!r}") from exc

    @property
    def kind(self) -> str:
        return self.data[:1].decode("ascii")

    @property
    def order(self) -> int:
        return self.data[1]

    def graph(self) -> "Digraph | Graph | BipartiteGraphWithMatching":
        """Decode the canonical representative."""
        n = self.order
        bits = int.from_bytes(self.data[2:], "big")
        out = [0] * n
        top = n * n - 1
        for u in range(n):
            for v in range(n):
                if bits >> (top - (u * n + v)) & 1:
                    out[u] |= 1 << v
        kind = self.data[:1]
        if kind == _KIND_DIGRAPH:
            return Digraph(n, tuple(out))
        if kind == _KIND_GRAPH:
            return Graph(n, tuple(out))
        if kind == _KIND_MATCHED:
            return BipartiteGraphWithMatching(n, tuple(out))
        raise DomainError(f"unknown canonical code kind {kind!r}")


def _refine(n: int, out: Sequence[int], inn: Sequence[int], colors: list[int]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            so = tuple(sorted(colors[u] for u in iter_bits(out[v])))
            si = tuple(sorted(colors[u] for u in iter_bits(inn[v])))
            sigs.append((colors[v], so, si))
        rank = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncolors:
            return colors
        ncolors = len(rank)


def _twins(u: int, v: int, out: Sequence[int], inn: Sequence[int]) -> bool:
    bu, bv = 1 << u, 1 << v
    if bool(out[u] & bv) != bool(out[v] & bu):
        return False
    return (out[u] & ~bv) == (out[v] & ~bu) and (inn[u] & ~bv) == (inn[v] & ~bu)


def _leaf_code(n: int, out: Sequence[int], colors: Sequence[int]) -> int:
    code = 0
    top = n * n - 1
    for u in range(n):
        lu = colors[u] * n
        for v in iter_bits(out[u]):
            code |= 1 << (top - (lu + colors[v]))
    return code


def _canonical_int(n: int, out: Sequence[int], inn: Sequence[int]) -> int:
    """Minimal adjacency code over labelings reachable by individualization-refinement.

    The search tree depends only on isomorphism-invariant data, so the minimum
    is a canonical form. Branches on twin vertices are pruned (swapping twins
    is an automorphism fixing everything else).
    """
    if n == 0:
        return 0
    init = [(popcount(out[v]), popcount(inn[v]), popcount(out[v] & inn[v])) for v in range(n)]
    rank = {s: r for r, s in enumerate(sorted(set(init)))}
    best: list[int | None] = [None]

    def search(colors: list[int]) -> None:
        colors = _refine(n, out, inn, colors)
        counts: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            counts.setdefault(c, []).append(v)
        target = None
        for c in sorted(counts):
            if len(counts[c]) > 1:
                target = counts[c]
                break
        if target is None:
            code = _leaf_code(n, out, colors)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        reps: list[int] = []
        for v in target:
            if not any(_twins(v, r, out, inn) for r in reps):
                reps.append(v)
        for v in reps:
            search([2 * c + (0 if u == v else 1) for u, c in enumerate(colors)])

    search([rank[s] for s in init])
    assert best[0] is not None
    return best[0]


def _pack(kind: bytes, n: int, code: int) -> CanonicalCode:
    nbytes = (n * n + 7) // 8
    return CanonicalCode(kind + bytes([n]) + code.to_bytes(nbytes, "big"))


AnyGraph = Union[Digraph, Graph, BipartiteGraphWithMatching]


def canonical_code(g: AnyGraph, cap: int = DEFAULT_CANON_CAP) -> CanonicalCode:
    """Canonical code; equal for two values iff they are isomorphic.

    Matched bipartite values are compared up to isomorphisms mapping M to M,
    possibly exchanging W and B.
    """
    if isinstance(g, Digraph):
        n = g.order
        if n > cap:
            raise CapabilityError(f"order {n} above canonicalization cap {cap}")
        return _pack(_KIND_DIGRAPH, n, _canonical_int(n, g.out_masks, g.in_masks))
    if isinstance(g, Graph):
        n = g.order
        if n > cap:
            raise CapabilityError(f"order {n} above canonicalization cap {cap}")
        return _pack(_KIND_GRAPH, n, _canonical_int(n, g.adj_masks, g.adj_masks))
    if isinstance(g, BipartiteGraphWithMatching):
        n = g.half_order
        if n > cap:
            raise CapabilityError(f"{n} matching pairs above canonicalization cap {cap}")
        fwd = _canonical_int(n, g.cross, g._w_masks)
        rev = _canonical_int(n, g._w_masks, g.cross)
        return _pack(_KIND_MATCHED, n, min(fwd, rev))
    raise DomainError(f"cannot canonicalize {type(g).__name__}")


def degree_out(d: Digraph, v: int) -> int:
    return d.out_degree(v)


def degree_in(d: Digraph, v: int) -> int:
    return d.in_degree(v)


def induced_subgraph(g: AnyGraph, vertices: Iterable[int]) -> Induced:
    return g.induced(vertices)
