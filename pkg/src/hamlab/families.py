"""Exceptional families: constructors, tags and recognizers.

Vertex layouts used by the constructors:

* ``D1(n, m)``: cut vertex 0, cliques ``{0..n}`` and ``{0, n+1..n+m}``.
* ``D2(n, H)``: independent vertices ``0..n``, inner digraph on ``n+1..2n``.
* ``D3(n, fwd, bwd)``: ``a=0, c=1, x=2, y=3`` and the complete core
  ``4..n+3``. Base arcs ``x<->y, x->a, a->y, y->c, c->x``; the core is
  doubly joined to ``a`` and ``c``; ``fwd`` adds ``a->c``, ``bwd`` adds ``c->a``.
* ``G1``/``G2``/``G3`` contract exactly onto ``D1``/``D2``/``D3`` (for ``G3``
  the options swap: ``contract(G3(n, o0, o1)) == D3(n, o1, o0)``).

Recognizers propose a tag from structure and accept it only if the rebuilt
graph has the same canonical code as the input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from hamlab.codec import parse_digraph6
from hamlab.correspondence import contract, expand
from hamlab.errors import CapabilityError, DomainError
from hamlab.graph_core import (
    BipartiteGraphWithMatching,
    CanonicalCode,
    Digraph,
    Graph,
    canonical_code,
    iter_bits,
    popcount,
)

RECOGNITION_CAP = 16

# Order-7 exception frozen from verifier.derive_g4 (canonical representative).
# 3-regular, isomorphic to its converse.
D4_DIGRAPH6 = "&FIqS[Wskw?"

DIRECTED_KINDS = ("D1", "D2", "D3", "D4", "D1'", "D3'")
BIPARTITE_KINDS = ("G1", "G2", "G3", "G4")
UNDIRECTED_KINDS = ("G5", "G6")
_INNER_KINDS = {"D2": "D", "G2": "M", "G6": "G"}


@dataclass(frozen=True)
class FamilyTag:
    kind: str
    n: int | None = None
    m: int | None = None
    inner: str | None = None  # canonical code hex of the inner graph
    opts: tuple[bool, bool] | None = None

    def __post_init__(self) -> None:
        k = self.kind
        if k not in DIRECTED_KINDS + BIPARTITE_KINDS + UNDIRECTED_KINDS:
            raise DomainError(f"unknown family {k!r}")
        if k in ("D4", "G4"):
            return
        if k == "D3'":
            if self.opts is None:
                raise DomainError("D3' needs its two options")
            return
        if self.n is None or self.n < 1:
            raise DomainError(f"{k} needs n >= 1")
        if k in ("D1", "G1", "G5") and (self.m is None or self.m < 1):
            raise DomainError(f"{k} needs m >= 1")
        if k in ("D3", "G3") and self.opts is None:
            raise DomainError(f"{k} needs its two options")
        if k in _INNER_KINDS:
            if self.inner is None:
                raise DomainError(f"{k} needs an inner graph")
            code = CanonicalCode.fromhex(self.inner)
            if code.kind != _INNER_KINDS[k] or code.order != self.n:
                raise DomainError(f"{k} inner graph must be a {_INNER_KINDS[k]}-code of order {self.n}")

    @property
    def label(self) -> str:
        k = self.kind
        if k in ("D4", "G4"):
            return k
        if k == "D1'":
            return f"D1'({self.n})"
        if k == "D3'":
            return f"D3'({int(self.opts[0])},{int(self.opts[1])})"
        if k in ("D1", "G1", "G5"):
            return f"{k}({self.n},{self.m})"
        if k in _INNER_KINDS:
            return f"{k}({self.n},{self.inner})"
        return f"{k}({self.n},{int(self.opts[0])},{int(self.opts[1])})"

    def __str__(self) -> str:
        return self.label


_LABEL = re.compile(r"^(D1'|D3'|D[1-4]|G[1-6])(?:\(([^)]*)\))?$")


def parse_tag(text: str) -> FamilyTag:
    """Inverse of ``FamilyTag.label``."""
    match = _LABEL.match(text.strip())
    if not match:
        raise DomainError(f"malformed family tag {text!r}")
    kind, args = match.group(1), match.group(2)
    parts = [] if args is None else [a.strip() for a in args.split(",")]
    try:
        if kind in ("D4", "G4"):
            if parts:
                raise ValueError
            return FamilyTag(kind)
        if kind == "D1'":
            (n,) = parts
            return FamilyTag(kind, int(n))
        if kind == "D3'":
            f, b = parts
            return FamilyTag(kind, opts=(_flag(f), _flag(b)))
        if kind in ("D1", "G1", "G5"):
            n, m = parts
            return FamilyTag(kind, int(n), int(m))
        if kind in _INNER_KINDS:
            n, inner = parts
            return FamilyTag(kind, int(n), inner=inner)
        n, f, b = parts
        return FamilyTag(kind, int(n), opts=(_flag(f), _flag(b)))
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed family tag {text!r}") from exc


def _flag(text: str) -> bool:
    if text in ("1", "true", "True"):
        return True
    if text in ("0", "false", "False"):
        return False
    raise ValueError(text)


def inner_tag(kind: str, n: int, inner: Digraph | Graph | BipartiteGraphWithMatching) -> FamilyTag:
    """Tag for D2/G2/G6 from an explicit inner graph."""
    return FamilyTag(kind, n, inner=canonical_code(inner, RECOGNITION_CAP).hex())


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def _positive(**params: int) -> None:
    for name, val in params.items():
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise DomainError(f"{name} must be a positive integer, got {val!r}")


def _complete_on(out: list[int], vertices: list[int]) -> None:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    for v in vertices:
        out[v] |= mask & ~(1 << v)


def d1(n: int, m: int) -> Digraph:
    _positive(n=n, m=m)
    out = [0] * (n + m + 1)
    _complete_on(out, list(range(n + 1)))
    _complete_on(out, [0] + list(range(n + 1, n + m + 1)))
    return Digraph(n + m + 1, tuple(out))


def d2(inner: Digraph) -> Digraph:
    _positive(n=inner.order)
    n = inner.order
    total = 2 * n + 1
    out = [0] * total
    indep = (1 << (n + 1)) - 1
    core = ((1 << total) - 1) & ~indep
    for v in range(n + 1):
        out[v] = core
    for j in range(n):
        out[n + 1 + j] = indep | (inner.out_masks[j] << (n + 1))
    return Digraph(total, tuple(out))


def d3(n: int, fwd: bool, bwd: bool) -> Digraph:
    _positive(n=n)
    a, c, x, y = 0, 1, 2, 3
    arcs = [(x, y), (y, x), (x, a), (a, y), (y, c), (c, x)]
    core = list(range(4, n + 4))
    for k in core:
        for v in (a, c):
            arcs += [(k, v), (v, k)]
        arcs += [(k, j) for j in core if j != k]
    if fwd:
        arcs.append((a, c))
    if bwd:
        arcs.append((c, a))
    return Digraph.from_arcs(n + 4, arcs)


def d4() -> Digraph:
    return parse_digraph6(D4_DIGRAPH6)


def g1(n: int, m: int) -> BipartiteGraphWithMatching:
    _positive(n=n, m=m)
    first = list(range(n + 1))
    second = [0] + list(range(n + 1, n + m + 1))
    edges = [(w, b) for block in (first, second) for w in block for b in block]
    total = n + m + 1
    return BipartiteGraphWithMatching.from_edges(total, edges, [(i, i) for i in range(total)])


def g2(inner: BipartiteGraphWithMatching) -> BipartiteGraphWithMatching:
    _positive(n=inner.half_order)
    n = inner.half_order
    total = 2 * n + 1
    k2 = range(n + 1)
    side = range(n + 1, total)
    edges = [(i, i) for i in k2]
    edges += [(n + 1 + w // 2, n + 1 + b // 2) for w, b in inner.edges]
    edges += [(w, b) for w in side for b in k2]
    edges += [(w, b) for w in k2 for b in side]
    return BipartiteGraphWithMatching.from_edges(total, edges, [(i, i) for i in range(total)])


def g3(n: int, opt0: bool, opt1: bool) -> BipartiteGraphWithMatching:
    _positive(n=n)
    # W indices: u0=0, u4=1, v0=2, u2=3; B indices: u1=0, u5=1, v1=2, u3=3.
    edges = [(3, 0), (3, 3), (1, 3), (3, 2), (2, 3), (2, 2), (2, 1), (0, 2), (0, 0), (1, 1)]
    core = range(4, n + 4)
    edges += [(i, j) for i in core for j in core]
    edges += [(w, k) for w in (0, 1) for k in core]
    edges += [(k, b) for k in core for b in (0, 1)]
    if opt0:
        edges.append((0, 1))
    if opt1:
        edges.append((1, 0))
    total = n + 4
    return BipartiteGraphWithMatching.from_edges(total, edges, [(i, i) for i in range(total)])


def g4() -> BipartiteGraphWithMatching:
    return expand(d4())


def g5(n: int, m: int) -> Graph:
    _positive(n=n, m=m)
    edges = [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]
    second = [0] + list(range(n + 1, n + m + 1))
    edges += [(a, b) for i, a in enumerate(second) for b in second[i + 1 :]]
    return Graph.from_edges(n + m + 1, edges)


def g6(inner: Graph) -> Graph:
    _positive(n=inner.order)
    n = inner.order
    edges = [(i, n + 1 + j) for i in range(n + 1) for j in range(n)]
    edges += [(n + 1 + u, n + 1 + v) for u, v in inner.edges]
    return Graph.from_edges(2 * n + 1, edges)


def _inner(tag: FamilyTag):
    return CanonicalCode.fromhex(tag.inner).graph()


def build_directed(tag: FamilyTag) -> Digraph:
    k = tag.kind
    if k == "D1":
        return d1(tag.n, tag.m)
    if k == "D1'":
        return d1(tag.n, tag.n)
    if k == "D2":
        return d2(_inner(tag))
    if k == "D3":
        return d3(tag.n, *tag.opts)
    if k == "D3'":
        return d3(1, *tag.opts)
    if k == "D4":
        return d4()
    raise DomainError(f"{tag.label} is not a digraph family")


def build_bipartite(tag: FamilyTag) -> BipartiteGraphWithMatching:
    k = tag.kind
    if k == "G1":
        return g1(tag.n, tag.m)
    if k == "G2":
        return g2(_inner(tag))
    if k == "G3":
        return g3(tag.n, *tag.opts)
    if k == "G4":
        return g4()
    raise DomainError(f"{tag.label} is not a matched bipartite family")


def build_undirected(tag: FamilyTag) -> Graph:
    if tag.kind == "G5":
        return g5(tag.n, tag.m)
    if tag.kind == "G6":
        return g6(_inner(tag))
    raise DomainError(f"{tag.label} is not an undirected family")


def build(tag: FamilyTag) -> Digraph | Graph | BipartiteGraphWithMatching:
    if tag.kind in DIRECTED_KINDS:
        return build_directed(tag)
    if tag.kind in BIPARTITE_KINDS:
        return build_bipartite(tag)
    return build_undirected(tag)


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


def _components(adj: list[int], allowed: int) -> list[int]:
    comps = []
    left = allowed
    while left:
        seen = left & -left
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        comps.append(seen)
        left &= ~seen
    return comps


def _clique_split(adj: list[int], n: int, complete) -> Iterator[tuple[int, int]]:
    """Sizes of the two blocks for every cut vertex splitting into two cliques."""
    full = (1 << n) - 1
    for c in range(n):
        comps = _components(adj, full & ~(1 << c))
        if len(comps) != 2:
            continue
        if all(complete(comp | (1 << c)) for comp in comps):
            a, b = sorted(popcount(comp) for comp in comps)
            yield a, b


def _directed_candidates(d: Digraph) -> Iterator[FamilyTag]:
    n = d.order
    out, inn = d.out_masks, d.in_masks
    weak = [out[v] | inn[v] for v in range(n)]

    def complete(mask: int) -> bool:
        return all((out[v] & mask) == mask & ~(1 << v) for v in iter_bits(mask))

    for a, b in _clique_split(weak, n, complete):
        yield FamilyTag("D1", a, b)
    if n % 2 == 1 and n >= 3:
        k = (n - 1) // 2
        for v in range(n):
            if out[v] != inn[v] or popcount(out[v]) != k:
                continue
            core = out[v]
            indep = ((1 << n) - 1) & ~core
            if all(out[s] == core and inn[s] == core for s in iter_bits(indep)):
                sub = d.induced(list(iter_bits(core))).graph
                yield FamilyTag("D2", k, inner=canonical_code(sub, RECOGNITION_CAP).hex())
                break
    if n >= 5:
        for x in range(n):
            if popcount(out[x]) != 2 or popcount(inn[x]) != 2:
                continue
            both = out[x] & inn[x]
            if popcount(both) != 1:
                continue
            y = both.bit_length() - 1
            a = (out[x] & ~both).bit_length() - 1
            c = (inn[x] & ~both).bit_length() - 1
            if a == c:
                continue
            yield FamilyTag("D3", n - 4, opts=(d.has_arc(a, c), d.has_arc(c, a)))
    if n == 7:
        yield FamilyTag("D4")


def _matches(tag: FamilyTag, code: CanonicalCode) -> bool:
    return canonical_code(build(tag), RECOGNITION_CAP) == code


def recognize_directed_all(d: Digraph) -> list[FamilyTag]:
    """Every unprimed family tag that rebuilds to a graph isomorphic to ``d``."""
    if d.order > RECOGNITION_CAP:
        raise CapabilityError(f"order {d.order} above recognition cap {RECOGNITION_CAP}")
    code = canonical_code(d, RECOGNITION_CAP)
    found: list[FamilyTag] = []
    for tag in _directed_candidates(d):
        if tag not in found and _matches(tag, code):
            found.append(tag)
    return found


def _primed(tag: FamilyTag) -> FamilyTag | None:
    if tag.kind == "D1":
        return FamilyTag("D1'", tag.n) if tag.n == tag.m else None
    if tag.kind == "D3":
        return FamilyTag("D3'", opts=tag.opts) if tag.n == 1 else None
    return tag


def recognize_directed(d: Digraph, variant: str = "theorem11") -> FamilyTag | None:
    """First matching family by precedence D1 < D2 < D3 < D4.

    ``variant="theorem14"`` restricts to the primed subfamilies ``D1'(n)``
    (``n = m``), ``D2``, ``D3'`` (``n = 1``) and ``D4``.
    """
    for tag in recognize_directed_all(d):
        if variant == "theorem14":
            tag = _primed(tag)
        if tag is not None:
            return tag
    return None


_TO_BIPARTITE = {"D1": "G1", "D3": "G3", "D4": "G4"}


def _bipartite_tag(tag: FamilyTag) -> FamilyTag:
    if tag.kind == "D2":
        inner = CanonicalCode.fromhex(tag.inner).graph()
        return inner_tag("G2", tag.n, expand(inner))
    if tag.kind == "D3":
        fwd, bwd = tag.opts
        return FamilyTag("G3", tag.n, opts=(bwd, fwd))
    return FamilyTag(_TO_BIPARTITE[tag.kind], tag.n, tag.m)


def recognize_bipartite(g: BipartiteGraphWithMatching) -> FamilyTag | None:
    """Recognize through the contraction (or its converse, which is the
    contraction after swapping sides); the matching is part of the check."""
    code = canonical_code(g, RECOGNITION_CAP)
    d = contract(g)
    for cand in (d, d.converse()):
        for tag in recognize_directed_all(cand):
            btag = _bipartite_tag(tag)
            if canonical_code(build_bipartite(btag), RECOGNITION_CAP) == code:
                return btag
    return None


def recognize_undirected(g: Graph) -> FamilyTag | None:
    """G5 before G6."""
    n = g.order
    if n > RECOGNITION_CAP:
        raise CapabilityError(f"order {n} above recognition cap {RECOGNITION_CAP}")
    adj = list(g.adj_masks)
    code = canonical_code(g, RECOGNITION_CAP)

    def complete(mask: int) -> bool:
        return all((adj[v] & mask) == mask & ~(1 << v) for v in iter_bits(mask))

    for a, b in _clique_split(adj, n, complete):
        tag = FamilyTag("G5", a, b)
        if canonical_code(build_undirected(tag), RECOGNITION_CAP) == code:
            return tag
    if n % 2 == 1 and n >= 3:
        k = (n - 1) // 2
        for v in range(n):
            if popcount(adj[v]) != k:
                continue
            core = adj[v]
            indep = ((1 << n) - 1) & ~core
            if all(adj[s] == core for s in iter_bits(indep)):
                sub = g.induced(list(iter_bits(core))).graph
                tag = FamilyTag("G6", k, inner=canonical_code(sub, RECOGNITION_CAP).hex())
                if canonical_code(build_undirected(tag), RECOGNITION_CAP) == code:
                    return tag
    return None


def recognize(g: Digraph | Graph | BipartiteGraphWithMatching, variant: str = "theorem11") -> FamilyTag | None:
    if isinstance(g, Digraph):
        return recognize_directed(g, variant)
    if isinstance(g, BipartiteGraphWithMatching):
        return recognize_bipartite(g)
    return recognize_undirected(g)
