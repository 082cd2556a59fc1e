"""graph6 / digraph6 text codecs and the JSONL report record.

Both formats follow the public nauty definitions: an optional ``>>graph6<<`` or
``>>digraph6<<`` header, ``&`` prefix for digraph6, the size field ``N(n)``,
then the adjacency bits in groups of six, each group offset by 63.
digraph6 stores the full matrix row by row; graph6 stores the upper triangle
column by column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from typing import Any

from hamlab.errors import ParseError, SerializationError
from hamlab.graph_core import BipartiteGraphWithMatching, Digraph, Graph

_MIN_CHAR, _MAX_CHAR = 63, 126


def _encode_size(n: int) -> str:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return chr(126) * 2 + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"order {n} too large for graph6/digraph6")


def _decode_size(text: str, pos: int) -> tuple[int, int]:
    """Return ``(n, next_pos)``; ``pos`` indexes the first size byte."""
    if pos >= len(text):
        raise ParseError("missing size field", pos)
    first = ord(text[pos])
    if not _MIN_CHAR <= first <= _MAX_CHAR:
        raise ParseError(f"byte {first} outside 63..126", pos)
    if first < 126:
        return first - 63, pos + 1
    if pos + 1 < len(text) and ord(text[pos + 1]) == 126:
        width, start = 6, pos + 2
    else:
        width, start = 3, pos + 1
    if start + width > len(text):
        raise ParseError("truncated size field", len(text))
    n = 0
    for k in range(width):
        c = ord(text[start + k])
        if not _MIN_CHAR <= c <= _MAX_CHAR:
            raise ParseError(f"byte {c} outside 63..126", start + k)
        n = (n << 6) | (c - 63)
    return n, start + width


def _encode_bits(bits: list[int]) -> str:
    pad = (-len(bits)) % 6
    bits = bits + [0] * pad
    out = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def _decode_bits(text: str, pos: int, nbits: int) -> list[int]:
    ngroups = (nbits + 5) // 6
    payload = text[pos:]
    if len(payload) < ngroups:
        raise ParseError(
            f"truncated payload: need {ngroups} bytes, got {len(payload)}", len(text)
        )
    if len(payload) > ngroups:
        raise ParseError("trailing bytes after payload", pos + ngroups)
    bits: list[int] = []
    for k, ch in enumerate(payload):
        c = ord(ch)
        if not _MIN_CHAR <= c <= _MAX_CHAR:
            raise ParseError(f"byte {c} outside 63..126", pos + k)
        val = c - 63
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    return bits[:nbits]


def _strip(line: str, header: str) -> str:
    text = line.strip()
    if text.startswith(header):
        text = text[len(header) :]
    return text


def parse_digraph6(line: str) -> Digraph:
    text = _strip(line, ">>digraph6<<")
    if not text.startswith("&"):
        raise ParseError("digraph6 line must start with '&'", 0)
    n, pos = _decode_size(text, 1)
    bits = _decode_bits(text, pos, n * n)
    out = [0] * n
    for u in range(n):
        row = u * n
        for v in range(n):
            if bits[row + v]:
                if u == v:
                    raise ParseError(f"loop at vertex {u} is not allowed", pos + (row + v) // 6)
                out[u] |= 1 << v
    return Digraph(n, tuple(out))


def emit_digraph6(d: Digraph) -> str:
    n = d.order
    bits = [(d.out_masks[u] >> v) & 1 for u in range(n) for v in range(n)]
    return "&" + _encode_size(n) + _encode_bits(bits)


def parse_graph6(line: str) -> Graph:
    text = _strip(line, ">>graph6<<")
    if text.startswith("&") or text.startswith(":") or text.startswith(";"):
        raise ParseError("not a graph6 line (digraph6 or sparse6 prefix)", 0)
    n, pos = _decode_size(text, 0)
    bits = _decode_bits(text, pos, n * (n - 1) // 2)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def emit_graph6(g: Graph) -> str:
    n = g.order
    bits = [(g.adj_masks[i] >> j) & 1 for j in range(1, n) for i in range(j)]
    return _encode_size(n) + _encode_bits(bits)


def parse_line(line: str) -> Digraph | Graph:
    """Dispatch on the ``&`` prefix: digraph6 gives a Digraph, graph6 a Graph."""
    text = line.strip()
    if text.startswith("&") or text.startswith(">>digraph6<<"):
        return parse_digraph6(text)
    return parse_graph6(text)


def emit_bipartite(g: BipartiteGraphWithMatching) -> str:
    """Matched bipartite values travel as the digraph6 of their contraction."""
    return emit_digraph6(Digraph(g.half_order, g.cross))


def parse_bipartite(line: str) -> BipartiteGraphWithMatching:
    d = parse_digraph6(line)
    return BipartiteGraphWithMatching(d.order, d.out_masks)


# ---------------------------------------------------------------------------
# JSONL report records
# ---------------------------------------------------------------------------

_JSON_NAMES = {
    "code": "code",
    "order": "order",
    "condition_slack": "conditionSlack",
    "hamiltonian": "hamiltonian",
    "family_tag": "familyTag",
    "shard_id": "shardId",
    "elapsed_micros": "elapsedMicros",
}


@dataclass(frozen=True)
class ReportRecord:
    code: str
    order: int
    condition_slack: int | None
    hamiltonian: bool
    family_tag: str | None
    shard_id: int
    elapsed_micros: int


def _check_record(rec: ReportRecord) -> None:
    checks: dict[str, Any] = {
        "code": str,
        "order": int,
        "hamiltonian": bool,
        "shard_id": int,
        "elapsed_micros": int,
    }
    for name, typ in checks.items():
        val = getattr(rec, name)
        if val is None:
            raise SerializationError(f"missing mandatory field {name}")
        if not isinstance(val, typ) or (typ is int and isinstance(val, bool)):
            raise SerializationError(f"field {name} has type {type(val).__name__}")
    if rec.condition_slack is not None and (
        not isinstance(rec.condition_slack, int) or isinstance(rec.condition_slack, bool)
    ):
        raise SerializationError("conditionSlack must be an integer or null")
    if rec.family_tag is not None and not isinstance(rec.family_tag, str):
        raise SerializationError("familyTag must be a string or null")


def write_report_record(rec: ReportRecord) -> str:
    _check_record(rec)
    payload = {_JSON_NAMES[f.name]: getattr(rec, f.name) for f in fields(ReportRecord)}
    return json.dumps(payload, separators=(",", ":"))


def read_report_record(line: str) -> ReportRecord:
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise SerializationError("record must be a JSON object")
    kwargs = {}
    for f in fields(ReportRecord):
        key = _JSON_NAMES[f.name]
        if key not in payload:
            raise SerializationError(f"missing mandatory field {key}")
        kwargs[f.name] = payload[key]
    rec = ReportRecord(**kwargs)
    _check_record(rec)
    return rec
