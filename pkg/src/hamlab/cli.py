"""Command-line interface: one graph per line in, JSON lines or codec lines out.

Exit status: 0 on success, 1 on domain or capability errors, 2 on usage
errors and malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterator, TextIO

from hamlab import codec
from hamlab.conditions import (
    DIGRAPH_MODES,
    bipartite_slack,
    digraph_slack,
    undirected_slack,
)
from hamlab.correspondence import contract, double_undirected, expand
from hamlab.errors import CapabilityError, DomainError, ParseError, SerializationError
from hamlab.families import (
    FamilyTag,
    build,
    inner_tag,
    recognize_bipartite,
    recognize_directed,
    recognize_undirected,
)
from hamlab.graph_core import BipartiteGraphWithMatching, Digraph, Graph, is_w
from hamlab.hamilton import (
    analyze_structure,
    constructive_solve,
    find_alternating_hamilton_cycle,
    find_hamilton_cycle,
)
from hamlab.verifier import derive_g4, merge_reports, read_report_jsonl, verify_parallel

_CONDITIONS = {
    "woodall": "woodall",
    "all-pairs": "all-pairs",
    "all-pairs-distinct": "all-pairs-distinct",
    "ghouila": "ghouila-houri",
    "semidegree": "semi-degree",
    "las-vergnas": "las-vergnas",
    "ore": "ore",
    "dirac": "dirac",
}
_THEOREMS = {"11": "theorem11", "12": "theorem12", "14": "theorem14", "cor": "corollary"}
_FAMILIES = ("d1", "d2", "d3", "d4", "d1'", "d3'", "g1", "g2", "g3", "g4", "g5", "g6")


class UsageError(Exception):
    pass


def _lines(path: str) -> Iterator[str]:
    stream = sys.stdin if path == "-" else open(path, encoding="ascii")
    try:
        for raw in stream:
            line = raw.strip()
            if line:
                yield line
    finally:
        if stream is not sys.stdin:
            stream.close()


def _emit(out: TextIO, obj) -> None:
    out.write((obj if isinstance(obj, str) else json.dumps(obj, separators=(",", ":"))) + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def bipartite_from_graph(g: Graph) -> BipartiteGraphWithMatching:
    """Read a graph6 graph as matched bipartite: ``w_i = 2i``, ``b_i = 2i+1``,
    matching ``{2i, 2i+1}``."""
    if g.order % 2:
        raise DomainError("bipartite graph6 input needs an even order")
    for u, v in g.edges:
        if is_w(u) == is_w(v):
            raise DomainError(f"edge ({u}, {v}) joins two vertices of the same parity")
    for i in range(g.order // 2):
        if not g.has_edge(2 * i, 2 * i + 1):
            raise DomainError(f"matching edge ({2 * i}, {2 * i + 1}) missing")
    return BipartiteGraphWithMatching.from_vertex_edges(g.order // 2, g.edges)


def graph_from_bipartite(g: BipartiteGraphWithMatching) -> Graph:
    return Graph.from_edges(g.nu, g.edges)


def _read(line: str, bipartite: bool):
    obj = codec.parse_line(line)
    if bipartite:
        if isinstance(obj, Digraph):
            return expand(obj)
        return bipartite_from_graph(obj)
    return obj


def _flags(text: str | None) -> tuple[bool, bool]:
    if text is None:
        return (False, False)
    parts = [p.strip().lower() for p in text.split(",")]
    if len(parts) != 2 or any(p not in ("0", "1", "true", "false") for p in parts):
        raise UsageError("--opts takes two flags, e.g. 1,0")
    return (parts[0] in ("1", "true"), parts[1] in ("1", "true"))


def _emit_graph(out: TextIO, g) -> None:
    if isinstance(g, Digraph):
        _emit(out, codec.emit_digraph6(g))
    elif isinstance(g, BipartiteGraphWithMatching):
        _emit(out, codec.emit_bipartite(g))
    else:
        _emit(out, codec.emit_graph6(g))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_check(args, out: TextIO) -> int:
    mode = _CONDITIONS[args.condition]
    count = ok = 0
    for line in _lines(args.input):
        if mode == "las-vergnas":
            rep = bipartite_slack(_read(line, True))
        else:
            g = codec.parse_line(line)
            if mode in DIGRAPH_MODES:
                if not isinstance(g, Digraph):
                    raise DomainError(f"{args.condition} needs digraph6 input")
                rep = digraph_slack(g, mode)
            else:
                if not isinstance(g, Graph):
                    raise DomainError(f"{args.condition} needs graph6 input")
                rep = undirected_slack(g, mode)
        passed = rep.satisfies(args.min_slack)
        count += 1
        ok += passed
        _emit(
            out,
            {
                "condition": args.condition,
                "threshold": rep.threshold,
                "slack": "vacuous" if rep.slack is None else rep.slack,
                "satisfies": passed,
                "witnesses": [list(w) for w in rep.witnesses],
            },
        )
    _note(f"{ok}/{count} inputs satisfy {args.condition} with slack >= {args.min_slack}")
    return 0


def cmd_solve(args, out: TextIO) -> int:
    found = 0
    total = 0
    for line in _lines(args.input):
        total += 1
        g = _read(line, args.bipartite)
        record: dict = {}
        if isinstance(g, BipartiteGraphWithMatching):
            if args.constructive:
                cyc, trace = constructive_solve(g)
                record["trace"] = [step.to_dict() for step in trace]
            else:
                cyc = find_alternating_hamilton_cycle(g)
            seq = None if cyc is None else cyc.sequence
        elif isinstance(g, Graph):
            if g.order < 3:
                raise DomainError("undirected Hamilton cycles need order >= 3")
            seq = find_hamilton_cycle(double_undirected(g))
        else:
            seq = find_hamilton_cycle(g)
        if seq is None:
            record = {"hamiltonian": False, "result": "no hamilton cycle", **record}
        else:
            found += 1
            record = {"hamiltonian": True, "result": "hamilton cycle", "cycle": seq, **record}
        _emit(out, record)
    _note(f"{found}/{total} inputs have a hamilton cycle")
    return 0


def cmd_analyze(args, out: TextIO) -> int:
    for line in _lines(args.input):
        rep = analyze_structure(_read(line, True))
        _emit(out, rep.to_dict())
        if rep.status == "analyzed":
            failed = [c.name for c in rep.claims if not c.passed]
            _note(f"case {rep.case}: " + ("all claims pass" if not failed else f"failed {failed}"))
        else:
            _note(rep.status)
    return 0


def _tag_from_args(args) -> FamilyTag:
    fam = args.family.lower()
    kind = fam.upper()
    if fam in ("d2", "g2", "g6"):
        if args.inner is None:
            raise UsageError(f"--family {fam} needs --inner")
        inner = codec.parse_line(args.inner)
        if fam == "d2":
            if not isinstance(inner, Digraph):
                raise DomainError("d2 --inner must be digraph6")
        elif fam == "g2":
            inner = _read(args.inner, True)
        elif not isinstance(inner, Graph):
            raise DomainError("g6 --inner must be graph6")
        n = inner.half_order if isinstance(inner, BipartiteGraphWithMatching) else inner.order
        return inner_tag(kind, n, inner)
    if fam in ("d4", "g4"):
        return FamilyTag(kind)
    if fam == "d3'":
        return FamilyTag(kind, opts=_flags(args.opts))
    if args.n is None:
        raise UsageError(f"--family {fam} needs --n")
    if fam == "d1'":
        return FamilyTag(kind, args.n)
    if fam in ("d3", "g3"):
        return FamilyTag(kind, args.n, opts=_flags(args.opts))
    if args.m is None:
        raise UsageError(f"--family {fam} needs --m")
    return FamilyTag(kind, args.n, args.m)


def cmd_build(args, out: TextIO) -> int:
    tag = _tag_from_args(args)
    _emit_graph(out, build(tag))
    _note(tag.label)
    return 0


def cmd_classify(args, out: TextIO) -> int:
    for line in _lines(args.input):
        g = _read(line, args.bipartite)
        if isinstance(g, BipartiteGraphWithMatching):
            tag = recognize_bipartite(g)
        elif isinstance(g, Digraph):
            tag = recognize_directed(g, _THEOREMS[args.theorem])
        else:
            tag = recognize_undirected(g)
        _emit(out, "none" if tag is None else tag.label)
    return 0


def cmd_convert(args, out: TextIO) -> int:
    for line in _lines(args.input):
        obj = codec.parse_line(line)
        if args.contract:
            if not isinstance(obj, Graph):
                raise DomainError("--contract reads bipartite graph6")
            _emit(out, codec.emit_digraph6(contract(bipartite_from_graph(obj))))
        elif args.expand:
            if not isinstance(obj, Digraph):
                raise DomainError("--expand reads digraph6")
            _emit(out, codec.emit_graph6(graph_from_bipartite(expand(obj))))
        else:
            if not isinstance(obj, Graph):
                raise DomainError("--double reads graph6")
            _emit(out, codec.emit_digraph6(double_undirected(obj)))
    return 0


def cmd_verify(args, out: TextIO) -> int:
    if args.merge:
        reps = []
        for path in args.merge:
            with open(path, encoding="utf-8") as fh:
                reps.extend(read_report_jsonl(fh.read()))
        rep = merge_reports(reps)
    else:
        if args.theorem is None or args.order is None:
            raise UsageError("verify needs --theorem and --order (or --merge)")
        variant = _THEOREMS[args.theorem]
        if args.shard_index is not None:
            if not 0 <= args.shard_index < args.shards:
                raise UsageError("--shard-index must lie in [0, --shards)")
            from hamlab.verifier import verify_main_theorem

            rep = verify_main_theorem(args.order, variant, (args.shard_index, args.shards), args.timing)
        else:
            rep = verify_parallel(args.order, variant, args.shards, args.jobs, args.timing)
    text = rep.to_jsonl()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    classes = rep.exception_classes()
    _note(
        f"{rep.variant} order {rep.order}: {rep.condition_satisfying} satisfying, "
        f"{len(rep.exceptions)} exceptions in {len(classes)} classes, "
        f"{len(rep.unrecognized)} unrecognized, "
        + ("certified" if rep.certified else "NOT certified")
    )
    return 0 if rep.certified else 1


def cmd_derive_g4(args, out: TextIO) -> int:
    res = derive_g4(progress=None)
    lines = [codec.emit_bipartite(g) for _, g in res.classes]
    text = "".join(line + "\n" for line in lines)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        out.write(text)
    _note(
        f"{res.candidates} candidates, {res.survivors} survivors, "
        f"{len(res.classes)} isomorphism classes"
    )
    if not res.unique:
        _note("derivation failure: expected exactly one class")
        return 1
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamlab",
        description="Hamilton cycles near the Woodall / Las Vergnas degree-sum thresholds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", nargs="?", default="-", help="input file, one graph per line (default stdin)")

    p = sub.add_parser("check", help="degree-condition slack per input graph")
    p.add_argument("--condition", choices=sorted(_CONDITIONS), default="woodall")
    p.add_argument("--min-slack", type=int, default=0, help="report satisfies = slack >= this")
    with_input(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="exact Hamilton cycle search")
    p.add_argument("--bipartite", action="store_true", help="treat input as matched bipartite")
    p.add_argument("--constructive", action="store_true", help="greedy merge solver with trace (bipartite)")
    with_input(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="structure analysis of a matched bipartite graph")
    with_input(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("build", help="construct a family member")
    p.add_argument("--family", required=True, type=str.lower, choices=_FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--opts", help="two flags for d3/g3/d3', e.g. 1,0")
    p.add_argument("--inner", help="inner graph: digraph6 (d2, g2) or graph6 (g6, or bipartite g2)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("classify", help="print the family tag of each input, or none")
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--theorem", choices=("11", "14"), default="11", help="family set for digraphs")
    with_input(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("convert", help="translate between representations")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--contract", action="store_true", help="bipartite graph6 -> digraph6")
    grp.add_argument("--expand", action="store_true", help="digraph6 -> bipartite graph6")
    grp.add_argument("--double", action="store_true", help="graph6 -> digraph6")
    with_input(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="exhaustive theorem campaign")
    p.add_argument("--theorem", choices=sorted(_THEOREMS))
    p.add_argument("--order", type=int)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--shard-index", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="record wall time (breaks byte reproducibility)")
    p.add_argument("--merge", nargs="+", metavar="REPORT", help="merge shard reports instead of running")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derive-g4", help="constrained search for the order-7 exception")
    p.add_argument("--out")
    p.set_defaults(func=cmd_derive_g4)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    stream = sys.stdout if out is None else out
    if getattr(args, "shards", 1) < 1:
        parser.error("--shards must be >= 1")
    try:
        return args.func(args, stream)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _note(f"hamlab: error: {exc}")
        return 2
    except (ParseError, SerializationError, UnicodeDecodeError) as exc:
        _note(f"hamlab: malformed input: {exc}")
        return 2
    except OSError as exc:
        _note(f"hamlab: {exc}")
        return 2
    except (DomainError, CapabilityError) as exc:
        _note(f"hamlab: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
