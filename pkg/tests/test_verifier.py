from __future__ import annotations

import pytest

from hamlab.errors import CapabilityError, DomainError, SerializationError
from hamlab.graph_core import Digraph, Graph
from hamlab.verifier import (
    derive_g4,
    enumerate_digraphs,
    enumerate_graphs,
    merge_reports,
    read_report_jsonl,
    shard_size,
    verify_main_theorem,
    verify_parallel,
)
from oracles import (
    all_digraph_masks,
    all_graph_masks,
    brute_all_pairs,
    brute_hamiltonian,
    brute_ore,
    brute_undirected_hamiltonian,
    brute_woodall,
)


def test_unfiltered_counts():
    assert sum(1 for _ in enumerate_digraphs(2)) == 4
    assert sum(1 for _ in enumerate_digraphs(3)) == 64
    assert sum(1 for _ in enumerate_graphs(4)) == 64


def test_enumeration_order_is_binary_counting():
    first = [d.out_masks for d in enumerate_digraphs(2)]
    # slot (0, 1) is the high bit
    assert first == [(0, 0), (0, 1), (2, 0), (2, 1)]


def test_shards_partition_the_keyspace():
    everything = {d.out_masks for d in enumerate_digraphs(4)}
    seen: set = set()
    total = 0
    for i in range(5):
        part = {d.out_masks for d in enumerate_digraphs(4, (i, 5))}
        assert not part & seen
        seen |= part
        total += shard_size(12, (i, 5))
    assert seen == everything and total == 4096


@pytest.mark.parametrize("floor", [-2, -1, 0])
def test_pruned_filters_match_post_hoc(floor):
    for n in (3, 4):
        want = set()
        want_ap = set()
        for m in all_digraph_masks(n):
            s = brute_woodall(n, m)
            if s is None or s >= floor:
                want.add(m)
            if brute_all_pairs(n, m) >= floor:
                want_ap.add(m)
        assert {d.out_masks for d in enumerate_digraphs(n, filter="woodall", min_slack=floor)} == want
        assert {d.out_masks for d in enumerate_digraphs(n, filter="all-pairs", min_slack=floor)} == want_ap
    for n in (4, 5):
        want = {m for m in all_graph_masks(n) if (brute_ore(n, m) is None or brute_ore(n, m) >= floor)}
        assert {g.adj_masks for g in enumerate_graphs(n, filter="ore", min_slack=floor)} == want


def test_enumeration_caps():
    with pytest.raises(CapabilityError):
        next(enumerate_digraphs(7))
    with pytest.raises(CapabilityError):
        next(enumerate_graphs(8))
    with pytest.raises(DomainError):
        next(enumerate_digraphs(3, (3, 3)))


def test_theorem11_order_three_against_oracle():
    rep = verify_main_theorem(3, "theorem11")
    masks = [m for m in all_digraph_masks(3) if (brute_woodall(3, m) is None or brute_woodall(3, m) >= -1)]
    assert rep.total_labeled == 64
    assert rep.condition_satisfying == len(masks) == 18
    assert rep.hamiltonian_count == sum(brute_hamiltonian(3, m) for m in masks)
    assert len(rep.exceptions) == 3
    assert set(rep.exception_classes().values()) == {"D1(1,1)"}
    assert rep.certified and rep.conserved and rep.original_violations == 0


def test_corollary_order_four_against_oracle():
    rep = verify_main_theorem(4, "corollary")
    masks = [m for m in all_graph_masks(4) if (brute_ore(4, m) is None or brute_ore(4, m) >= -1)]
    assert rep.condition_satisfying == len(masks)
    assert rep.hamiltonian_count == sum(brute_undirected_hamiltonian(4, m) for m in masks)
    assert rep.certified and rep.conserved
    assert all(tag.startswith(("G5", "G6")) for tag in rep.exception_classes().values())


def test_theorem14_order_four_has_no_exceptions():
    rep = verify_main_theorem(4, "theorem14")
    assert rep.exceptions == [] and rep.certified


def test_reports_are_deterministic():
    a = verify_main_theorem(4, "theorem11").to_jsonl()
    b = verify_main_theorem(4, "theorem11").to_jsonl()
    assert a == b
    assert '"elapsedMicros":0' in a


def test_timing_is_opt_in():
    assert verify_main_theorem(3, "theorem11", timing=True).elapsed_micros > 0


def test_jsonl_round_trip_and_merge():
    whole = verify_main_theorem(4, "theorem11")
    parts = [verify_main_theorem(4, "theorem11", (i, 3)) for i in range(3)]
    text = "".join(p.to_jsonl() for p in parts)
    back = read_report_jsonl(text)
    assert [r.summary() for r in back] == [p.summary() for p in parts]
    merged = merge_reports(reversed(back))
    assert merged.summary() == whole.summary()
    assert sorted(merged.exceptions) == sorted(whole.exceptions)


def test_merge_rejects_mixed_and_duplicate_shards():
    a = verify_main_theorem(3, "theorem11", (0, 2))
    b = verify_main_theorem(3, "theorem14", (1, 2))
    with pytest.raises(DomainError):
        merge_reports([a, b])
    with pytest.raises(DomainError):
        merge_reports([a, a])
    with pytest.raises(DomainError):
        merge_reports([])


def test_partial_merge_is_marked():
    a = verify_main_theorem(3, "theorem11", (0, 2))
    assert merge_reports([a]).shard_id == -1


def test_read_report_rejects_trailing_records():
    text = verify_main_theorem(3, "theorem11").to_jsonl()
    body = text.splitlines()
    with pytest.raises(SerializationError):
        read_report_jsonl("\n".join(body[:-1]))


def test_parallel_matches_serial():
    serial = verify_main_theorem(4, "theorem11")
    par = verify_parallel(4, "theorem11", shards=4, jobs=2)
    assert par.summary() == serial.summary()


def test_theorem12_small_order():
    rep = verify_main_theorem(3, "theorem12")
    assert rep.condition_satisfying == 18
    assert set(rep.exception_classes().values()) == {"G1(1,1)"}


def test_unknown_variant_and_bad_orders():
    with pytest.raises(DomainError):
        verify_main_theorem(3, "theorem99")
    with pytest.raises(DomainError):
        verify_main_theorem(2, "corollary")
    with pytest.raises(DomainError):
        verify_main_theorem(1, "theorem11")


def test_derive_single_arrangement():
    res = derive_g4(patterns=[("II", "III", "II", "III")])
    assert res.candidates == 1 << 16
    assert res.survivors == 1 and res.unique
    assert res.patterns == {"II-III-II-III": 1}
