"""Exact Hamilton solvers, alternating-cycle augmentation and structure analysis."""

from __future__ import annotations

from hamlab.hamilton.construct import TraceStep, constructive_solve
from hamlab.hamilton.lemmas import (
    CycleDichotomy,
    MergeResult,
    PathDichotomy,
    lemma1_bound_holds,
    merge_cycle_into_cycle,
    merge_path_into_cycle,
)
from hamlab.hamilton.solver import (
    CancellationToken,
    find_alternating_hamilton_cycle,
    find_hamilton_cycle,
    is_hamilton_cycle,
    is_hamiltonian,
    longest_alternating_cycle,
    longest_cycles,
    longest_paths,
)
from hamlab.hamilton.structure import (
    ClaimResult,
    EdgeTypeTally,
    StructureDecomposition,
    StructureReport,
    analyze_structure,
)

__all__ = [
    "CancellationToken",
    "ClaimResult",
    "CycleDichotomy",
    "EdgeTypeTally",
    "MergeResult",
    "PathDichotomy",
    "StructureDecomposition",
    "StructureReport",
    "TraceStep",
    "analyze_structure",
    "constructive_solve",
    "find_alternating_hamilton_cycle",
    "find_hamilton_cycle",
    "is_hamilton_cycle",
    "is_hamiltonian",
    "lemma1_bound_holds",
    "longest_alternating_cycle",
    "longest_cycles",
    "longest_paths",
    "merge_cycle_into_cycle",
    "merge_path_into_cycle",
]
