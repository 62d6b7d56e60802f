"""Enumerate generating sequences and partition them into equivalence
classes under directed or undirected Cayley-graph isomorphism.

Sequences are bucketed by order multiset first (a sound pre-filter:
isomorphic Cayley graphs have equal label order multisets); inside a
bucket each sequence is compared against the class representatives
only, which suffices because equivalence is transitive.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import cayley, iso
from .groups import (
    FiniteGroup,
    GeneratingSequence,
    OrderMultiset,
    closure,
    dicyclic_automorphism_maps,
    dicyclic_parameter,
    order_multiset,
)

MAX_LENGTH = 4
DEFAULT_MAX_ORDER = 512


@dataclass(frozen=True)
class SequenceClass:
    representative: GeneratingSequence
    representative_names: tuple[str, ...]
    order_multiset: OrderMultiset
    size: int


@dataclass(frozen=True)
class ClassificationReport:
    group: str
    length: int
    mode: str
    minimal_only: bool
    classes: tuple[SequenceClass, ...]
    total: int
    wall_time_seconds: float

    def to_json_dict(self) -> dict:
        # wall time is excluded: reports must be byte-identical across runs
        return {
            "group": self.group,
            "length": self.length,
            "mode": self.mode,
            "minimal_only": self.minimal_only,
            "classes": [
                {
                    "representative": list(c.representative_names),
                    "order_multiset": c.order_multiset.to_json(),
                    "size": c.size,
                }
                for c in self.classes
            ],
            "total": self.total,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def _check_guards(group: FiniteGroup, length: int, max_order: int) -> None:
    if not 1 <= length <= MAX_LENGTH:
        raise ValueError(f"sequence length must be in 1..{MAX_LENGTH}, got {length}")
    if group.order > max_order:
        raise ValueError(
            f"group order {group.order} exceeds the classification guard "
            f"({max_order}); raise max_order to override"
        )


def enumerate_generating_sequences(
    group: FiniteGroup,
    length: int,
    minimal_only: bool = False,
    max_order: int = DEFAULT_MAX_ORDER,
) -> list[GeneratingSequence]:
    """All ordered tuples of pairwise-distinct elements that generate the
    group, optionally restricted to minimal ones, in deterministic
    (lexicographic id) order.

    Tuples with repeated entries are excluded: they are never minimal
    and their labels would collapse in the Cayley graph.
    """
    _check_guards(group, length, max_order)
    group.ensure_table()
    generates = _generation_cache(group)
    result = []
    for tup in itertools.permutations(range(group.order), length):
        if not generates(frozenset(tup)):
            continue
        if minimal_only and any(
            generates(frozenset(tup[:i] + tup[i + 1 :])) for i in range(length)
        ):
            continue
        result.append(GeneratingSequence(tup, group.descriptor))
    return result


def _generation_cache(group: FiniteGroup):
    cache: dict[frozenset, bool] = {}

    def generates(elements: frozenset) -> bool:
        got = cache.get(elements)
        if got is None:
            got = len(closure(group, elements)) == group.order
            cache[elements] = got
        return got

    return generates


def classify(
    group: FiniteGroup,
    length: int,
    mode: str = "directed",
    minimal_only: bool = False,
    *,
    max_order: int = DEFAULT_MAX_ORDER,
    jobs: int = 1,
    use_automorphism_orbits: bool = False,
) -> ClassificationReport:
    """Partition generating sequences into equivalence classes.

    mode is "directed" (edge-labeled digraph isomorphism) or
    "undirected" (direction-forgetting view).  The report is identical
    for any jobs >= 1; use_automorphism_orbits pre-collapses sequences
    along known dicyclic automorphisms (dicyclic groups only) without
    changing the report.
    """
    if mode not in ("directed", "undirected"):
        raise ValueError(f"mode must be 'directed' or 'undirected', got {mode!r}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    start = time.perf_counter()
    sequences = enumerate_generating_sequences(group, length, minimal_only, max_order)

    if use_automorphism_orbits:
        if dicyclic_parameter(group) is None:
            raise ValueError(
                "automorphism-orbit collapse is implemented for dicyclic groups only"
            )
        work = _collapse_orbits(group, sequences)
    else:
        work = [(seq, 1) for seq in sequences]

    compare = iso.directed_iso if mode == "directed" else iso.undirected_iso

    def graph_for(seq: GeneratingSequence):
        g = cayley.build(group, seq)
        return g if mode == "directed" else cayley.undirected_view(g)

    executor = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    # buckets: order multiset -> list of [rep sequence, rep graph, size, first index]
    buckets: dict[OrderMultiset, list[list]] = {}
    try:
        for index, (seq, weight) in enumerate(work):
            graph = graph_for(seq)
            ms = order_multiset(group, seq.elements)
            bucket = buckets.setdefault(ms, [])
            reps = [record[1] for record in bucket]
            if executor is not None:
                matches = list(executor.map(lambda r: compare(graph, r) is not None, reps))
            else:
                matches = [compare(graph, r) is not None for r in reps]
            for record, hit in zip(bucket, matches):
                if hit:
                    record[2] += weight
                    break
            else:
                bucket.append([seq, graph, weight, index])
    finally:
        if executor is not None:
            executor.shutdown()

    records = [record for bucket in buckets.values() for record in bucket]
    records.sort(key=lambda r: ([-v for v in _ms_of(group, r[0])], r[3]))
    classes = tuple(
        SequenceClass(
            representative=record[0],
            representative_names=tuple(group.names[g] for g in record[0].elements),
            order_multiset=order_multiset(group, record[0].elements),
            size=record[2],
        )
        for record in records
    )
    return ClassificationReport(
        group=group.descriptor,
        length=length,
        mode=mode,
        minimal_only=minimal_only,
        classes=classes,
        total=len(sequences),
        wall_time_seconds=time.perf_counter() - start,
    )


def _ms_of(group: FiniteGroup, seq: GeneratingSequence) -> tuple[int, ...]:
    return order_multiset(group, seq.elements).values


def _collapse_orbits(
    group: FiniteGroup, sequences: Sequence[GeneratingSequence]
) -> list[tuple[GeneratingSequence, int]]:
    """Group sequences into orbits under the known dicyclic automorphisms.

    Sequences in one orbit are equivalent (an automorphism induces a
    Cayley isomorphism), so classifying one representative per orbit
    with the orbit size as weight yields the identical report: the
    orbit representative is the lexicographically least member, which
    is also the first seen in enumeration order.
    """
    maps = dicyclic_automorphism_maps(group)
    remaining = {seq.elements: seq for seq in sequences}
    work: list[tuple[GeneratingSequence, int]] = []
    for seq in sequences:
        if seq.elements not in remaining:
            continue
        orbit = {tuple(m[g] for g in seq.elements) for m in maps}
        members = [t for t in orbit if t in remaining]
        for t in members:
            del remaining[t]
        work.append((seq, len(members)))
    return work


def classify_summary_equal(report: ClassificationReport, expected) -> bool:
    """Compare class count and the multiset-with-multiplicity profile.

    ``expected`` is another report or an iterable of order multisets
    (each an OrderMultiset or an iterable of ints).
    """
    if isinstance(expected, ClassificationReport):
        expected_values = [c.order_multiset.values for c in expected.classes]
    else:
        expected_values = [
            ms.values if isinstance(ms, OrderMultiset) else tuple(sorted(ms, reverse=True))
            for ms in expected
        ]
    observed = sorted(c.order_multiset.values for c in report.classes)
    return observed == sorted(expected_values)
