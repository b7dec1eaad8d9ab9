"""h-index computations: flat multisets, single antichains, and the best
antichain of a ranked hierarchy."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from hhindex.core import Antichain, RankedHierarchy, is_antichain
from hhindex.errors import NotAnAntichain


class LevelTraceEntry(NamedTuple):
    level: int
    size: int
    h_at_level: int


@dataclass(frozen=True)
class AntichainReport:
    h: int
    antichain: Antichain
    median_rank: Fraction
    max_rank: int
    nodes: int
    visited: int
    digested: int
    total_citations: int
    sqrt_ratio: float
    trace: tuple[LevelTraceEntry, ...] | None = field(default=None)


def flat_h_index(counts: Iterable[int]) -> int:
    """Largest n such that at least n of the counts are >= n."""
    h = 0
    for position, count in enumerate(sorted(counts, reverse=True), start=1):
        if count < position:
            break
        h = position
    return h


def h_of_antichain(h: RankedHierarchy, antichain: Iterable[str]) -> int:
    members = list(antichain)
    if not is_antichain(h, members):
        raise NotAnAntichain(f"{sorted(members)!r} contains an ancestor of another member")
    return flat_h_index(h.rank(node_id) for node_id in members)


def median(values: Iterable[int]) -> Fraction:
    """Exact median; the mean of the two middle values for even sizes, 0 when empty."""
    ordered = sorted(values)
    n = len(ordered)
    if n == 0:
        return Fraction(0)
    mid = n // 2
    if n % 2:
        return Fraction(ordered[mid])
    return Fraction(ordered[mid - 1] + ordered[mid], 2)


def sqrt_ratio(h_value: int, total_citations: int) -> float:
    if total_citations <= 0:
        return 0.0
    return h_value / math.sqrt(total_citations)


def max_h_antichain(h: RankedHierarchy, *, prune: bool = True, trace: bool = False) -> AntichainReport:
    """Top-down search for the antichain of maximal h-index.

    Two max-heaps are kept.  The down-chain holds the nodes of rank below the
    current level whose parent is at or above it, keyed by rank.  The up-chain
    holds the current level's antichain, keyed by the highest rank among each
    member's inserted children.  Levels are processed in decreasing order
    until the antichain outgrows the next level or the down-chain runs dry.

    ``visited`` counts rank look-ups (each node at most once) and ``digested``
    counts insertions into the down-chain.  With ``prune`` a child is skipped,
    along with its whole subtree, unless its rank exceeds the size of the last
    completed antichain.
    """
    rank = h._rank
    ptr = h._child_ptr
    kids = h._child_idx

    visited = 0
    digested = 0
    down: list[tuple[int, int]] = []
    for r in h._roots:
        visited += 1
        if rank[r] > 0:
            down.append((-rank[r], r))
            digested += 1
    heapq.heapify(down)

    up: list[tuple[int, int]] = []
    threshold = 0  # size of the last completed antichain
    best_h = 0
    best_level = None
    levels: list[LevelTraceEntry] = []
    push, pop = heapq.heappush, heapq.heappop

    while down:
        level = -down[0][0]
        cutoff = threshold if prune else 0
        while down and down[0][0] == -level:
            n = pop(down)[1]
            top_child = 0
            for c in kids[ptr[n]:ptr[n + 1]]:
                visited += 1
                rc = rank[c]
                if rc > cutoff:
                    push(down, (-rc, c))
                    digested += 1
                    if rc > top_child:
                        top_child = rc
            push(up, (-top_child, n))
        while up and -up[0][0] >= level:
            pop(up)

        size = len(up)
        if size <= level:
            h_level = size
        else:
            h_level = flat_h_index(rank[i] for _, i in up)
        if trace:
            levels.append(LevelTraceEntry(level, size, h_level))
        if h_level > best_h:
            best_h, best_level = h_level, level
        if not down or size > -down[0][0]:
            break
        threshold = size

    members = _antichain_at(h, best_level) if best_level is not None else ()
    ranks = [rank[i] for i in members]
    total = h.total_citations
    return AntichainReport(
        h=best_h,
        antichain=Antichain(tuple(h._ids[i] for i in members)),
        median_rank=median(ranks),
        max_rank=max(ranks, default=0),
        nodes=len(h),
        visited=visited,
        digested=digested,
        total_citations=total,
        sqrt_ratio=sqrt_ratio(best_h, total),
        trace=tuple(levels) if trace else None,
    )


def _antichain_at(h: RankedHierarchy, level: int) -> list[int]:
    # Descends only through nodes of rank >= level, all of which the search
    # has already popped, so this costs no more than the search itself.
    rank, ptr, kids = h._rank, h._child_ptr, h._child_idx
    stack = [r for r in h._roots if rank[r] >= level]
    members = []
    while stack:
        n = stack.pop()
        above = [c for c in kids[ptr[n]:ptr[n + 1]] if rank[c] >= level]
        if above:
            stack.extend(above)
        else:
            members.append(n)
    members.sort()
    return members


def level_trace(h: RankedHierarchy, *, prune: bool = True) -> list[LevelTraceEntry]:
    """(level, antichain size, h-index) for every level the search visits."""
    return list(max_h_antichain(h, prune=prune, trace=True).trace)
