"""Slow reference computations of the maximal h-index.

Nothing here shares code with the heap-based search in :mod:`hhindex.hindex`;
these functions exist to check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from hhindex.core import Antichain, RankedHierarchy
from hhindex.errors import TooLargeForEnumeration

MAX_ENUMERATION_NODES = 20


@dataclass(frozen=True)
class OracleResult:
    h: int
    witness: Antichain
    antichains_examined: int


def _h(ranks: list[int]) -> int:
    # Straight from the definition: the largest k with k members of rank >= k.
    best = 0
    for k in range(1, len(ranks) + 1):
        if sum(1 for r in ranks if r >= k) >= k:
            best = k
    return best


def enumerate_antichains(h: RankedHierarchy) -> Iterator[Antichain]:
    """Every antichain of ``h`` exactly once, the empty one included.

    Branches on include/exclude for each node in id order; including a node
    rules out its ancestors and descendants for the rest of the branch.
    """
    n = len(h)
    if n > MAX_ENUMERATION_NODES:
        raise TooLargeForEnumeration(
            f"{n} nodes exceeds the enumeration limit of {MAX_ENUMERATION_NODES}"
        )
    ids = h.ids
    related = []
    for node_id in ids:
        mask = 0
        for other in h.ancestors(node_id):
            mask |= 1 << ids.index(other)
        for other in h.descendants(node_id):
            mask |= 1 << ids.index(other)
        related.append(mask)

    def walk(position: int, blocked: int, chosen: list[str]) -> Iterator[Antichain]:
        if position == n:
            yield Antichain(tuple(chosen))
            return
        yield from walk(position + 1, blocked, chosen)
        if not blocked >> position & 1:
            chosen.append(ids[position])
            yield from walk(position + 1, blocked | related[position], chosen)
            chosen.pop()

    yield from walk(0, 0, [])


def brute_force_max_h(h: RankedHierarchy) -> OracleResult:
    """Maximum h-index over all antichains; ties go to the lexicographically
    smallest member list."""
    best_h = -1
    best: Antichain | None = None
    examined = 0
    for antichain in enumerate_antichains(h):
        examined += 1
        value = _h([h.rank(m) for m in antichain])
        if value > best_h or (value == best_h and antichain.members < best.members):
            best_h, best = value, antichain
    return OracleResult(best_h, best, examined)


def expand_to_l_antichain(h: RankedHierarchy, antichain, level: int) -> Antichain:
    """Push an antichain down to an l-antichain that is no smaller.

    Repeatedly replaces a member that has children of rank >= ``level`` by
    all and only those children.  Members below ``level`` are dropped first.
    """
    ranks = h.ranks
    pending = [m for m in antichain if ranks[m] >= level]
    done = []
    while pending:
        node_id = pending.pop()
        heavy = [c for c in h.children(node_id) if ranks[c] >= level]
        if heavy:
            pending.extend(heavy)
        else:
            done.append(node_id)
    return Antichain.of(done)


def level_scan_max_h(h: RankedHierarchy) -> OracleResult:
    """Maximum h-index over the maximal l-antichains, one per distinct rank.

    For every distinct rank ``l`` the l-antichain is taken straight from its
    definition, as the nodes of rank >= ``l`` whose children all rank below
    ``l``.  Ties go to the higher level.
    """
    ids = h.ids
    rank = np.array([h.rank(i) for i in ids], dtype=np.int64)
    top_child = np.full(len(ids), -1, dtype=np.int64)
    for k, node_id in enumerate(ids):
        for c in h.children(node_id):
            top_child[k] = max(top_child[k], h.rank(c))

    best_h = 0
    best = Antichain()
    examined = 0
    for level in np.unique(rank)[::-1]:
        examined += 1
        members = np.flatnonzero((rank >= level) & (top_child < level))
        ordered = np.sort(rank[members])[::-1]
        value = int(np.count_nonzero(ordered >= np.arange(1, len(ordered) + 1)))
        if value > best_h:
            best_h, best = value, Antichain(tuple(ids[k] for k in members))
    return OracleResult(best_h, best, examined)
