"""Structural transformations applied before an h-index computation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from hhindex.core import AGGREGATED, RankedHierarchy, _rebuild, build_hierarchy, is_antichain
from hhindex.errors import DuplicateId, StratumNotAntichain, SuppliedRanksNotLiftable

SURROGATE_PREFIX = "V::"


def surrogate_id(node_id: str) -> str:
    return SURROGATE_PREFIX + node_id


@dataclass(frozen=True)
class LiftedHierarchy:
    """A lifted hierarchy and the map from each surrogate to its original node."""

    hierarchy: RankedHierarchy
    surrogate_of: dict[str, str]

    def is_surrogate(self, node_id: str) -> bool:
        return node_id in self.surrogate_of


def lift(h: RankedHierarchy) -> LiftedHierarchy:
    """Give every internal node a surrogate parent so that it can sit in an
    antichain next to its former children.

    For an internal node ``N`` the surrogate ``V::N`` takes N's place in the
    tree, with no direct citations of its own.  ``N`` becomes a leaf under
    ``V::N`` next to N's former children (internal children being replaced by
    their own surrogates).  Aggregated ranks then give ``V::N`` the old rank
    of ``N`` and give ``N`` its direct count only.
    """
    if h.rank_mode != AGGREGATED:
        raise SuppliedRanksNotLiftable("lifting needs ranks aggregated from citation counts")

    ids, parent, direct, label, ptr = h._ids, h._parent, h._direct, h._label, h._child_ptr
    internal = [ptr[i] != ptr[i + 1] for i in range(len(ids))]
    surrogate_of: dict[str, str] = {}
    rows = []
    for i, node_id in enumerate(ids):
        p = parent[i]
        upper = surrogate_id(ids[p]) if p >= 0 else None
        if internal[i]:
            sid = surrogate_id(node_id)
            if sid in h._index:
                raise DuplicateId(f"surrogate id {sid!r} collides with an existing node")
            surrogate_of[sid] = node_id
            rows.append((sid, upper, 0, None))
            rows.append((node_id, sid, direct[i], label[i]))
        else:
            rows.append((node_id, upper, direct[i], label[i]))
    return LiftedHierarchy(build_hierarchy(rows), surrogate_of)


def truncate_at_depth(h: RankedHierarchy, depth: int) -> RankedHierarchy:
    """Drop every node deeper than ``depth`` (roots are at depth 0).

    A node at the cut keeps its rank; its direct count absorbs the citations
    of the removed descendants so that aggregated totals are preserved.
    """
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    depths = h._depths()
    cut = [i for i in h._order if depths[i] == depth and h._child_ptr[i] != h._child_ptr[i + 1]]
    keep = [i for i in h._order if depths[i] <= depth]
    return _rebuild(h, keep, direct_override={i: h._rank[i] for i in cut})


def truncate_at_labels(h: RankedHierarchy, stratum: Iterable[str]) -> RankedHierarchy:
    """Turn every node labelled with one of ``stratum`` into a leaf."""
    wanted = set(stratum)
    if not wanted:
        return h
    cut = [i for i in h._order if h._label[i] in wanted]
    cut_set = set(cut)
    if not is_antichain(h, (h._ids[i] for i in cut)):
        nested = [
            node_id for node_id in (h._ids[i] for i in cut)
            if any(h._index[a] in cut_set for a in h.ancestors(node_id))
        ]
        raise StratumNotAntichain(f"stratum nodes lie below other stratum nodes: {', '.join(nested[:5])}")
    keep = []
    dropped = [False] * len(h._ids)
    for i in h._order:
        p = h._parent[i]
        if p >= 0 and (dropped[p] or p in cut_set):
            dropped[i] = True
        else:
            keep.append(i)
    return _rebuild(h, keep, direct_override={i: h._rank[i] for i in cut})


def leaves_only(h: RankedHierarchy) -> list[int]:
    """Ranks of the leaves, in id order."""
    ptr, rank = h._child_ptr, h._rank
    return [rank[i] for i in range(len(h._ids)) if ptr[i] == ptr[i + 1]]


def flatten(h: RankedHierarchy) -> RankedHierarchy:
    """Every node as an unrelated root ranked by its direct citations."""
    return build_hierarchy((node_id, None, count, lab) for node_id, _, count, lab in h.entries())
