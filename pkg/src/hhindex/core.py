"""Ranked hierarchies: construction, validation and order queries.

A hierarchy is a forest in which each node has at most one parent.  Every
node carries a count of direct citations and a rank.  In ``aggregated`` mode
the rank of a node is its own count plus the counts of all its descendants;
in ``supplied`` mode ranks are given by the caller and only checked for
monotonicity (a child never outranks its parent).

Node identifiers are opaque text tokens.  Internally the identifiers are
sorted and every node is addressed by its position in that order, so integer
comparisons agree with identifier comparisons.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from hhindex.errors import (
    CycleDetected,
    DuplicateId,
    InvalidId,
    NegativeCitations,
    NonMonotoneRanks,
    UnknownNode,
    UnknownParent,
)

AGGREGATED = "aggregated"
SUPPLIED = "supplied"
RANK_MODES = (AGGREGATED, SUPPLIED)

# (id, parent or None, direct citations[, label])
Entry = Sequence


@dataclass(frozen=True)
class Node:
    id: str
    direct_citations: int
    parent: str | None = None
    label: str | None = None


@dataclass(frozen=True, order=True)
class Antichain:
    """A set of pairwise incomparable node ids, kept in ascending order."""

    members: tuple[str, ...] = ()

    @classmethod
    def of(cls, ids: Iterable[str]) -> "Antichain":
        return cls(tuple(sorted(set(ids))))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __contains__(self, node_id: object) -> bool:
        return node_id in self.members


def _check_id(node_id: object) -> str:
    if not isinstance(node_id, str) or not node_id or any(ch.isspace() for ch in node_id):
        raise InvalidId(f"invalid node id {node_id!r}: expected a non-empty token without whitespace")
    return node_id


class RankedHierarchy:
    """Immutable ranked forest.

    Build instances with :func:`build_hierarchy`; the constructor trusts its
    arguments.
    """

    __slots__ = (
        "_ids", "_index", "_parent", "_direct", "_rank", "_label",
        "_child_ptr", "_child_idx", "_order", "_roots", "_depth", "rank_mode",
    )

    def __init__(self, ids, index, parent, direct, rank, label, child_ptr, child_idx, order, rank_mode):
        self._ids: tuple[str, ...] = ids
        self._index: dict[str, int] = index
        self._parent: tuple[int, ...] = parent
        self._direct: tuple[int, ...] = direct
        self._rank: tuple[int, ...] = rank
        self._label: tuple[str | None, ...] = label
        self._child_ptr: tuple[int, ...] = child_ptr
        self._child_idx: tuple[int, ...] = child_idx
        self._order: tuple[int, ...] = order  # parents before children
        self._roots: tuple[int, ...] = tuple(i for i, p in enumerate(parent) if p < 0)
        self._depth: tuple[int, ...] | None = None
        self.rank_mode: str = rank_mode

    # -- basic container protocol -------------------------------------------

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._ids)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankedHierarchy):
            return NotImplemented
        return (
            self._ids == other._ids
            and self._parent == other._parent
            and self._direct == other._direct
            and self._rank == other._rank
            and self._label == other._label
            and self.rank_mode == other.rank_mode
        )

    def __repr__(self) -> str:
        return f"<RankedHierarchy nodes={len(self)} roots={len(self._roots)} mode={self.rank_mode}>"

    # -- lookups -------------------------------------------------------------

    def _idx(self, node_id: str) -> int:
        try:
            return self._index[node_id]
        except (KeyError, TypeError):
            raise UnknownNode(f"unknown node {node_id!r}") from None

    def _children_idx(self, i: int) -> tuple[int, ...]:
        return self._child_idx[self._child_ptr[i]:self._child_ptr[i + 1]]

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    @property
    def roots(self) -> tuple[str, ...]:
        return tuple(self._ids[i] for i in self._roots)

    @property
    def ranks(self) -> dict[str, int]:
        return dict(zip(self._ids, self._rank))

    @property
    def nodes(self) -> dict[str, Node]:
        return {node_id: self.node(node_id) for node_id in self._ids}

    @property
    def total_citations(self) -> int:
        return sum(self._direct)

    def node(self, node_id: str) -> Node:
        i = self._idx(node_id)
        p = self._parent[i]
        return Node(node_id, self._direct[i], self._ids[p] if p >= 0 else None, self._label[i])

    def rank(self, node_id: str) -> int:
        return self._rank[self._idx(node_id)]

    def direct_citations(self, node_id: str) -> int:
        return self._direct[self._idx(node_id)]

    def label(self, node_id: str) -> str | None:
        return self._label[self._idx(node_id)]

    def parent(self, node_id: str) -> str | None:
        p = self._parent[self._idx(node_id)]
        return self._ids[p] if p >= 0 else None

    def children(self, node_id: str) -> tuple[str, ...]:
        return tuple(self._ids[c] for c in self._children_idx(self._idx(node_id)))

    def is_leaf(self, node_id: str) -> bool:
        i = self._idx(node_id)
        return self._child_ptr[i] == self._child_ptr[i + 1]

    def leaves(self) -> tuple[str, ...]:
        ptr = self._child_ptr
        return tuple(self._ids[i] for i in range(len(self._ids)) if ptr[i] == ptr[i + 1])

    def depth(self, node_id: str) -> int:
        """Number of edges between the node and its root."""
        return self._depths()[self._idx(node_id)]

    def _depths(self) -> tuple[int, ...]:
        if self._depth is None:
            depth = [0] * len(self._ids)
            parent = self._parent
            for i in self._order:
                p = parent[i]
                if p >= 0:
                    depth[i] = depth[p] + 1
            self._depth = tuple(depth)
        return self._depth

    def ancestors(self, node_id: str) -> Iterator[str]:
        """Proper ancestors, nearest first."""
        p = self._parent[self._idx(node_id)]
        while p >= 0:
            yield self._ids[p]
            p = self._parent[p]

    def descendants(self, node_id: str) -> Iterator[str]:
        """Proper descendants in breadth-first order."""
        queue = deque(self._children_idx(self._idx(node_id)))
        while queue:
            i = queue.popleft()
            yield self._ids[i]
            queue.extend(self._children_idx(i))

    def is_below(self, lower: str, upper: str) -> bool:
        """True when ``lower`` is a proper descendant of ``upper``."""
        target = self._idx(upper)
        p = self._parent[self._idx(lower)]
        while p >= 0:
            if p == target:
                return True
            p = self._parent[p]
        return False

    def entries(self) -> list[tuple[str, str | None, int, str | None]]:
        """``(id, parent, direct, label)`` rows in parent-before-child order."""
        ids, parent, direct, label = self._ids, self._parent, self._direct, self._label
        return [
            (ids[i], ids[parent[i]] if parent[i] >= 0 else None, direct[i], label[i])
            for i in self._order
        ]


def build_hierarchy(
    entries: Iterable[Entry],
    rank_mode: str = AGGREGATED,
    supplied_ranks: Mapping[str, int] | None = None,
) -> RankedHierarchy:
    """Validate ``(id, parent, direct_citations[, label])`` entries into a hierarchy.

    Raises DuplicateId, UnknownParent, CycleDetected, NegativeCitations or, in
    supplied mode, NonMonotoneRanks.
    """
    if rank_mode not in RANK_MODES:
        raise ValueError(f"rank_mode must be one of {RANK_MODES}, got {rank_mode!r}")
    if rank_mode == SUPPLIED and supplied_ranks is None:
        raise ValueError("supplied rank mode needs supplied_ranks")

    raw: dict[str, tuple[str | None, int, str | None]] = {}
    for entry in entries:
        node_id = _check_id(entry[0])
        parent_id = entry[1]
        count = entry[2]
        label = entry[3] if len(entry) > 3 else None
        if node_id in raw:
            raise DuplicateId(f"duplicate node id {node_id!r}")
        if isinstance(count, bool) or not isinstance(count, int):
            raise NegativeCitations(f"citation count of {node_id!r} must be an integer, got {count!r}")
        if count < 0:
            raise NegativeCitations(f"node {node_id!r} has negative citation count {count}")
        raw[node_id] = (parent_id, count, label or None)

    ids = tuple(sorted(raw))
    index = {node_id: i for i, node_id in enumerate(ids)}
    n = len(ids)

    parent = [-1] * n
    direct = [0] * n
    label: list[str | None] = [None] * n
    n_children = [0] * n
    for i, node_id in enumerate(ids):
        parent_id, count, lab = raw[node_id]
        direct[i] = count
        label[i] = lab
        if parent_id is not None:
            p = index.get(parent_id)
            if p is None:
                raise UnknownParent(f"node {node_id!r} has unknown parent {parent_id!r}")
            parent[i] = p
            n_children[p] += 1
    del raw

    # children in CSR layout; filling in index order keeps each list sorted by id
    child_ptr = [0] * (n + 1)
    total = 0
    for i in range(n):
        child_ptr[i] = total
        total += n_children[i]
    child_ptr[n] = total
    fill = child_ptr[:n]
    child_idx = [0] * total
    for i in range(n):
        p = parent[i]
        if p >= 0:
            child_idx[fill[p]] = i
            fill[p] += 1
    del fill, n_children

    order = [i for i in range(n) if parent[i] < 0]
    head = 0
    while head < len(order):
        i = order[head]
        head += 1
        order.extend(child_idx[child_ptr[i]:child_ptr[i + 1]])
    if len(order) < n:
        raise CycleDetected(_describe_cycle(ids, parent, set(order)))

    if rank_mode == AGGREGATED:
        rank = list(direct)
        for i in reversed(order):
            p = parent[i]
            if p >= 0:
                rank[p] += rank[i]
    else:
        rank = [0] * n
        for i, node_id in enumerate(ids):
            if node_id not in supplied_ranks:
                raise NonMonotoneRanks(f"no supplied rank for node {node_id!r}")
            value = supplied_ranks[node_id]
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise NonMonotoneRanks(f"rank of {node_id!r} must be a non-negative integer, got {value!r}")
            rank[i] = value
        for i in range(n):
            p = parent[i]
            if p >= 0 and rank[i] > rank[p]:
                raise NonMonotoneRanks(
                    f"node {ids[i]!r} has rank {rank[i]} above its parent {ids[p]!r} ({rank[p]})"
                )

    return RankedHierarchy(
        ids, index, tuple(parent), tuple(direct), tuple(rank), tuple(label),
        tuple(child_ptr), tuple(child_idx), tuple(order), rank_mode,
    )


def _describe_cycle(ids, parent, reached) -> str:
    start = next(i for i in range(len(ids)) if i not in reached)
    seen: dict[int, int] = {}
    i = start
    while i not in seen:
        seen[i] = len(seen)
        i = parent[i]
    cycle = [j for j, _ in sorted(seen.items(), key=lambda kv: kv[1])][seen[i]:]
    return "parent chain forms a cycle: " + " -> ".join(ids[j] for j in cycle + [i])


def _rebuild(h: RankedHierarchy, keep: Iterable[int], *, direct_override: Mapping[int, int] | None = None,
             root_override: Iterable[int] = ()) -> RankedHierarchy:
    """Rebuild from a subset of node indices closed under taking parents
    (except for the indices in ``root_override``, which become roots)."""
    ids, parent, direct, label = h._ids, h._parent, h._direct, h._label
    new_roots = set(root_override)
    direct_override = direct_override or {}
    rows = []
    kept = list(keep)
    for i in kept:
        p = parent[i]
        rows.append((
            ids[i],
            None if (p < 0 or i in new_roots) else ids[p],
            direct_override.get(i, direct[i]),
            label[i],
        ))
    if h.rank_mode == SUPPLIED:
        return build_hierarchy(rows, SUPPLIED, {ids[i]: h._rank[i] for i in kept})
    return build_hierarchy(rows)


def aggregate_ranks(h: RankedHierarchy) -> dict[str, int]:
    """Direct citations of each node plus those of all its descendants."""
    rank = list(h._direct)
    parent = h._parent
    for i in reversed(h._order):
        p = parent[i]
        if p >= 0:
            rank[p] += rank[i]
    return dict(zip(h._ids, rank))


def is_antichain(h: RankedHierarchy, nodes: Iterable[str]) -> bool:
    """True when no member of ``nodes`` is a proper ancestor of another."""
    members = {h._idx(node_id) for node_id in nodes}
    parent = h._parent
    for i in members:
        p = parent[i]
        while p >= 0:
            if p in members:
                return False
            p = parent[p]
    return True


def minimal_elements(h: RankedHierarchy, nodes: Iterable[str]) -> Antichain:
    """Members of ``nodes`` with no other member below them."""
    members = {h._idx(node_id) for node_id in nodes}
    covered: set[int] = set()
    parent = h._parent
    for i in members:
        p = parent[i]
        while p >= 0 and p not in covered:
            covered.add(p)
            p = parent[p]
    return Antichain(tuple(h._ids[i] for i in sorted(members - covered)))


def l_antichain(h: RankedHierarchy, level: int) -> Antichain:
    """The maximal antichain whose members have rank >= ``level`` and whose
    members' children all have rank < ``level``.

    Computed by scanning every node against the definition.
    """
    if level < 0:
        raise ValueError(f"level must be non-negative, got {level}")
    rank, ptr, kids = h._rank, h._child_ptr, h._child_idx
    members = []
    for i in range(len(h._ids)):
        if rank[i] >= level and all(rank[c] < level for c in kids[ptr[i]:ptr[i + 1]]):
            members.append(h._ids[i])
    return Antichain(tuple(members))


def subtree(h: RankedHierarchy, root: str) -> RankedHierarchy:
    """The hierarchy restricted to ``root`` and its descendants."""
    r = h._idx(root)
    keep = [r]
    head = 0
    while head < len(keep):
        keep.extend(h._children_idx(keep[head]))
        head += 1
    return _rebuild(h, keep, root_override=[r])
