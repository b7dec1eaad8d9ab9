"""Reading and writing hierarchies, and seeded synthetic generation.

Two interchange formats are supported.

Nodes table (``.tsv``): a header line ``id<TAB>parent<TAB>citations<TAB>label``
followed by one row per node.  A parent of ``-`` or an empty field marks a
root; the label column may be empty or absent.

Tree document (``.json``): a node is ``{"id": ..., "citations": ...,
"label": ..., "children": [...]}`` with ``label`` optional.  The document is a
single node or a list of root nodes.
"""

from __future__ import annotations

import bisect
import json
import random
import re
from dataclasses import dataclass
from typing import Union

from hhindex.core import RankedHierarchy, build_hierarchy
from hhindex.errors import (
    DuplicateId,
    InvalidDistributionParams,
    InvalidGeneratorParams,
    NegativeCitations,
    ParseError,
    UnknownParent,
)

TABLE_HEADER = ("id", "parent", "citations", "label")
MAX_CITATIONS = 2**63 - 1
_INTEGER = re.compile(r"[+-]?[0-9]+")


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    return data.removeprefix("\ufeff")


def _citations(field: str, line: int) -> int:
    field = field.strip()
    if not _INTEGER.fullmatch(field):
        raise ParseError(f"citation count {field!r} is not an integer", line=line)
    value = int(field)
    if value < 0:
        raise NegativeCitations(f"negative citation count {value}", line=line)
    if value > MAX_CITATIONS:
        raise ParseError(f"citation count {value} does not fit in 64 bits", line=line)
    return value


def parse_nodes_table(data: bytes | str) -> RankedHierarchy:
    text = _decode(data)
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input: missing header line", line=1)
    header = tuple(lines[0].rstrip("\r").split("\t"))
    if header not in (TABLE_HEADER, TABLE_HEADER[:3]):
        raise ParseError(f"expected header {chr(9).join(TABLE_HEADER)!r}, got {lines[0]!r}", line=1)

    rows = []
    seen: dict[str, int] = {}
    for number, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        fields = raw.split("\t")
        if len(fields) not in (3, 4):
            raise ParseError(f"expected 3 or 4 tab-separated fields, got {len(fields)}", line=number)
        node_id = fields[0].strip()
        if not node_id:
            raise ParseError("empty node id", line=number)
        if node_id in seen:
            raise DuplicateId(f"duplicate node id {node_id!r} (first on line {seen[node_id]})", line=number)
        seen[node_id] = number
        parent = fields[1].strip()
        count = _citations(fields[2], number)
        label = fields[3].strip() if len(fields) == 4 else ""
        rows.append((node_id, None if parent in ("", "-") else parent, count, label or None))

    for node_id, parent, _, _ in rows:
        if parent is not None and parent not in seen:
            raise UnknownParent(f"node {node_id!r} has unknown parent {parent!r}", line=seen[node_id])
    return build_hierarchy(rows)


def parse_tree_document(data: bytes | str) -> RankedHierarchy:
    try:
        doc = json.loads(_decode(data))
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed document: {exc.msg}", line=exc.lineno) from None
    roots = doc if isinstance(doc, list) else [doc]

    rows = []
    seen: set[str] = set()
    stack = [(node, None, f"$[{k}]") for k, node in reversed(list(enumerate(roots)))]
    while stack:
        node, parent, where = stack.pop()
        if not isinstance(node, dict):
            raise ParseError(f"{where}: expected an object")
        unknown = set(node) - {"id", "citations", "label", "children"}
        if unknown:
            raise ParseError(f"{where}: unexpected keys {sorted(unknown)}")
        node_id = node.get("id")
        if not isinstance(node_id, str) or not node_id:
            raise ParseError(f"{where}: 'id' must be a non-empty string")
        count = node.get("citations")
        if isinstance(count, bool) or not isinstance(count, int):
            raise ParseError(f"{where} ({node_id}): 'citations' must be an integer")
        if count < 0:
            raise NegativeCitations(f"{where} ({node_id}): negative citation count {count}")
        if count > MAX_CITATIONS:
            raise ParseError(f"{where} ({node_id}): citation count does not fit in 64 bits")
        label = node.get("label")
        if label is not None and not isinstance(label, str):
            raise ParseError(f"{where} ({node_id}): 'label' must be a string")
        children = node.get("children", [])
        if not isinstance(children, list):
            raise ParseError(f"{where} ({node_id}): 'children' must be a list")
        if node_id in seen:
            raise DuplicateId(f"duplicate node id {node_id!r} at {where}")
        seen.add(node_id)
        rows.append((node_id, parent, count, label or None))
        for k in range(len(children) - 1, -1, -1):
            stack.append((children[k], node_id, f"{where}.children[{k}]"))
    return build_hierarchy(rows)


def parse_hierarchy(data: bytes | str, fmt: str = "auto") -> RankedHierarchy:
    """Dispatch on ``fmt`` (``tsv``, ``json`` or ``auto``, which sniffs the
    first non-blank character)."""
    if fmt == "auto":
        head = _decode(data).lstrip()[:1]
        fmt = "json" if head in ("{", "[") else "tsv"
    if fmt == "tsv":
        return parse_nodes_table(data)
    if fmt == "json":
        return parse_tree_document(data)
    raise ValueError(f"unknown input format {fmt!r}")


def dump_nodes_table(h: RankedHierarchy) -> bytes:
    out = ["\t".join(TABLE_HEADER)]
    for node_id, parent, count, label in h.entries():
        out.append(f"{node_id}\t{parent or '-'}\t{count}\t{label or ''}")
    return ("\n".join(out) + "\n").encode("utf-8")


def dump_tree_document(h: RankedHierarchy) -> bytes:
    def node(node_id: str) -> dict:
        record: dict = {"id": node_id, "citations": h.direct_citations(node_id)}
        label = h.label(node_id)
        if label is not None:
            record["label"] = label
        record["children"] = [node(c) for c in h.children(node_id)]
        return record

    roots = [node(r) for r in h.roots]
    doc = roots[0] if len(roots) == 1 else roots
    return (json.dumps(doc, indent=1, ensure_ascii=False) + "\n").encode("utf-8")


# -- synthetic hierarchies ------------------------------------------------------


@dataclass(frozen=True)
class Uniform:
    """Integers drawn uniformly from ``lo..hi`` inclusive."""

    lo: int
    hi: int


@dataclass(frozen=True)
class Zipf:
    """Integers ``1..max`` with probability proportional to ``k ** -s``."""

    s: float
    max: int


Distribution = Union[Uniform, Zipf]


def _sampler(dist: Distribution, rng: random.Random):
    if isinstance(dist, Uniform):
        if dist.lo < 0 or dist.hi < dist.lo:
            raise InvalidDistributionParams(f"uniform bounds need 0 <= lo <= hi, got {dist.lo}..{dist.hi}")
        lo, span = dist.lo, dist.hi - dist.lo + 1
        return lambda: lo + min(int(rng.random() * span), span - 1)
    if isinstance(dist, Zipf):
        if not dist.s > 0 or dist.max < 1:
            raise InvalidDistributionParams(f"zipf needs s > 0 and max >= 1, got s={dist.s} max={dist.max}")
        cumulative = []
        total = 0.0
        for k in range(1, dist.max + 1):
            total += k ** -dist.s
            cumulative.append(total)
        last = dist.max - 1
        return lambda: min(bisect.bisect_right(cumulative, rng.random() * total), last) + 1
    raise InvalidDistributionParams(f"unknown distribution {dist!r}")


def generate_synthetic(
    seed: int,
    n: int,
    max_children: int = 8,
    citations: Distribution = Zipf(1.1, 10_000),
    *,
    internal_citations: bool = False,
    roots: int = 1,
) -> RankedHierarchy:
    """A seeded random forest of ``n`` nodes.

    The first ``roots`` nodes are roots; every later node picks its parent
    uniformly among the earlier nodes that still have fewer than
    ``max_children`` children.  Every node draws a citation count, but
    internal nodes keep theirs only when ``internal_citations`` is set.

    Only ``random.Random(seed).random()`` is consumed, whose sequence Python
    guarantees across versions and platforms.
    """
    if n < 1:
        raise InvalidGeneratorParams(f"node count must be at least 1, got {n}")
    if max_children < 1:
        raise InvalidGeneratorParams(f"max_children must be at least 1, got {max_children}")
    if not 1 <= roots <= n:
        raise InvalidGeneratorParams(f"roots must be between 1 and {n}, got {roots}")
    rng = random.Random(seed)
    draw = _sampler(citations, rng)
    uniform = rng.random

    parent = [-1] * n
    n_children = [0] * n
    open_slots = list(range(roots))
    for k in range(roots, n):
        slot = int(uniform() * len(open_slots))
        p = open_slots[slot]
        parent[k] = p
        n_children[p] += 1
        if n_children[p] == max_children:
            open_slots[slot] = open_slots[-1]
            open_slots.pop()
        open_slots.append(k)

    counts = [draw() for _ in range(n)]
    if not internal_citations:
        for k in range(n):
            if n_children[k]:
                counts[k] = 0

    width = len(str(n - 1))
    names = [f"n{k:0{width}d}" for k in range(n)]
    return build_hierarchy(
        (names[k], names[parent[k]] if parent[k] >= 0 else None, counts[k]) for k in range(n)
    )
