"""Canonical JSON serialization of h-index reports."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from hhindex.hindex import AntichainReport

SCHEMA_VERSION = 1
MODES = ("full", "flat", "lifted", "truncated")


def input_digest(data: bytes) -> str:
    """SHA-256 of the input after dropping a UTF-8 BOM and normalizing line
    endings to LF."""
    canonical = data.removeprefix(b"\xef\xbb\xbf").replace(b"\r\n", b"\n")
    return "sha256:" + hashlib.sha256(canonical).hexdigest()


def _decimal(value: Fraction) -> str:
    # medians are integers or halves; write them exactly
    if value.denominator == 1:
        return str(value.numerator)
    if value.denominator == 2:
        return f"{value.numerator // 2}.5"
    raise ValueError(f"unexpected median {value}")


def report_fields(report: AntichainReport, mode: str, digest: str) -> list[tuple[str, str]]:
    """Key/encoded-value pairs in canonical order."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    fields = [
        ("schema_version", json.dumps(SCHEMA_VERSION)),
        ("input_digest", json.dumps(digest)),
        ("mode", json.dumps(mode)),
        ("h", json.dumps(report.h)),
        ("antichain", json.dumps(list(report.antichain.members), ensure_ascii=False)),
        ("median_rank", _decimal(report.median_rank)),
        ("max_rank", json.dumps(report.max_rank)),
        ("nodes", json.dumps(report.nodes)),
        ("visited", json.dumps(report.visited)),
        ("digested", json.dumps(report.digested)),
        ("total_citations", json.dumps(report.total_citations)),
        ("sqrt_ratio", json.dumps(report.sqrt_ratio)),
    ]
    if report.trace is not None:
        fields.append(("trace", json.dumps([list(entry) for entry in report.trace])))
    return fields


def render_report(report: AntichainReport, mode: str, digest: str) -> str:
    body = ",\n".join(f'  "{key}": {value}' for key, value in report_fields(report, mode, digest))
    return "{\n" + body + "\n}"


def write_report(report: AntichainReport, mode: str, digest: str) -> bytes:
    """One JSON object, keys in fixed order, newline-terminated."""
    return (render_report(report, mode, digest) + "\n").encode("utf-8")
