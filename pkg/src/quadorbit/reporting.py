"""Deterministic report rendering: canonical JSON and CSV, version-stamped."""

from __future__ import annotations

import csv
import io
import json

from . import __version__


def report_envelope(command: str, config: dict, result: dict) -> dict:
    return {
        "tool": "quadorbit",
        "version": __version__,
        "command": command,
        "config": config,
        "result": result,
    }


def canonical_json(payload: dict) -> str:
    """Stable byte-for-byte rendering: sorted keys, tight separators."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def render_csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()
