"""Report tables: CSV and JSON emission with frozen schemas.

Column orders, metadata keys, and float formatting are part of the stable
output contract documented in docs/format.md; golden-file tests pin the
exact bytes. Every table carries self-describing metadata (tool version,
scoring variant, thresholds, skip counts) so no emitted number is
unlabeled.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Callable

from . import __version__
from .slicer import TENSE_PRECEDENCE

Formatter = Callable[[object], str]


def fmt_score(value: object) -> str:
    """Fixed 6-decimal formatting for scores; empty cell for missing."""
    if value is None:
        return ""
    return f"{value:.6f}"


def fmt_p(value: object) -> str:
    """Scientific formatting for p-values (keeps tiny tails visible)."""
    if value is None:
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.6e}"


def fmt_stat(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.6f}"


def _fmt_default(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_score(value)
    return str(value)


@dataclass
class Table:
    name: str
    meta: dict[str, object]
    columns: list[str]
    rows: list[list[object]]
    csv_formats: dict[str, Formatter] = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [f"# {key}={value}" for key, value in self.meta.items()]
        lines.append(",".join(self.columns))
        formatters = [self.csv_formats.get(col, _fmt_default) for col in self.columns]
        for row in self.rows:
            lines.append(",".join(fmt(v) for fmt, v in zip(formatters, row)))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "meta": self.meta,
            "columns": self.columns,
            "rows": [dict(zip(self.columns, row)) for row in self.rows],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2, default=str) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown output format {fmt!r}")

    def write(self, directory: str, fmt: str) -> str:
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, f"{self.name}.{fmt}")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.render(fmt))
        return path


def base_meta(**extra: object) -> dict[str, object]:
    """Shared metadata header; insertion order is part of the format.

    Every report is self-describing: tool version, both scoring variants,
    and the tense-precedence rule appear even where a given table does not
    use them.
    """
    meta: dict[str, object] = {
        "generator": "anxarc",
        "version": __version__,
        "micro_score": "100*(anxiety_tokens-calm_tokens)/tokens, pooled per bin",
        "macro_score": "mean of per-post scores in the bin",
        "tense_precedence": TENSE_PRECEDENCE,
    }
    meta.update(extra)
    return meta
