"""Synthetic corpora with planted anxiety arcs, and arc-recovery evaluation.

The generator plants a known per-bin probability of anxiety/calm tokens and
the evaluator measures how faithfully the full pipeline (tokenize -> score
-> bin) recovers the resulting arc. Token draws are i.i.d.; no verb or
pronoun structure is synthesized (tense/pronoun behavior is validated by
hand-built fixtures in the test suite instead).

Randomness comes from Python's Mersenne Twister (``random.Random``), whose
``random()`` stream is documented and guaranteed stable for a given seed;
all draws are derived from ``random()`` only, so identical (spec, lexicon)
inputs produce byte-identical corpora anywhere. Each bin uses its own
generator seeded from (seed, bin index), which keeps per-bin output
independent of generation order.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import IO, Sequence

from .lexicon import Lexicon, TermClass
from .pipeline import ScanResult, scan_corpus
from .stats import pearson, spearman

AXES = ("hour", "weekday")

# Fixed anchor dates (UTC) used for planted timestamps: an ordinary
# mid-June week; 2021-06-14 is a Monday.
_HOUR_AXIS_DATE = "2021-06-15"
_WEEKDAY_AXIS_MONDAY = 14


class ArcSpecError(ValueError):
    """Invalid arc specification."""


class EmptyBinError(ValueError):
    """A corpus bin required by the evaluation contains no posts."""

    def __init__(self, axis: str, bin_id: int):
        super().__init__(f"{axis} bin {bin_id} contains no posts")
        self.axis = axis
        self.bin_id = bin_id


@dataclass(frozen=True)
class ArcSpec:
    """A planted arc: per-bin affect-token probabilities plus sizing."""

    bins: tuple[int, ...]
    p_anx: tuple[float, ...]
    p_calm: tuple[float, ...]
    posts_per_bin: int
    tokens_per_post: tuple[int, int]
    seed: int
    axis: str = "hour"

    def __post_init__(self):
        if self.axis not in AXES:
            raise ArcSpecError(f"axis must be one of {AXES}, got {self.axis!r}")
        limit = 24 if self.axis == "hour" else 7
        if not self.bins:
            raise ArcSpecError("bins must be non-empty")
        if len(set(self.bins)) != len(self.bins):
            raise ArcSpecError("bins must be distinct")
        for b in self.bins:
            if not 0 <= b < limit:
                raise ArcSpecError(f"bin {b} outside [0, {limit})")
        if not (len(self.bins) == len(self.p_anx) == len(self.p_calm)):
            raise ArcSpecError("bins, p_anx, and p_calm must have equal lengths")
        for pa, pc in zip(self.p_anx, self.p_calm):
            if pa < 0 or pc < 0 or pa + pc > 1.0:
                raise ArcSpecError(
                    f"need p_anx, p_calm >= 0 and p_anx + p_calm <= 1, got ({pa}, {pc})"
                )
        if self.posts_per_bin < 1:
            raise ArcSpecError("posts_per_bin must be >= 1")
        lo, hi = self.tokens_per_post
        if lo < 1 or hi < lo:
            raise ArcSpecError(f"tokens_per_post must satisfy 1 <= min <= max, got ({lo}, {hi})")

    @property
    def planted_scores(self) -> list[float]:
        """Expected per-bin score: 100 * (p_anx - p_calm)."""
        return [100.0 * (pa - pc) for pa, pc in zip(self.p_anx, self.p_calm)]

    @classmethod
    def from_dict(cls, obj: dict) -> ArcSpec:
        try:
            bins = tuple(int(b) for b in obj["bins"])
            p_anx = _per_bin(obj["p_anx"], len(bins))
            p_calm = _per_bin(obj["p_calm"], len(bins))
            lo, hi = obj["tokens_per_post"]
            return cls(
                bins=bins,
                p_anx=p_anx,
                p_calm=p_calm,
                posts_per_bin=int(obj["posts_per_bin"]),
                tokens_per_post=(int(lo), int(hi)),
                seed=int(obj["seed"]),
                axis=str(obj.get("axis", "hour")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ArcSpecError):
                raise
            raise ArcSpecError(f"bad arc spec: {exc}") from None

    @classmethod
    def from_json(cls, path: str) -> ArcSpec:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        if not isinstance(obj, dict):
            raise ArcSpecError("arc spec must be a JSON object")
        return cls.from_dict(obj)


def _per_bin(value, n_bins: int) -> tuple[float, ...]:
    # A scalar probability broadcasts to every bin.
    if isinstance(value, (int, float)):
        return (float(value),) * n_bins
    out = tuple(float(v) for v in value)
    if len(out) != n_bins:
        raise ArcSpecError(f"expected {n_bins} per-bin values, got {len(out)}")
    return out


@dataclass(frozen=True)
class ArcReport:
    axis: str
    bins: tuple[int, ...]
    planted: tuple[float, ...]
    recovered: tuple[float, ...]
    pearson_r: float
    spearman_r: float

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "bins": list(self.bins),
            "planted": list(self.planted),
            "recovered": list(self.recovered),
            "pearson_r": self.pearson_r,
            "spearman_r": self.spearman_r,
        }


def _class_terms(lexicon: Lexicon) -> dict[TermClass, tuple[str, ...]]:
    terms = {cls: lexicon.terms_of_class(cls) for cls in
             (TermClass.ANXIETY, TermClass.CALM, TermClass.NEUTRAL)}
    missing = [cls.value for cls, ts in terms.items() if not ts]
    if missing:
        raise ArcSpecError(
            f"lexicon must contain at least one term of each class; missing: {missing}"
        )
    return terms


def _pick(rng: random.Random, pool: Sequence[str]) -> str:
    # Derived from random() only; see module docstring.
    return pool[int(rng.random() * len(pool))]


def _timestamp(spec: ArcSpec, bin_id: int, rng: random.Random) -> str:
    minute = int(rng.random() * 60)
    second = int(rng.random() * 60)
    if spec.axis == "hour":
        return f"{_HOUR_AXIS_DATE}T{bin_id:02d}:{minute:02d}:{second:02d}Z"
    day = _WEEKDAY_AXIS_MONDAY + bin_id
    return f"2021-06-{day:02d}T12:{minute:02d}:{second:02d}Z"


def generate(spec: ArcSpec, lexicon: Lexicon, sink: IO[str]) -> int:
    """Write a planted-arc corpus as JSONL; returns the number of posts.

    Deterministic: identical (spec, lexicon) inputs yield byte-identical
    output. Posts carry UTC timestamps placed inside their bin.
    """
    terms = _class_terms(lexicon)
    anx_pool = terms[TermClass.ANXIETY]
    calm_pool = terms[TermClass.CALM]
    neutral_pool = terms[TermClass.NEUTRAL]
    lo, hi = spec.tokens_per_post
    span = hi - lo + 1

    n_posts = 0
    for idx, bin_id in enumerate(spec.bins):
        rng = random.Random(spec.seed * 1_000_003 + idx)
        p_anx = spec.p_anx[idx]
        p_cut = p_anx + spec.p_calm[idx]
        for i in range(spec.posts_per_bin):
            stamp = _timestamp(spec, bin_id, rng)
            n_tokens = lo + int(rng.random() * span)
            words = []
            for _ in range(n_tokens):
                r = rng.random()
                if r < p_anx:
                    words.append(_pick(rng, anx_pool))
                elif r < p_cut:
                    words.append(_pick(rng, calm_pool))
                else:
                    words.append(_pick(rng, neutral_pool))
            record = {
                "id": f"{spec.axis}{bin_id:02d}-{i}",
                "text": " ".join(words),
                "timestamp_utc": stamp,
                "timezone": "UTC",
            }
            sink.write(json.dumps(record, ensure_ascii=False) + "\n")
            n_posts += 1
    return n_posts


def generate_file(spec: ArcSpec, lexicon: Lexicon, path: str) -> int:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        return generate(spec, lexicon, fh)


def evaluate_arc(
    corpus_path: str,
    lexicon: Lexicon,
    spec: ArcSpec,
    workers: int = 1,
) -> ArcReport:
    """Run the full pipeline over a corpus and compare recovered vs planted arc."""
    result: ScanResult = scan_corpus(
        corpus_path, lexicon=lexicon, families=(spec.axis,), workers=workers
    )
    bins = result.hours if spec.axis == "hour" else result.weekdays
    recovered = []
    for bin_id in spec.bins:
        agg = bins[bin_id]
        if agg.n_posts == 0:
            raise EmptyBinError(spec.axis, bin_id)
        recovered.append(agg.micro_score)
    planted = spec.planted_scores
    return ArcReport(
        axis=spec.axis,
        bins=tuple(spec.bins),
        planted=tuple(planted),
        recovered=tuple(recovered),
        pearson_r=pearson(planted, recovered),
        spearman_r=spearman(planted, recovered),
    )
