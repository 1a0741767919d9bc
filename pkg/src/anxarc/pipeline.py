"""Corpus scan: stream posts, score them, and fill per-slice bin aggregates.

Parallelism model: the input is cut into fixed-size line chunks, workers
scan private aggregates per chunk, and partial results merge back in chunk
order. Counters are exact integer sums and score samples concatenate in
stream order, so the final result is identical for any worker count.
"""

from __future__ import annotations

import multiprocessing
from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from . import _kernel
from .corpus import SkipEvent, UnknownTimezoneError, iter_data_lines, localize, parse_record
from .lexicon import Lexicon
from .scoring import DEFAULT_SAMPLE_CAP, BinAggregate
from .slicer import PRONOUNS, Tense, VerbTables, classify_tense, load_verb_tables, pronoun_keys

FAMILIES = ("hour", "weekday", "tense", "pronoun")

# Fixed chunk size: results must not depend on the worker count, so the
# chunking itself must not either.
CHUNK_LINES = 32768

MAX_RECORDED_SKIPS = 50

OVERALL_KEY = "all"
PRONOUN_OVERALL_KEY = "all_pronoun"


@dataclass
class _ScanState:
    fmt: str
    families: frozenset[str]
    class_map: dict[str, int]
    tables: VerbTables | None
    cap: int

    @property
    def need_tokens(self) -> bool:
        return "tense" in self.families or "pronoun" in self.families


class ScanResult:
    """Aggregates for one scan: overall bin plus the requested slice families."""

    def __init__(self, families: Iterable[str], cap: int = DEFAULT_SAMPLE_CAP):
        self.families = frozenset(families)
        unknown = self.families.difference(FAMILIES)
        if unknown:
            raise ValueError(f"unknown slice families: {sorted(unknown)}")
        self.cap = cap
        self.overall = BinAggregate.for_key(OVERALL_KEY, cap)
        self.hours: dict[int, BinAggregate] = {}
        self.weekdays: dict[int, BinAggregate] = {}
        self.tenses: dict[Tense, BinAggregate] = {}
        self.pronouns: dict[str, BinAggregate] = {}
        self.pronoun_overall = BinAggregate.for_key(PRONOUN_OVERALL_KEY, cap)
        if "hour" in self.families:
            self.hours = {h: BinAggregate.for_key(f"hour:{h}", cap) for h in range(24)}
        if "weekday" in self.families:
            self.weekdays = {d: BinAggregate.for_key(f"weekday:{d}", cap) for d in range(7)}
        if "tense" in self.families:
            self.tenses = {t: BinAggregate.for_key(f"tense:{t.value}", cap) for t in Tense}
        if "pronoun" in self.families:
            self.pronouns = {p: BinAggregate.for_key(f"pronoun:{p}", cap) for p in PRONOUNS}
        self.n_records = 0
        self.n_parse_skips = 0
        self.n_empty_skips = 0
        self.n_tz_skips = 0
        self.skip_events: list[SkipEvent] = []

    @property
    def n_scored_posts(self) -> int:
        return self.overall.n_posts

    def skip_counts(self) -> dict[str, int]:
        return {
            "n_records": self.n_records,
            "n_parse_skips": self.n_parse_skips,
            "n_empty_skips": self.n_empty_skips,
            "n_tz_skips": self.n_tz_skips,
        }

    def get_bin(self, family: str, key: str) -> BinAggregate:
        """Look up one bin by family name and string key (CLI slice syntax)."""
        if family == "hour":
            bins: dict = self.hours
            parsed: object = int(key)
            if not 0 <= parsed <= 23:
                raise KeyError(key)
        elif family == "weekday":
            bins = self.weekdays
            parsed = int(key)
            if not 0 <= parsed <= 6:
                raise KeyError(key)
        elif family == "tense":
            bins = self.tenses
            parsed = Tense(key)
        elif family == "pronoun":
            bins = self.pronouns
            parsed = key
        elif family == "overall":
            return self.overall if key != PRONOUN_OVERALL_KEY else self.pronoun_overall
        else:
            raise KeyError(family)
        return bins[parsed]

    def merge_from(self, other: ScanResult) -> None:
        self.overall.merge_from(other.overall)
        self.pronoun_overall.merge_from(other.pronoun_overall)
        for key, agg in other.hours.items():
            self.hours[key].merge_from(agg)
        for key, agg in other.weekdays.items():
            self.weekdays[key].merge_from(agg)
        for tense, agg in other.tenses.items():
            self.tenses[tense].merge_from(agg)
        for pron, agg in other.pronouns.items():
            self.pronouns[pron].merge_from(agg)
        self.n_records += other.n_records
        self.n_parse_skips += other.n_parse_skips
        self.n_empty_skips += other.n_empty_skips
        self.n_tz_skips += other.n_tz_skips
        room = MAX_RECORDED_SKIPS - len(self.skip_events)
        if room > 0:
            self.skip_events.extend(other.skip_events[:room])


def _scan_chunk(chunk: list[tuple[int, str]], st: _ScanState) -> ScanResult:
    res = ScanResult(st.families, st.cap)
    class_map = st.class_map
    need_tokens = st.need_tokens
    need_time = "hour" in st.families or "weekday" in st.families
    hours = res.hours
    weekdays = res.weekdays

    for line_no, line in chunk:
        res.n_records += 1
        try:
            post = parse_record(line, st.fmt)
        except ValueError as exc:
            res.n_parse_skips += 1
            if len(res.skip_events) < MAX_RECORDED_SKIPS:
                res.skip_events.append(SkipEvent(line_no, str(exc)))
            continue

        if need_tokens:
            tokens = _kernel.tokenize(post.text)
            n_tok, n_anx, n_calm = _kernel.score_tokens(tokens, class_map)
        else:
            tokens = None
            n_tok, n_anx, n_calm = _kernel.score_text(post.text, class_map)
        if n_tok == 0:
            res.n_empty_skips += 1
            continue

        res.overall.update_counts(n_tok, n_anx, n_calm)

        if need_time:
            try:
                local = localize(post)
            except UnknownTimezoneError:
                res.n_tz_skips += 1
            else:
                if hours:
                    hours[local.hour].update_counts(n_tok, n_anx, n_calm)
                if weekdays:
                    weekdays[local.weekday].update_counts(n_tok, n_anx, n_calm)

        if tokens is not None:
            if res.tenses:
                label = classify_tense(tokens, st.tables)
                res.tenses[label].update_counts(n_tok, n_anx, n_calm)
            if res.pronouns:
                keys = pronoun_keys(tokens)
                if keys:
                    res.pronoun_overall.update_counts(n_tok, n_anx, n_calm)
                    for key in keys:
                        res.pronouns[key].update_counts(n_tok, n_anx, n_calm)
    return res


def _chunks(
    pairs: Iterator[tuple[int, str]], chunk_lines: int
) -> Iterator[list[tuple[int, str]]]:
    chunk: list[tuple[int, str]] = []
    for pair in pairs:
        chunk.append(pair)
        if len(chunk) >= chunk_lines:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


_POOL_STATE: _ScanState | None = None


def _init_pool(state: _ScanState) -> None:
    global _POOL_STATE
    _POOL_STATE = state


def _pool_scan(chunk: list[tuple[int, str]]) -> ScanResult:
    assert _POOL_STATE is not None
    return _scan_chunk(chunk, _POOL_STATE)


def scan_corpus(
    source: str | IO[str],
    *,
    lexicon: Lexicon,
    families: Iterable[str] = FAMILIES,
    fmt: str = "jsonl",
    tables: VerbTables | None = None,
    workers: int = 1,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
    chunk_lines: int = CHUNK_LINES,
) -> ScanResult:
    """Scan a corpus and aggregate the requested slice families.

    The result is deterministic: it does not depend on the worker count
    (chunk size is fixed and partial results merge in chunk order).
    """
    families = frozenset(families)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if "tense" in families and tables is None:
        tables = load_verb_tables()
    state = _ScanState(
        fmt=fmt,
        families=families,
        class_map=lexicon.class_map,
        tables=tables,
        cap=sample_cap,
    )
    total = ScanResult(families, sample_cap)
    chunk_iter = _chunks(iter_data_lines(source, fmt), chunk_lines)

    if workers == 1:
        for chunk in chunk_iter:
            total.merge_from(_scan_chunk(chunk, state))
        return total

    # Bounded sliding window of in-flight chunks, merged strictly in
    # submission order; Pool.imap is avoided because its feeder thread
    # would buffer the whole corpus.
    with multiprocessing.Pool(workers, initializer=_init_pool, initargs=(state,)) as pool:
        pending: deque = deque()
        for chunk in chunk_iter:
            pending.append(pool.apply_async(_pool_scan, (chunk,)))
            while len(pending) > 2 * workers:
                total.merge_from(pending.popleft().get())
        while pending:
            total.merge_from(pending.popleft().get())
    return total
