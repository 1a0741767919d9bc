"""Streaming corpus ingestion and timestamp localization.

Two record formats are supported:

* ``jsonl`` -- one JSON object per line with keys ``id``, ``text``,
  ``timestamp_utc``, ``timezone``;
* ``tsv`` -- four tab-separated columns in that order, with an optional
  literal header line.

Timestamps are RFC 3339; timezones are IANA names resolved through the
system timezone database. Malformed records never abort the stream: they
become counted skip events that surface in the final reports.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from functools import lru_cache
from typing import IO, Iterator
from zoneinfo import ZoneInfo, ZoneInfoNotFoundError

FORMATS = ("jsonl", "tsv")

_TSV_HEADER = "id\ttext\ttimestamp_utc\ttimezone"

# Skip details kept for reporting; the total count is always exact.
MAX_RECORDED_SKIPS = 100


class CorpusError(ValueError):
    """Fatal corpus-level failure (unreadable source, unknown format)."""


class UnknownTimezoneError(ValueError):
    """The post's timezone does not resolve in the timezone database."""

    def __init__(self, tz_name: str):
        super().__init__(f"unknown timezone {tz_name!r}")
        self.tz_name = tz_name


@dataclass(frozen=True)
class Post:
    id: str
    text: str
    timestamp_utc: datetime
    timezone: str


@dataclass(frozen=True)
class LocalTime:
    hour: int  # 0-23
    weekday: int  # 0-6, Monday = 0


@dataclass(frozen=True)
class SkipEvent:
    line_no: int
    reason: str


def parse_rfc3339(text: str) -> datetime:
    """Parse an RFC 3339 timestamp to an aware UTC datetime."""
    s = text.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    dt = datetime.fromisoformat(s)
    if dt.tzinfo is None:
        raise ValueError(f"timestamp lacks a UTC offset: {text!r}")
    return dt.astimezone(timezone.utc)


@lru_cache(maxsize=None)
def _zone(name: str) -> ZoneInfo:
    return ZoneInfo(name)


def localize(post: Post) -> LocalTime:
    """Civil local hour and weekday of the post, DST-aware.

    Raises UnknownTimezoneError if the timezone does not resolve; callers
    treat that as a skip for time-based slices only.
    """
    try:
        tz = _zone(post.timezone)
    except (ZoneInfoNotFoundError, ValueError, KeyError):
        raise UnknownTimezoneError(post.timezone) from None
    local = post.timestamp_utc.astimezone(tz)
    return LocalTime(hour=local.hour, weekday=local.weekday())


def parse_record(line: str, fmt: str) -> Post:
    """Parse one corpus line; raises ValueError with a reason on bad records."""
    if fmt == "jsonl":
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON: {exc.msg}") from None
        if not isinstance(obj, dict):
            raise ValueError("record is not a JSON object")
        missing = [k for k in ("id", "text", "timestamp_utc", "timezone") if k not in obj]
        if missing:
            raise ValueError(f"missing keys: {', '.join(missing)}")
        rid, text, ts, tz = obj["id"], obj["text"], obj["timestamp_utc"], obj["timezone"]
    elif fmt == "tsv":
        fields = line.split("\t")
        if len(fields) != 4:
            raise ValueError(f"expected 4 tab-separated fields, got {len(fields)}")
        rid, text, ts, tz = fields
    else:
        raise CorpusError(f"unknown corpus format {fmt!r}")

    if isinstance(rid, int):
        rid = str(rid)
    if not isinstance(rid, str) or not rid:
        raise ValueError("id must be a non-empty string")
    if not isinstance(text, str):
        raise ValueError("text must be a string")
    if not isinstance(tz, str) or not tz.strip():
        raise ValueError("timezone must be a non-empty string")
    if not isinstance(ts, str):
        raise ValueError("timestamp_utc must be a string")
    try:
        stamp = parse_rfc3339(ts)
    except ValueError as exc:
        raise ValueError(f"bad timestamp: {exc}") from None
    return Post(id=rid, text=text, timestamp_utc=stamp, timezone=tz.strip())


def iter_data_lines(
    source: str | IO[str] | IO[bytes], fmt: str = "jsonl"
) -> Iterator[tuple[int, str]]:
    """Yield (line_no, line) for every data line of a corpus source.

    Accepts a path, a text stream, or a byte stream (decoded as UTF-8).
    Blank lines are skipped without counting as records; an optional
    literal TSV header on line 1 is skipped. Both the streaming reader and
    the parallel scan chunker go through this single helper so they agree
    on record numbering exactly.
    """
    if fmt not in FORMATS:
        raise CorpusError(f"unknown corpus format {fmt!r}")
    if isinstance(source, str):
        try:
            fh = open(source, "r", encoding="utf-8")
        except OSError as exc:
            raise CorpusError(f"cannot read corpus: {exc}") from None
        with fh:
            yield from _iter_data_lines(fh, fmt)
    elif isinstance(source, (io.RawIOBase, io.BufferedIOBase)):
        yield from _iter_data_lines(io.TextIOWrapper(source, encoding="utf-8"), fmt)
    else:
        yield from _iter_data_lines(source, fmt)


def _iter_data_lines(lines: Iterator[str], fmt: str) -> Iterator[tuple[int, str]]:
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        if fmt == "tsv" and line_no == 1 and line == _TSV_HEADER:
            continue
        yield line_no, line


class CorpusReader:
    """Single-pass iterator over posts with skip-event accounting.

    Memory stays bounded regardless of corpus size: posts are yielded one at
    a time and only the first MAX_RECORDED_SKIPS skip details are retained
    (the counts are always exact).
    """

    def __init__(self, source: str | IO[str] | IO[bytes], fmt: str = "jsonl"):
        if fmt not in FORMATS:
            raise CorpusError(f"unknown corpus format {fmt!r}")
        self._source = source
        self.fmt = fmt
        self.n_records = 0
        self.n_yielded = 0
        self.n_skipped = 0
        self.skip_events: list[SkipEvent] = []

    def _skip(self, line_no: int, reason: str) -> None:
        self.n_skipped += 1
        if len(self.skip_events) < MAX_RECORDED_SKIPS:
            self.skip_events.append(SkipEvent(line_no, reason))

    def __iter__(self) -> Iterator[Post]:
        for line_no, line in iter_data_lines(self._source, self.fmt):
            self.n_records += 1
            try:
                post = parse_record(line, self.fmt)
            except ValueError as exc:
                self._skip(line_no, str(exc))
                continue
            self.n_yielded += 1
            yield post


def open_corpus(source: str | IO[str] | IO[bytes], fmt: str = "jsonl") -> CorpusReader:
    """Open a corpus for single-pass streaming; see CorpusReader."""
    return CorpusReader(source, fmt)
