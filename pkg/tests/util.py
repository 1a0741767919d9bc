"""Shared helpers for the test suite.

``brute_force_recount`` is the independent single-threaded oracle used to
check pipeline aggregation: it re-reads the corpus with plain json/dict
code, classifies tokens through ``Lexicon.classify`` (not the kernel's
class map), and accumulates bare counter lists -- no BinAggregate, no
merge machinery.
"""

from __future__ import annotations

import json
import random
from datetime import datetime, timezone
from zoneinfo import ZoneInfo

from anxarc.lexicon import Lexicon, TermClass, loads_lexicon
from anxarc.slicer import PRONOUNS, VerbTables, classify_tense
from anxarc.textproc import tokenize

ANX_WORDS = [f"anx{i:03d}" for i in range(30)]
CALM_WORDS = [f"calm{i:03d}" for i in range(20)]
NEUTRAL_WORDS = [f"neut{i:03d}" for i in range(50)]

TIMEZONES = [
    "UTC",
    "America/New_York",
    "America/Los_Angeles",
    "America/Toronto",
    "Europe/London",
    "Asia/Tokyo",
    "Australia/Sydney",
]

VERB_WORDS = [
    "went", "walked", "is", "are", "was", "runs", "hope", "will",
    "tomorrow", "going", "believe", "said", "working", "need",
]
FILLER_WORDS = ["day", "thing", "coffee", "city", "photo", "music", "sky", "next"]


def lexicon_text() -> str:
    rows = ["term\tassociation"]
    rows += [f"{w}\t2.5" for w in ANX_WORDS]
    rows += [f"{w}\t-2.5" for w in CALM_WORDS]
    rows += [f"{w}\t0.0" for w in NEUTRAL_WORDS]
    return "\n".join(rows) + "\n"


def make_lexicon() -> Lexicon:
    return loads_lexicon(lexicon_text())


def random_post_text(rng: random.Random) -> str:
    pools = [ANX_WORDS, CALM_WORDS, NEUTRAL_WORDS, list(PRONOUNS), VERB_WORDS, FILLER_WORDS]
    n = rng.randint(0, 14)
    words = [rng.choice(rng.choice(pools)) for _ in range(n)]
    if rng.random() < 0.15:
        words.append("http://t.co/xyz")
    if rng.random() < 0.1:
        words.append("@someone")
    if rng.random() < 0.1:
        words.append("#mood")
    rng.shuffle(words)
    return " ".join(words)


def random_corpus_lines(rng: random.Random, n_posts: int, bad_tz_rate: float = 0.02) -> list[str]:
    """Well-formed JSONL lines with varied times, zones, and content."""
    lines = []
    start = datetime(2015, 1, 1, tzinfo=timezone.utc).timestamp()
    end = datetime(2021, 12, 31, tzinfo=timezone.utc).timestamp()
    for i in range(n_posts):
        stamp = datetime.fromtimestamp(
            start + rng.random() * (end - start), tz=timezone.utc
        ).strftime("%Y-%m-%dT%H:%M:%SZ")
        tz = "Mars/Colony" if rng.random() < bad_tz_rate else rng.choice(TIMEZONES)
        record = {
            "id": str(i),
            "text": random_post_text(rng),
            "timestamp_utc": stamp,
            "timezone": tz,
        }
        lines.append(json.dumps(record, ensure_ascii=False))
    return lines


def _zero() -> list[int]:
    return [0, 0, 0, 0]  # posts, tokens, anx, calm


def _bump(counter: list[int], n_tok: int, n_anx: int, n_calm: int) -> None:
    counter[0] += 1
    counter[1] += n_tok
    counter[2] += n_anx
    counter[3] += n_calm


def brute_force_recount(path: str, lexicon: Lexicon, tables: VerbTables) -> dict:
    """Independent single-threaded recount of every bin counter."""
    counts = {
        "overall": _zero(),
        "pronoun_overall": _zero(),
        "hour": {h: _zero() for h in range(24)},
        "weekday": {d: _zero() for d in range(7)},
        "tense": {t: _zero() for t in ("past", "present", "future", "noverb")},
        "pronoun": {p: _zero() for p in PRONOUNS},
        "n_records": 0,
        "n_empty": 0,
        "n_tz": 0,
    }
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            if not raw.strip():
                continue
            counts["n_records"] += 1
            obj = json.loads(raw)
            toks = tokenize(obj["text"])
            if not toks:
                counts["n_empty"] += 1
                continue
            n_tok = len(toks)
            n_anx = sum(1 for t in toks if lexicon.classify(t) is TermClass.ANXIETY)
            n_calm = sum(1 for t in toks if lexicon.classify(t) is TermClass.CALM)
            _bump(counts["overall"], n_tok, n_anx, n_calm)

            try:
                zone = ZoneInfo(obj["timezone"])
            except Exception:
                counts["n_tz"] += 1
            else:
                stamp = datetime.fromisoformat(
                    obj["timestamp_utc"].replace("Z", "+00:00")
                ).astimezone(zone)
                _bump(counts["hour"][stamp.hour], n_tok, n_anx, n_calm)
                _bump(counts["weekday"][stamp.weekday()], n_tok, n_anx, n_calm)

            label = classify_tense(toks, tables).value
            _bump(counts["tense"][label], n_tok, n_anx, n_calm)

            present = set(toks) & set(PRONOUNS)
            if present:
                _bump(counts["pronoun_overall"], n_tok, n_anx, n_calm)
                for p in present:
                    _bump(counts["pronoun"][p], n_tok, n_anx, n_calm)
    return counts


def counters_of(agg) -> list[int]:
    return [agg.n_posts, agg.n_tokens, agg.n_anx, agg.n_calm]
