"""Slice assignment: hour/weekday bins, rule-based tense labels, pronoun keys.

Tense detection is deliberately a deterministic, auditable heuristic: small
bundled tables of irregular/base verb forms plus suffix rules, no POS
tagger. Tables are user-replaceable via a directory of plain-text files
(``irregular_past.txt``, ``irregular_base.txt``, ``ed_stoplist.txt``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .corpus import LocalTime


class Tense(enum.Enum):
    PAST = "past"
    PRESENT = "present"
    FUTURE = "future"
    NO_VERB = "noverb"


# The fixed pronoun key set. "us" is deliberately absent: in lower-cased
# corpora it is indistinguishable from the country abbreviation.
PRONOUNS: tuple[str, ...] = ("i", "me", "you", "he", "him", "she", "her", "we", "they", "them")
_PRONOUN_SET = frozenset(PRONOUNS)

AUX_PRESENT = frozenset({"is", "are", "am", "do", "does", "have", "has", "can", "may", "must"})
AUX_PAST = frozenset({"was", "were", "did", "had", "could", "might"})

# Future-signal surface forms; a post is future tense when one of these
# co-occurs with a present-tense verb.
FUTURE_SIGNAL_WORDS = frozenset({"will", "won't", "shall", "expect", "believe", "hope", "tomorrow"})
FUTURE_BIGRAM_FIRST = "next"
FUTURE_BIGRAM_SECOND = frozenset({"day", "week", "month", "year"})

# Tense rules are applied in this order; the first match wins.
TENSE_PRECEDENCE = "past>future>present"


class VerbTableError(ValueError):
    """A verb table file is missing, unreadable, or empty."""


@dataclass(frozen=True)
class VerbTables:
    irregular_past: frozenset[str]
    irregular_base: frozenset[str]
    ed_stoplist: frozenset[str]

    def __post_init__(self):
        if not self.irregular_past or not self.irregular_base:
            raise VerbTableError("irregular verb tables must be non-empty")


def _read_wordlist(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


_TABLE_FILES = ("irregular_past.txt", "irregular_base.txt", "ed_stoplist.txt")


def load_verb_tables(directory: str | Path | None = None) -> VerbTables:
    """Load verb tables from a directory, or the bundled defaults."""
    texts = []
    if directory is None:
        pkg_data = resources.files("anxarc") / "data"
        for name in _TABLE_FILES:
            texts.append((pkg_data / name).read_text(encoding="utf-8"))
    else:
        base = Path(directory)
        for name in _TABLE_FILES:
            path = base / name
            try:
                texts.append(path.read_text(encoding="utf-8"))
            except OSError as exc:
                raise VerbTableError(f"cannot read verb table {path}: {exc}") from None
    past, base_forms, stoplist = (_read_wordlist(t) for t in texts)
    return VerbTables(past, base_forms, stoplist)


def detect_past_verb(tokens: Iterable[str], tables: VerbTables) -> bool:
    """True iff some token looks like a past-tense verb form."""
    past = tables.irregular_past
    stop = tables.ed_stoplist
    for tok in tokens:
        if tok in past or tok in AUX_PAST:
            return True
        if len(tok) >= 4 and tok.endswith("ed") and tok not in stop:
            return True
    return False


def detect_present_verb(tokens: Iterable[str], tables: VerbTables) -> bool:
    """True iff some token looks like a present-tense verb form."""
    base = tables.irregular_base
    for tok in tokens:
        if tok in AUX_PRESENT or tok in base:
            return True
        if len(tok) >= 5 and tok.endswith("ing"):
            return True
        if tok.endswith("s"):
            if tok[:-1] in base:
                return True
            if tok.endswith("es") and tok[:-2] in base:
                return True
    return False


def has_future_signal(tokens: Iterable[str]) -> bool:
    """True iff a future-signal word or 'next day/week/month/year' bigram occurs."""
    prev = None
    for tok in tokens:
        if tok in FUTURE_SIGNAL_WORDS:
            return True
        if prev == FUTURE_BIGRAM_FIRST and tok in FUTURE_BIGRAM_SECOND:
            return True
        prev = tok
    return False


def classify_tense(tokens: list[str], tables: VerbTables) -> Tense:
    """Assign exactly one tense label; precedence past > future > present."""
    if detect_past_verb(tokens, tables):
        return Tense.PAST
    if detect_present_verb(tokens, tables):
        if has_future_signal(tokens):
            return Tense.FUTURE
        return Tense.PRESENT
    return Tense.NO_VERB


def pronoun_keys(tokens: Iterable[str]) -> set[str]:
    """Distinct pronoun keys appearing among the tokens; possibly empty.

    A post with several pronouns belongs to every matching pronoun bin.
    """
    return set(_PRONOUN_SET.intersection(tokens))


def time_keys(local: LocalTime) -> tuple[int, int]:
    """(hour_bin, weekday_bin) projection of a LocalTime."""
    return (local.hour, local.weekday)
