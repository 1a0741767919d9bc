"""Word-anxiety association lexicon: loading, validation, and term classification.

The lexicon file format is two-column TSV, ``term<TAB>association``, one
record per line, UTF-8, with an optional literal ``term<TAB>association``
header. Associations are real values in [-3.0, +3.0]; positive means
anxiety-associated, negative means calmness-associated. Terms are single
words and are lower-cased at load.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, NamedTuple

ASSOC_MIN = -3.0
ASSOC_MAX = 3.0

DEFAULT_TAU_ANX = 1.0
DEFAULT_TAU_CALM = -1.0

_HEADER = ("term", "association")


class LexiconError(ValueError):
    """Base class for lexicon load/validation failures."""


class LexiconParseError(LexiconError):
    """A malformed record; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateTermError(LexiconError):
    """The same term appeared twice; carries the offending term."""

    def __init__(self, term: str, line_no: int):
        super().__init__(f"line {line_no}: duplicate term {term!r}")
        self.term = term
        self.line_no = line_no


class EmptyLexiconError(LexiconError):
    """The source contained no records."""


class TermClass(enum.Enum):
    ANXIETY = "anxiety"
    CALM = "calm"
    NEUTRAL = "neutral"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LexiconEntry:
    term: str
    association: float


class LexiconStats(NamedTuple):
    total: int
    n_anxiety: int
    n_calm: int
    n_neutral: int


class Lexicon:
    """Immutable term -> association map plus classification thresholds.

    Safe to share across threads and processes after load. ``class_map``
    is the compact term -> {ANX, CALM} dict consumed by the scoring kernels.
    """

    __slots__ = ("_entries", "tau_anx", "tau_calm", "_class_map")

    def __init__(self, entries: Iterable[LexiconEntry], tau_anx: float, tau_calm: float):
        if not (tau_calm < 0.0 < tau_anx):
            raise LexiconError(
                f"thresholds must satisfy tau_calm < 0 < tau_anx, "
                f"got ({tau_anx}, {tau_calm})"
            )
        self.tau_anx = float(tau_anx)
        self.tau_calm = float(tau_calm)
        self._entries: dict[str, LexiconEntry] = {}
        for e in entries:
            if e.term in self._entries:
                raise DuplicateTermError(e.term, 0)
            self._entries[e.term] = e
        class_map: dict[str, int] = {}
        for term, e in self._entries.items():
            if e.association >= self.tau_anx:
                class_map[term] = 1
            elif e.association <= self.tau_calm:
                class_map[term] = 2
        self._class_map = class_map

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, term: str) -> bool:
        return term in self._entries

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self._entries.values())

    def association(self, term: str) -> float | None:
        e = self._entries.get(term)
        return None if e is None else e.association

    @property
    def class_map(self) -> dict[str, int]:
        return self._class_map

    def classify(self, term: str) -> TermClass:
        """Classify a normalized term; Unknown for out-of-vocabulary terms."""
        e = self._entries.get(term)
        if e is None:
            return TermClass.UNKNOWN
        if e.association >= self.tau_anx:
            return TermClass.ANXIETY
        if e.association <= self.tau_calm:
            return TermClass.CALM
        return TermClass.NEUTRAL

    def terms_of_class(self, cls: TermClass) -> tuple[str, ...]:
        """All lexicon terms of the given class, sorted for determinism."""
        return tuple(sorted(t for t in self._entries if self.classify(t) is cls))

    def dump(self, sink: IO[str]) -> None:
        """Serialize back to the TSV format accepted by load_lexicon."""
        sink.write("term\tassociation\n")
        for e in self._entries.values():
            sink.write(f"{e.term}\t{e.association!r}\n")


def classify_term(lexicon: Lexicon, term: str) -> TermClass:
    return lexicon.classify(term)


def lexicon_stats(lexicon: Lexicon) -> LexiconStats:
    """Counts of anxiety/calm/neutral entries; always partitions the total."""
    n_anx = n_calm = n_neutral = 0
    for e in lexicon:
        if e.association >= lexicon.tau_anx:
            n_anx += 1
        elif e.association <= lexicon.tau_calm:
            n_calm += 1
        else:
            n_neutral += 1
    return LexiconStats(len(lexicon), n_anx, n_calm, n_neutral)


def load_lexicon(
    source: str | IO[bytes] | IO[str],
    thresholds: tuple[float, float] = (DEFAULT_TAU_ANX, DEFAULT_TAU_CALM),
) -> Lexicon:
    """Load a TSV lexicon from a path or an open stream.

    Raises LexiconParseError, DuplicateTermError, or EmptyLexiconError on
    malformed input; the returned Lexicon is immutable.
    """
    tau_anx, tau_calm = thresholds
    if not (tau_calm < 0.0 < tau_anx):
        raise LexiconError(
            f"thresholds must satisfy tau_calm < 0 < tau_anx, got {thresholds}"
        )
    if isinstance(source, str):
        with open(source, "rb") as fh:
            return load_lexicon(fh, thresholds)

    raw = source.read()
    text = raw.decode("utf-8") if isinstance(raw, bytes) else raw

    entries: dict[str, LexiconEntry] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise LexiconParseError(
                line_no, f"expected 2 tab-separated fields, got {len(fields)}"
            )
        term, assoc_text = fields[0].strip(), fields[1].strip()
        if line_no == 1 and (term, assoc_text) == _HEADER:
            continue
        term = term.lower()
        if not term:
            raise LexiconParseError(line_no, "empty term")
        if any(ch.isspace() for ch in term):
            raise LexiconParseError(line_no, f"term contains whitespace: {term!r}")
        try:
            assoc = float(assoc_text)
        except ValueError:
            raise LexiconParseError(
                line_no, f"non-numeric association: {assoc_text!r}"
            ) from None
        if not (ASSOC_MIN <= assoc <= ASSOC_MAX):
            raise LexiconParseError(
                line_no,
                f"association {assoc} outside [{ASSOC_MIN}, {ASSOC_MAX}]",
            )
        if term in entries:
            raise DuplicateTermError(term, line_no)
        entries[term] = LexiconEntry(term, assoc)

    if not entries:
        raise EmptyLexiconError("lexicon source contains no records")
    return Lexicon(entries.values(), tau_anx, tau_calm)


def loads_lexicon(
    text: str,
    thresholds: tuple[float, float] = (DEFAULT_TAU_ANX, DEFAULT_TAU_CALM),
) -> Lexicon:
    """Convenience wrapper: load a lexicon from an in-memory string."""
    return load_lexicon(io.StringIO(text), thresholds)
