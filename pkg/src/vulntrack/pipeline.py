"""Text pipeline: tokenize with byte positions, correct, stem.

Raw report text becomes an ordered keyword stream. Tokens carry byte
offsets into the UTF-8 encoding of the untouched text so occurrences can
be highlighted later; offsets therefore reference the original bytes,
never the lowercased form. The keyword dictionary records every surface
the engine knows about, split into curated English words, domain terms
(exempt from stemming), and unknown terms discovered during indexing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

from .errors import LoadFailureError
from .stemmer import stem

log = logging.getLogger(__name__)

KIND_ENGLISH = "english"
KIND_DOMAIN = "domain"
KIND_UNKNOWN = "unknown"
KINDS = (KIND_ENGLISH, KIND_DOMAIN, KIND_UNKNOWN)


@dataclass
class Token:
    """One keyword occurrence.

    surface is the normalized form; original is the exact text found in
    the document, and raw bytes [byte_start, byte_end) reproduce it.
    """

    surface: str
    byte_start: int
    byte_end: int
    original: str


@dataclass
class KeywordEntry:
    surface: str
    kind: str
    document_frequency: int = 0
    occurrence_total: int = 0


class CorrectionMap:
    """Misspelled surface -> corrected surface, chain-free.

    A corrected surface is never itself a key, so applying the map twice
    equals applying it once.
    """

    def __init__(self) -> None:
        self.entries: dict[str, str] = {}

    def __len__(self) -> int:
        return len(self.entries)

    def apply(self, surface: str) -> str:
        return self.entries.get(surface, surface)

    def add(self, wrong: str, right: str) -> bool:
        """Insert one pair; returns False (and leaves the map alone) if
        the pair would create a chain or a self-loop."""
        wrong = wrong.lower()
        right = right.lower()
        if wrong == right or right in self.entries:
            return False
        if wrong in self.entries.values():
            return False
        self.entries[wrong] = right
        return True

    def load(self, lines: Iterable[str]) -> int:
        """Load tab-separated pairs; malformed or chain-forming lines are
        skipped with a warning. Returns pairs added."""
        try:
            materialized = list(lines)
        except OSError as exc:
            raise LoadFailureError(f"cannot read correction map: {exc}") from exc
        added = 0
        for lineno, line in enumerate(materialized, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                log.warning("correction map line %d malformed, skipped", lineno)
                continue
            if self.add(parts[0].strip(), parts[1].strip()):
                added += 1
            else:
                log.warning("correction map line %d would chain, skipped", lineno)
        return added


class KeywordDictionary:
    """All keywords known to the engine, keyed by surface."""

    def __init__(self) -> None:
        self.entries: dict[str, KeywordEntry] = {}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, surface: str) -> bool:
        return surface in self.entries

    def get(self, surface: str) -> KeywordEntry | None:
        return self.entries.get(surface)

    def surfaces(self) -> list[str]:
        return sorted(self.entries)

    def ensure(self, surface: str, kind: str = KIND_UNKNOWN) -> KeywordEntry:
        entry = self.entries.get(surface)
        if entry is None:
            entry = KeywordEntry(surface=surface, kind=kind)
            self.entries[surface] = entry
        return entry

    def load(self, lines: Iterable[str], kind: str) -> int:
        """Insert one surface per line under the given kind.

        Existing domain entries are never downgraded; curated kinds
        upgrade entries previously discovered as unknown. Returns the
        number of new surfaces inserted.
        """
        if kind not in (KIND_ENGLISH, KIND_DOMAIN):
            raise ValueError(f"loadable kinds are english/domain, got {kind!r}")
        try:
            materialized = [line.strip().lower() for line in lines]
        except OSError as exc:
            raise LoadFailureError(f"cannot read word list: {exc}") from exc
        added = 0
        for surface in materialized:
            if not surface:
                continue
            entry = self.entries.get(surface)
            if entry is None:
                self.entries[surface] = KeywordEntry(surface=surface, kind=kind)
                added += 1
            elif entry.kind != KIND_DOMAIN and entry.kind != kind:
                # unknown -> curated upgrade, or english -> domain.
                entry.kind = kind
        return added


def tokenize(raw_text: str) -> list[Token]:
    """Split text into maximal alphanumeric runs with byte offsets.

    Runs split at every non-alphanumeric character (hyphens included),
    pure-digit runs and single-character runs are discarded. Offsets
    index the UTF-8 bytes of raw_text as given.
    """
    out: list[Token] = []
    pos = 0
    start = end = 0
    buf: list[str] = []
    saw_alpha = False

    def flush() -> None:
        nonlocal buf, saw_alpha
        if len(buf) >= 2 and saw_alpha:
            original = "".join(buf)
            out.append(Token(original.lower(), start, end, original))
        buf = []
        saw_alpha = False

    for ch in raw_text:
        width = len(ch.encode("utf-8"))
        if ch.isalnum():
            if not buf:
                start = pos
            buf.append(ch)
            end = pos + width
            if not saw_alpha and ch.isalpha():
                saw_alpha = True
        else:
            flush()
        pos += width
    flush()
    return out


def correct(token: Token, corrections: CorrectionMap) -> Token:
    fixed = corrections.apply(token.surface)
    if fixed == token.surface:
        return token
    return Token(fixed, token.byte_start, token.byte_end, token.original)


def normalize(token: Token, dictionary: KeywordDictionary,
              grow: bool = True) -> Token:
    """Stem the surface unless it is a registered domain term.

    A surface absent from the dictionary is stemmed and (when grow is
    set) its stem registered as a new unknown keyword.
    """
    entry = dictionary.get(token.surface)
    if entry is not None and entry.kind == KIND_DOMAIN:
        return token
    stemmed = stem(token.surface)
    if entry is None and grow:
        dictionary.ensure(stemmed, KIND_UNKNOWN)
    if stemmed == token.surface:
        return token
    return Token(stemmed, token.byte_start, token.byte_end, token.original)


def normalize_surface(surface: str, dictionary: KeywordDictionary,
                      corrections: CorrectionMap | None = None) -> str:
    """Non-mutating normalization for query-side keywords."""
    s = surface.strip().lower()
    if corrections is not None:
        s = corrections.apply(s)
    entry = dictionary.get(s)
    if entry is not None and entry.kind == KIND_DOMAIN:
        return s
    return stem(s)


@dataclass
class TextPipeline:
    """tokenize -> correct -> normalize over one dictionary snapshot."""

    dictionary: KeywordDictionary = field(default_factory=KeywordDictionary)
    corrections: CorrectionMap = field(default_factory=CorrectionMap)

    def stream(self, raw_text: str, grow: bool = True) -> list[Token]:
        return [
            normalize(correct(tok, self.corrections), self.dictionary, grow=grow)
            for tok in tokenize(raw_text)
        ]

    def keyword(self, surface: str) -> str:
        return normalize_surface(surface, self.dictionary, self.corrections)
