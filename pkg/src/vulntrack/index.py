"""Inverted index: positional postings, frequencies, co-occurrence.

Each keyword maps to the documents containing it and the exact token
ordinals and byte spans of every occurrence. Keyword pair co-occurrence
is accumulated over a symmetric sliding window with 1/distance weights;
weights are kept internally as integer multiples of 1/lcm(1..W) so that
retracting a document on reindex restores counts exactly, with no
floating-point residue.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    DocumentNotIndexedError,
    UndefinedScoreError,
)
from .pipeline import KeywordDictionary, Token

Position = tuple[int, int, int]  # (token_ordinal, byte_start, byte_end)

DEFAULT_WINDOW = 10


@dataclass
class Posting:
    doc_id: str
    positions: list[Position]


@dataclass
class IndexSummary:
    doc_id: str
    distinct_keywords: int
    token_count: int


class CooccurrenceTable:
    """Sparse symmetric keyword-pair weights X_ab."""

    def __init__(self, window: int = DEFAULT_WINDOW) -> None:
        if window < 1:
            raise ValueError("window must be >= 1")
        self.window = window
        # All 1/d weights for d <= window are exact multiples of 1/unit.
        self.unit = math.lcm(*range(1, window + 1))
        self._units: dict[tuple[str, str], int] = {}

    @staticmethod
    def _key(a: str, b: str) -> tuple[str, str]:
        return (a, b) if a <= b else (b, a)

    def __len__(self) -> int:
        return len(self._units)

    def weight(self, a: str, b: str) -> float:
        return self._units.get(self._key(a, b), 0) / self.unit

    def accumulate(self, stream: Sequence[str], sign: int = 1) -> None:
        """Add (or with sign=-1 subtract) window-pair weights of one
        document's keyword stream."""
        window = self.window
        units = self._units
        n = len(stream)
        for i in range(n):
            a = stream[i]
            for j in range(i + 1, min(i + window + 1, n)):
                key = self._key(a, stream[j])
                value = units.get(key, 0) + sign * (self.unit // (j - i))
                if value:
                    units[key] = value
                else:
                    units.pop(key, None)

    def pairs(self) -> Iterator[tuple[str, str, float]]:
        for (a, b), units in self._units.items():
            yield a, b, units / self.unit

    def keywords(self) -> set[str]:
        out: set[str] = set()
        for a, b in self._units:
            out.add(a)
            out.add(b)
        return out

    # Persistence helpers.

    def to_payload(self) -> dict:
        return {
            "window": self.window,
            "unit": self.unit,
            "entries": [
                [a, b, units]
                for (a, b), units in sorted(self._units.items())
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "CooccurrenceTable":
        table = cls(window=int(payload["window"]))
        for a, b, units in payload["entries"]:
            table._units[(a, b)] = int(units)
        return table


class InvertedIndex:
    """Postings plus per-keyword counts over one dictionary.

    total_documents mirrors the corpus size N (the engine keeps it in
    sync with the store after every import); idf is ln(N / N_a).
    """

    def __init__(self, dictionary: KeywordDictionary,
                 window: int = DEFAULT_WINDOW) -> None:
        self.dictionary = dictionary
        self.cooccurrence = CooccurrenceTable(window=window)
        self.total_documents = 0
        self._postings: dict[str, dict[str, list[Position]]] = {}
        self._doc_streams: dict[str, list[str]] = {}

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._doc_streams

    def indexed_ids(self) -> list[str]:
        return list(self._doc_streams)

    def add_document(self, doc_id: str, tokens: Sequence[Token]) -> IndexSummary:
        """Index one tokenized document; reindex retracts prior state first."""
        if doc_id in self._doc_streams:
            self.remove_document(doc_id)
        stream = [tok.surface for tok in tokens]
        per_keyword: dict[str, list[Position]] = {}
        for ordinal, tok in enumerate(tokens):
            per_keyword.setdefault(tok.surface, []).append(
                (ordinal, tok.byte_start, tok.byte_end))
        for surface, positions in per_keyword.items():
            # Normalization may emit a stem with no dictionary entry yet;
            # postings and frequencies require one.
            entry = self.dictionary.ensure(surface)
            entry.document_frequency += 1
            entry.occurrence_total += len(positions)
            self._postings.setdefault(surface, {})[doc_id] = positions
        self.cooccurrence.accumulate(stream, sign=1)
        self._doc_streams[doc_id] = stream
        return IndexSummary(doc_id=doc_id,
                            distinct_keywords=len(per_keyword),
                            token_count=len(stream))

    def remove_document(self, doc_id: str) -> None:
        stream = self._doc_streams.pop(doc_id, None)
        if stream is None:
            return
        self.cooccurrence.accumulate(stream, sign=-1)
        for surface, count in Counter(stream).items():
            entry = self.dictionary.get(surface)
            if entry is not None:
                entry.document_frequency -= 1
                entry.occurrence_total -= count
            docs = self._postings.get(surface)
            if docs is not None:
                docs.pop(doc_id, None)
                if not docs:
                    self._postings.pop(surface)

    def docs_containing(self, surface: str) -> set[str]:
        return set(self._postings.get(surface, ()))

    def posting(self, surface: str, doc_id: str) -> Posting | None:
        positions = self._postings.get(surface, {}).get(doc_id)
        if positions is None:
            return None
        return Posting(doc_id=doc_id, positions=list(positions))

    def document_token_count(self, doc_id: str) -> int:
        stream = self._doc_streams.get(doc_id)
        if stream is None:
            raise DocumentNotIndexedError(f"document {doc_id!r} is not indexed")
        return len(stream)

    def term_frequency(self, surface: str, doc_id: str) -> float:
        """t(a,S) = n_aS / n_S; 0 for absent keywords and empty streams."""
        n_s = self.document_token_count(doc_id)
        if n_s == 0:
            return 0.0
        positions = self._postings.get(surface, {}).get(doc_id)
        if not positions:
            return 0.0
        return len(positions) / n_s

    def idf(self, surface: str) -> float:
        """d(a) = ln(N / N_a); undefined when the keyword occurs nowhere."""
        entry = self.dictionary.get(surface)
        if entry is None or entry.document_frequency == 0:
            raise UndefinedScoreError(
                f"keyword {surface!r} occurs in no indexed document")
        return math.log(self.total_documents / entry.document_frequency)

    def top_keywords(self, limit: int) -> list[tuple[str, int]]:
        ranked = sorted(
            ((e.surface, e.occurrence_total)
             for e in self.dictionary.entries.values()
             if e.occurrence_total > 0),
            key=lambda item: (-item[1], item[0]),
        )
        return ranked[:limit]

    # Persistence helpers.

    def to_payload(self) -> dict:
        return {
            "postings": {
                surface: {
                    doc_id: [list(p) for p in positions]
                    for doc_id, positions in sorted(docs.items())
                }
                for surface, docs in sorted(self._postings.items())
            },
            # Indexed documents whose pipeline stream came out empty have
            # no postings to rebuild the stream from.
            "empty_documents": sorted(
                doc_id for doc_id, s in self._doc_streams.items() if not s
            ),
            "cooccurrence": self.cooccurrence.to_payload(),
        }

    @classmethod
    def from_payload(cls, payload: dict,
                     dictionary: KeywordDictionary) -> "InvertedIndex":
        cooc = CooccurrenceTable.from_payload(payload["cooccurrence"])
        index = cls(dictionary, window=cooc.window)
        index.cooccurrence = cooc
        ordinals: dict[str, dict[int, str]] = {}
        for surface, docs in payload["postings"].items():
            for doc_id, positions in docs.items():
                index._postings.setdefault(surface, {})[doc_id] = [
                    (int(o), int(s), int(e)) for o, s, e in positions
                ]
                slots = ordinals.setdefault(doc_id, {})
                for o, _, _ in positions:
                    slots[int(o)] = surface
        # The ordered keyword stream of each document is implied by the
        # ordinals; rebuild it so retraction stays possible.
        for doc_id, slots in ordinals.items():
            index._doc_streams[doc_id] = [
                slots[o] for o in range(len(slots))
            ]
        for doc_id in payload.get("empty_documents", ()):
            index._doc_streams[doc_id] = []
        return index
