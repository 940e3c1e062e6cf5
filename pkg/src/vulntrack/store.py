"""Corpus store: persistable collection of security reports.

Records arrive as UTF-8 JSONL with fields id / date / description.
Malformed lines are skipped with a warning, duplicate ids overwrite the
prior record (reports get amended over time), and raw text round-trips
byte-exactly.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from datetime import date
from typing import Iterable, Iterator

from .errors import DocumentNotFoundError, InvalidDateRangeError

log = logging.getLogger(__name__)


@dataclass
class Document:
    """One security report.

    token_count is n_S, the length of the pipeline's keyword stream for
    raw_text; it is 0 until the document has been indexed.
    """

    doc_id: str
    created_date: date
    raw_text: str
    token_count: int = 0
    indexed: bool = False


@dataclass
class CorpusStats:
    total_documents: int
    date_min: date | None
    date_max: date | None


@dataclass
class ImportOutcome:
    accepted: int
    replaced: list[str]  # previously stored ids that were overwritten


class DocumentStore:
    def __init__(self) -> None:
        self._docs: dict[str, Document] = {}

    def __len__(self) -> int:
        return len(self._docs)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def documents(self) -> Iterator[Document]:
        return iter(self._docs.values())

    def ids(self) -> list[str]:
        return list(self._docs)

    def import_records(self, lines: Iterable[str]) -> ImportOutcome:
        """Parse JSONL records into the store.

        Returns the number of accepted records plus which accepted ids
        replaced an existing document (the caller decides whether that
        forces a reindex).
        """
        accepted = 0
        replaced: list[str] = []
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            doc = self._parse_record(line, lineno)
            if doc is None:
                continue
            if doc.doc_id in self._docs:
                replaced.append(doc.doc_id)
            self._docs[doc.doc_id] = doc
            accepted += 1
        return ImportOutcome(accepted=accepted, replaced=replaced)

    @staticmethod
    def _parse_record(line: str, lineno: int) -> Document | None:
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            log.warning("corpus line %d: not valid JSON, skipped", lineno)
            return None
        if not isinstance(record, dict):
            log.warning("corpus line %d: not an object, skipped", lineno)
            return None
        doc_id = record.get("id")
        raw_date = record.get("date")
        text = record.get("description")
        if not isinstance(doc_id, str) or not doc_id:
            log.warning("corpus line %d: missing id, skipped", lineno)
            return None
        if not isinstance(text, str):
            log.warning("corpus line %d: missing description, skipped", lineno)
            return None
        if not isinstance(raw_date, str):
            log.warning("corpus line %d: missing date, skipped", lineno)
            return None
        try:
            created = date.fromisoformat(raw_date)
        except ValueError:
            log.warning("corpus line %d: unparseable date %r, skipped",
                        lineno, raw_date)
            return None
        return Document(doc_id=doc_id, created_date=created, raw_text=text)

    def get_document(self, doc_id: str) -> Document:
        doc = self._docs.get(doc_id)
        if doc is None:
            raise DocumentNotFoundError(f"unknown document id {doc_id!r}")
        return doc

    def list_by_date_range(self, from_date: date, to_date: date) -> list[str]:
        """doc_ids with from <= created_date <= to, date-ascending, ties
        lexicographic by id."""
        if from_date > to_date:
            raise InvalidDateRangeError(
                f"range start {from_date} is after end {to_date}")
        hits = [
            doc for doc in self._docs.values()
            if from_date <= doc.created_date <= to_date
        ]
        hits.sort(key=lambda d: (d.created_date, d.doc_id))
        return [d.doc_id for d in hits]

    def stats(self) -> CorpusStats:
        if not self._docs:
            return CorpusStats(0, None, None)
        dates = [d.created_date for d in self._docs.values()]
        return CorpusStats(len(self._docs), min(dates), max(dates))

    # Persistence helpers (the engine handles files and atomicity).

    def dump_lines(self) -> Iterator[str]:
        for doc_id in sorted(self._docs):
            doc = self._docs[doc_id]
            yield json.dumps(
                {
                    "id": doc.doc_id,
                    "date": doc.created_date.isoformat(),
                    "description": doc.raw_text,
                    "token_count": doc.token_count,
                    "indexed": doc.indexed,
                },
                ensure_ascii=False,
            )

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "DocumentStore":
        store = cls()
        for line in lines:
            if not line.strip():
                continue
            record = json.loads(line)
            store._docs[record["id"]] = Document(
                doc_id=record["id"],
                created_date=date.fromisoformat(record["date"]),
                raw_text=record["description"],
                token_count=int(record.get("token_count", 0)),
                indexed=bool(record.get("indexed", False)),
            )
        return store
