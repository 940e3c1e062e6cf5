"""Engine facade: one object owning store, pipeline, index, embeddings
and topics, plus the on-disk store directory.

Layout (all files live in one directory):

    meta.json         format marker and version
    config.json       engine configuration
    documents.jsonl   corpus records with index state
    dictionary.json   keyword dictionary
    corrections.json  correction map
    index.json        postings, co-occurrence
    vectors.txt       embedding vectors (word + 768 numbers per line)
    topics.json       saved topics

Every file is replaced via a temp-then-rename protocol, so a killed
process never leaves a half-written store.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from .embeddings import EmbeddingTable, EpochLoss, GloveConfig, fine_tune
from .errors import (
    InvalidDateRangeError,
    StoreError,
    StoreLockedError,
)
from .index import InvertedIndex
from .pipeline import CorrectionMap, KeywordDictionary, TextPipeline
from .store import Document, DocumentStore
from .topics import (
    DEFAULT_THETA,
    ExpansionCandidate,
    RankedResult,
    Topic,
    TopicTracker,
)
from .trends import SpikeConfig, TrendSeries, bucket_counts, detect_spikes

log = logging.getLogger(__name__)

STORE_FORMAT = "vulntrack-store"
STORE_VERSION = 1
LOCK_FILE = "service.lock"


@dataclass
class EngineConfig:
    theta_default: float = DEFAULT_THETA
    seed: int = 42
    signed_similarity: bool = False
    glove: GloveConfig = field(default_factory=GloveConfig)
    spike: SpikeConfig = field(default_factory=SpikeConfig)

    def to_payload(self) -> dict:
        return {
            "theta_default": self.theta_default,
            "seed": self.seed,
            "signed_similarity": self.signed_similarity,
            "glove": self.glove.to_payload(),
            "spike": self.spike.to_payload(),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "EngineConfig":
        return cls(
            theta_default=float(payload["theta_default"]),
            seed=int(payload["seed"]),
            signed_similarity=bool(payload.get("signed_similarity", False)),
            glove=GloveConfig.from_payload(payload["glove"]),
            spike=SpikeConfig.from_payload(payload["spike"]),
        )


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + f".tmp-{os.getpid()}")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


class TrackingEngine:
    """All engine state and operations over one store directory."""

    def __init__(self, store_path: str | Path, create: bool = False,
                 config: EngineConfig | None = None) -> None:
        self.store_path = Path(store_path)
        meta_path = self.store_path / "meta.json"
        if not meta_path.exists():
            if not create:
                raise StoreError(
                    f"no store at {self.store_path} (run import first)")
            self.store_path.mkdir(parents=True, exist_ok=True)
            self.config = config or EngineConfig()
            self.store = DocumentStore()
            self.dictionary = KeywordDictionary()
            self.corrections = CorrectionMap()
            self.index = InvertedIndex(self.dictionary)
            self.embeddings = EmbeddingTable()
            self._init_tracker()
            self.save()
            return
        self._load()
        if config is not None:
            self.config = config
            self._init_tracker()

    def _init_tracker(self) -> None:
        self.pipeline = TextPipeline(self.dictionary, self.corrections)
        self.tracker = TopicTracker(
            self.store, self.pipeline, self.index, self.embeddings,
            signed_similarity=self.config.signed_similarity)

    # Persistence.

    def _load(self) -> None:
        base = self.store_path
        try:
            meta = json.loads((base / "meta.json").read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise StoreError(f"unreadable store at {base}: {exc}") from exc
        if meta.get("format") != STORE_FORMAT:
            raise StoreError(f"{base} is not a recognized store directory")
        if meta.get("format_version") != STORE_VERSION:
            raise StoreError(
                f"store version {meta.get('format_version')} unsupported "
                f"(this build reads version {STORE_VERSION})")
        try:
            self.config = EngineConfig.from_payload(
                json.loads((base / "config.json").read_text(encoding="utf-8")))
            self.store = DocumentStore.from_lines(
                (base / "documents.jsonl").read_text(encoding="utf-8").splitlines())
            self.dictionary = _dictionary_from_payload(
                json.loads((base / "dictionary.json").read_text(encoding="utf-8")))
            self.corrections = CorrectionMap()
            self.corrections.entries.update(
                json.loads((base / "corrections.json").read_text(encoding="utf-8")))
            self.index = InvertedIndex.from_payload(
                json.loads((base / "index.json").read_text(encoding="utf-8")),
                self.dictionary)
            self.embeddings = EmbeddingTable.from_lines(
                (base / "vectors.txt").read_text(encoding="utf-8").splitlines())
            self._init_tracker()
            self.tracker.restore(
                json.loads((base / "topics.json").read_text(encoding="utf-8")))
        except (OSError, KeyError, ValueError) as exc:
            raise StoreError(f"corrupt store at {base}: {exc}") from exc
        self.index.total_documents = len(self.store)

    def save(self) -> None:
        base = self.store_path
        _write_atomic(base / "config.json",
                      json.dumps(self.config.to_payload(), indent=2) + "\n")
        docs = "\n".join(self.store.dump_lines())
        _write_atomic(base / "documents.jsonl", docs + "\n" if docs else "")
        _write_atomic(base / "dictionary.json",
                      json.dumps(_dictionary_to_payload(self.dictionary),
                                 ensure_ascii=False, sort_keys=True) + "\n")
        _write_atomic(base / "corrections.json",
                      json.dumps(self.corrections.entries, ensure_ascii=False,
                                 sort_keys=True) + "\n")
        _write_atomic(base / "index.json",
                      json.dumps(self.index.to_payload(),
                                 ensure_ascii=False) + "\n")
        vecs = "\n".join(self.embeddings.dump_lines())
        _write_atomic(base / "vectors.txt", vecs + "\n" if vecs else "")
        _write_atomic(base / "topics.json",
                      json.dumps(self.tracker.to_payload(),
                                 ensure_ascii=False) + "\n")
        # meta.json written last: its presence marks a complete store.
        _write_atomic(base / "meta.json", json.dumps(
            {"format": STORE_FORMAT, "format_version": STORE_VERSION}) + "\n")

    # Corpus operations.

    def import_documents(self, lines) -> int:
        outcome = self.store.import_records(lines)
        self.index.total_documents = len(self.store)
        # Overwrites of already-indexed documents reindex immediately so
        # postings never describe stale text.
        for doc_id in outcome.replaced:
            if doc_id in self.index:
                self._index_one(self.store.get_document(doc_id))
        return outcome.accepted

    def _index_one(self, doc: Document) -> None:
        tokens = self.pipeline.stream(doc.raw_text)
        summary = self.index.add_document(doc.doc_id, tokens)
        doc.token_count = summary.token_count
        doc.indexed = True

    def index_pending(self) -> int:
        count = 0
        for doc in self.store.documents():
            if not doc.indexed:
                self._index_one(doc)
                count += 1
        return count

    def pending_count(self) -> int:
        return sum(1 for doc in self.store.documents() if not doc.indexed)

    # Dictionary / vectors.

    def load_dictionary(self, lines, kind: str) -> int:
        return self.dictionary.load(lines, kind)

    def load_corrections(self, lines) -> int:
        return self.corrections.load(lines)

    def load_vectors(self, lines=None) -> tuple[int, int]:
        """Returns (loaded from stream, randomly initialized)."""
        keywords = self.dictionary.surfaces()
        if lines is None:
            filled = self.embeddings.random_fill(keywords, self.config.seed)
            return 0, filled
        loaded = self.embeddings.load_pretrained(
            lines, keywords, self.pipeline.keyword, self.config.seed)
        return loaded, len(keywords) - loaded

    def fine_tune(self, config: GloveConfig | None = None) -> list[EpochLoss]:
        if self.is_locked():
            raise StoreLockedError(
                f"store is held by a running service (remove "
                f"{self.store_path / LOCK_FILE} if that service is gone)")
        return fine_tune(self.embeddings, self.index.cooccurrence,
                         config or self.config.glove, self.config.seed)

    # Topics.

    def create_topic(self, name: str, keywords: list[str]) -> Topic:
        return self.tracker.create(name, keywords)

    def get_topic(self, name: str) -> Topic:
        return self.tracker.get(name)

    def add_keywords(self, name: str, keywords: list[str]) -> Topic:
        return self.tracker.add_keywords(name, keywords)

    def topic_names(self) -> list[str]:
        return self.tracker.names()

    def expand(self, name: str, theta: float | None = None,
               limit: int | None = None) -> list[ExpansionCandidate]:
        if theta is None:
            theta = self.config.theta_default
        return self.tracker.expand(self.get_topic(name), theta, limit)

    def retrieve(self, name: str, order: str = "relevance",
                 limit: int | None = None) -> list[RankedResult]:
        return self.tracker.retrieve(self.get_topic(name), order, limit)

    # Trends.

    def _default_range(self, from_date: date | None,
                       to_date: date | None) -> tuple[date, date]:
        stats = self.store.stats()
        from_date = from_date or stats.date_min
        to_date = to_date or stats.date_max
        if from_date is None or to_date is None:
            raise InvalidDateRangeError(
                "corpus is empty; pass an explicit date range")
        return from_date, to_date

    def trend(self, name: str, granularity: str = "year",
              from_date: date | None = None,
              to_date: date | None = None) -> TrendSeries:
        topic = self.get_topic(name)
        from_date, to_date = self._default_range(from_date, to_date)
        results = self.tracker.retrieve(topic)
        return bucket_counts(
            (r.created_date for r in results), topic.name,
            granularity, from_date, to_date)

    def spikes(self, name: str, granularity: str = "year",
               from_date: date | None = None, to_date: date | None = None,
               config: SpikeConfig | None = None) -> list[tuple[str, float]]:
        series = self.trend(name, granularity, from_date, to_date)
        return detect_spikes(series, config or self.config.spike)

    # Inspection.

    def document_view(self, doc_id: str, topic_name: str | None = None):
        doc = self.store.get_document(doc_id)
        matched = None
        if topic_name is not None:
            topic = self.get_topic(topic_name)
            matched = []
            for kw in topic.keywords:
                posting = self.index.posting(kw, doc_id)
                if posting is not None:
                    matched.append(
                        (kw, [(s, e) for _, s, e in posting.positions]))
        return doc, matched

    def stats_summary(self, top: int = 10):
        return (self.store.stats(), len(self.dictionary),
                self.index.top_keywords(top))

    # Locking (service holds the store; finetune refuses while held).

    def lock_path(self) -> Path:
        return self.store_path / LOCK_FILE

    def is_locked(self) -> bool:
        return self.lock_path().exists()

    def acquire_lock(self) -> None:
        try:
            fd = os.open(self.lock_path(), os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise StoreLockedError(
                f"store already held (lock file {self.lock_path()})") from None
        with os.fdopen(fd, "w") as handle:
            handle.write(str(os.getpid()))

    def release_lock(self) -> None:
        try:
            os.unlink(self.lock_path())
        except FileNotFoundError:
            pass


def _dictionary_to_payload(dictionary: KeywordDictionary) -> dict:
    return {
        entry.surface: {
            "kind": entry.kind,
            "document_frequency": entry.document_frequency,
            "occurrence_total": entry.occurrence_total,
        }
        for entry in dictionary.entries.values()
    }


def _dictionary_from_payload(payload: dict) -> KeywordDictionary:
    dictionary = KeywordDictionary()
    for surface, item in payload.items():
        entry = dictionary.ensure(surface, item["kind"])
        entry.document_frequency = int(item["document_frequency"])
        entry.occurrence_total = int(item["occurrence_total"])
    return dictionary
