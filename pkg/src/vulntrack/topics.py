"""Topics: keyword sets with expansion, relevance scoring, retrieval.

A topic is a named ordered set of normalized keywords Q. Expansion
recommends dictionary keywords whose embedding similarity to some member
of Q exceeds a threshold, ranked by idf; relevance of a document is the
tf-idf sum over Q; retrieval returns every document containing any
keyword of Q, ranked by relevance or recency, with the matched byte
spans attached for highlighting.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import date

import numpy as np

from .embeddings import EmbeddingTable
from .errors import (
    DuplicateTopicError,
    EmptyTopicError,
    InvalidParameterError,
    NoEmbeddingError,
    UndefinedScoreError,
    UnknownTopicError,
)
from .index import InvertedIndex
from .pipeline import TextPipeline
from .store import DocumentStore

log = logging.getLogger(__name__)

DEFAULT_THETA = 0.9
DEFAULT_LIMIT = 50

ORDER_RELEVANCE = "relevance"
ORDER_DATE = "date"


@dataclass
class Topic:
    name: str
    keywords: list[str] = field(default_factory=list)

    def add(self, keywords: list[str]) -> list[str]:
        added = []
        for kw in keywords:
            if kw and kw not in self.keywords:
                self.keywords.append(kw)
                added.append(kw)
        return added


@dataclass
class ExpansionCandidate:
    keyword: str
    score: float          # d(b), the ranking key
    max_similarity: float  # max over a in Q of rho(a, b)


@dataclass
class RankedResult:
    doc_id: str
    relevance: float
    created_date: date
    # keyword -> byte spans, in topic keyword order, spans ascending.
    matched: list[tuple[str, list[tuple[int, int]]]]


class TopicTracker:
    """Topic registry bound to one engine state."""

    def __init__(self, store: DocumentStore, pipeline: TextPipeline,
                 index: InvertedIndex, embeddings: EmbeddingTable,
                 signed_similarity: bool = False) -> None:
        self.store = store
        self.pipeline = pipeline
        self.index = index
        self.embeddings = embeddings
        self.signed_similarity = signed_similarity
        self.topics: dict[str, Topic] = {}

    # Registry operations.

    def create(self, name: str, keywords: list[str]) -> Topic:
        if not name or not name.strip():
            raise InvalidParameterError("topic name must be non-empty")
        name = name.strip()
        if name in self.topics:
            raise DuplicateTopicError(f"topic {name!r} already exists")
        topic = Topic(name=name)
        topic.add(self._normalize_keywords(keywords))
        self.topics[name] = topic
        return topic

    def get(self, name: str) -> Topic:
        topic = self.topics.get(name)
        if topic is None:
            raise UnknownTopicError(f"no topic named {name!r}")
        return topic

    def names(self) -> list[str]:
        return sorted(self.topics)

    def add_keywords(self, name: str, keywords: list[str]) -> Topic:
        topic = self.get(name)
        topic.add(self._normalize_keywords(keywords))
        return topic

    def _normalize_keywords(self, keywords: list[str]) -> list[str]:
        # Query-side normalization never grows the dictionary: a topic
        # may reference keywords the corpus has not produced yet.
        out = []
        for kw in keywords:
            normalized = self.pipeline.keyword(kw)
            if normalized:
                out.append(normalized)
        return out

    # Scoring operations.

    def expand(self, topic: Topic, theta: float | None = None,
               limit: int | None = None) -> list[ExpansionCandidate]:
        """Dictionary keywords b outside Q with defined idf and
        rho(a, b) > theta for some a in Q, ranked by idf descending,
        ties lexicographic, truncated to limit."""
        theta = DEFAULT_THETA if theta is None else theta
        limit = DEFAULT_LIMIT if limit is None else limit
        if not 0 < theta < 1:
            raise InvalidParameterError(f"theta must be in (0,1), got {theta}")
        if limit < 1:
            raise InvalidParameterError(f"limit must be positive, got {limit}")
        if not topic.keywords:
            raise EmptyTopicError(f"topic {topic.name!r} has no keywords")

        seeds = []
        for kw in topic.keywords:
            vec = self.embeddings.get(kw)
            if vec is None or not np.any(vec):
                log.warning("topic %r: keyword %r has no usable embedding",
                            topic.name, kw)
                continue
            seeds.append(vec / np.linalg.norm(vec))
        if not seeds:
            raise NoEmbeddingError(
                f"no keyword of topic {topic.name!r} has an embedding")

        members = set(topic.keywords)
        surfaces: list[str] = []
        scores: list[float] = []
        rows: list[np.ndarray] = []
        for surface, entry in self.index.dictionary.entries.items():
            if surface in members or entry.document_frequency < 1:
                continue
            vec = self.embeddings.get(surface)
            if vec is None:
                continue
            norm = float(np.linalg.norm(vec))
            if norm == 0.0:
                continue
            surfaces.append(surface)
            scores.append(self.index.idf(surface))
            rows.append(vec / norm)
        if not rows:
            return []

        matrix = np.vstack(rows)
        sims = matrix @ np.vstack(seeds).T
        if not self.signed_similarity:
            sims = np.abs(sims)
        best = sims.max(axis=1)

        candidates = [
            ExpansionCandidate(keyword=surfaces[i], score=scores[i],
                               max_similarity=float(best[i]))
            for i in np.flatnonzero(best > theta)
        ]
        candidates.sort(key=lambda c: (-c.score, c.keyword))
        return candidates[:limit]

    def relevance(self, topic: Topic, doc_id: str) -> float:
        """Gamma(Q, S) = sum over Q of t(a,S) d(a); undefined idf
        contributes nothing."""
        total = 0.0
        for kw in topic.keywords:
            tf = self.index.term_frequency(kw, doc_id)
            if tf == 0.0:
                continue
            try:
                total += tf * self.index.idf(kw)
            except UndefinedScoreError:  # pragma: no cover - tf>0 implies df>0
                continue
        return total

    def retrieve(self, topic: Topic, order: str = ORDER_RELEVANCE,
                 limit: int | None = None) -> list[RankedResult]:
        """Every document containing at least one keyword of Q."""
        if order not in (ORDER_RELEVANCE, ORDER_DATE):
            raise InvalidParameterError(
                f"order must be relevance or date, got {order!r}")
        if limit is not None and limit < 1:
            raise InvalidParameterError(f"limit must be positive, got {limit}")
        if not topic.keywords:
            raise EmptyTopicError(f"topic {topic.name!r} has no keywords")

        doc_ids: set[str] = set()
        for kw in topic.keywords:
            doc_ids |= self.index.docs_containing(kw)

        results = []
        for doc_id in doc_ids:
            doc = self.store.get_document(doc_id)
            matched = []
            for kw in topic.keywords:
                posting = self.index.posting(kw, doc_id)
                if posting is not None:
                    matched.append(
                        (kw, [(s, e) for _, s, e in posting.positions]))
            results.append(RankedResult(
                doc_id=doc_id,
                relevance=self.relevance(topic, doc_id),
                created_date=doc.created_date,
                matched=matched,
            ))

        if order == ORDER_RELEVANCE:
            results.sort(key=lambda r: (-r.relevance,
                                        -r.created_date.toordinal(),
                                        r.doc_id))
        else:
            results.sort(key=lambda r: (-r.created_date.toordinal(),
                                        -r.relevance,
                                        r.doc_id))
        return results if limit is None else results[:limit]

    # Persistence helpers.

    def to_payload(self) -> list[dict]:
        return [
            {"name": t.name, "keywords": list(t.keywords)}
            for _, t in sorted(self.topics.items())
        ]

    def restore(self, payload: list[dict]) -> None:
        self.topics = {
            item["name"]: Topic(name=item["name"],
                                keywords=list(item["keywords"]))
            for item in payload
        }
