"""Canonical JSON serialization shared by the CLI and the HTTP service.

Both surfaces must emit byte-identical JSON for the same library result,
so every payload goes through the same dict builders and one dumps
configuration (sorted keys, compact separators, raw unicode).
"""

from __future__ import annotations

import json
from typing import Iterable

from .store import CorpusStats, Document
from .topics import ExpansionCandidate, RankedResult, Topic
from .trends import TrendSeries


def to_json(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True,
                      separators=(",", ":"))


def topic_payload(topic: Topic) -> dict:
    return {"name": topic.name, "keywords": list(topic.keywords)}


def candidate_payload(candidate: ExpansionCandidate) -> dict:
    return {
        "keyword": candidate.keyword,
        "score": candidate.score,
        "max_similarity": candidate.max_similarity,
    }


def candidates_payload(candidates: Iterable[ExpansionCandidate]) -> list[dict]:
    return [candidate_payload(c) for c in candidates]


def result_payload(result: RankedResult) -> dict:
    return {
        "doc_id": result.doc_id,
        "relevance": result.relevance,
        "date": result.created_date.isoformat(),
        "matched": [
            {"keyword": keyword, "spans": [[s, e] for s, e in spans]}
            for keyword, spans in result.matched
        ],
    }


def results_payload(results: Iterable[RankedResult]) -> list[dict]:
    return [result_payload(r) for r in results]


def document_payload(doc: Document,
                     matched: list[tuple[str, list[tuple[int, int]]]] | None = None
                     ) -> dict:
    payload = {
        "doc_id": doc.doc_id,
        "date": doc.created_date.isoformat(),
        "text": doc.raw_text,
        "token_count": doc.token_count,
        "indexed": doc.indexed,
    }
    if matched is not None:
        payload["matched"] = [
            {"keyword": keyword, "spans": [[s, e] for s, e in spans]}
            for keyword, spans in matched
        ]
    return payload


def trend_payload(series: TrendSeries) -> dict:
    return {
        "topic": series.topic_name,
        "granularity": series.granularity,
        "buckets": [
            {"period": period, "count": count}
            for period, count in series.buckets
        ],
    }


def trend_csv(series: TrendSeries) -> str:
    lines = ["period,count"]
    lines.extend(f"{period},{count}" for period, count in series.buckets)
    return "\n".join(lines) + "\n"


def spikes_payload(spikes: Iterable[tuple[str, float]]) -> list[dict]:
    return [{"period": period, "z_score": z} for period, z in spikes]


def stats_payload(stats: CorpusStats, keyword_count: int,
                  top_keywords: list[tuple[str, int]]) -> dict:
    return {
        "total_documents": stats.total_documents,
        "keyword_count": keyword_count,
        "date_min": stats.date_min.isoformat() if stats.date_min else None,
        "date_max": stats.date_max.isoformat() if stats.date_max else None,
        "top_keywords": [
            {"keyword": keyword, "occurrence_total": total}
            for keyword, total in top_keywords
        ],
    }
