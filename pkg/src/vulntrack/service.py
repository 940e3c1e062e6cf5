"""HTTP API over an open engine.

Responses are produced by the same serializers as the CLI, so a given
engine state yields byte-identical JSON on both surfaces. Reads never
mutate the store; topic mutations are persisted before the response goes
out. If a UI build is present next to the package (frontend/dist) it is
served under /ui.
"""

from __future__ import annotations

from datetime import date
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import serialize
from .engine import TrackingEngine
from .errors import (
    DocumentNotFoundError,
    DuplicateTopicError,
    UnknownTopicError,
    VulnTrackError,
)
from .trends import SpikeConfig


class TopicBody(BaseModel):
    name: str
    keywords: list[str] = []


class KeywordsBody(BaseModel):
    keywords: list[str]


class ExpandBody(BaseModel):
    theta: float | None = None
    limit: int | None = None


def _json(payload) -> Response:
    return Response(content=serialize.to_json(payload),
                    media_type="application/json")


def _parse_date(value: str | None, name: str) -> date | None:
    if value is None:
        return None
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise VulnTrackError(f"{name} must be an ISO date (YYYY-MM-DD)")


def build_app(engine: TrackingEngine) -> FastAPI:
    app = FastAPI(title="vulntrack", docs_url=None, redoc_url=None)

    @app.exception_handler(VulnTrackError)
    async def engine_error(_request: Request, exc: VulnTrackError):
        if isinstance(exc, (UnknownTopicError, DocumentNotFoundError)):
            status = 404
        elif isinstance(exc, DuplicateTopicError):
            status = 409
        else:
            status = 400
        return JSONResponse(status_code=status, content={"error": str(exc)})

    @app.get("/stats")
    def stats(top: int = 10) -> Response:
        corpus_stats, keyword_count, top_keywords = engine.stats_summary(top)
        return _json(serialize.stats_payload(
            corpus_stats, keyword_count, top_keywords))

    @app.get("/topics")
    def list_topics() -> Response:
        return _json([
            serialize.topic_payload(engine.get_topic(name))
            for name in engine.topic_names()
        ])

    @app.post("/topics", status_code=201)
    def create_topic(body: TopicBody) -> Response:
        topic = engine.create_topic(body.name, body.keywords)
        engine.save()
        payload = serialize.topic_payload(topic)
        return Response(content=serialize.to_json(payload), status_code=201,
                        media_type="application/json")

    @app.get("/topics/{name}")
    def get_topic(name: str) -> Response:
        return _json(serialize.topic_payload(engine.get_topic(name)))

    @app.post("/topics/{name}/keywords")
    def add_keywords(name: str, body: KeywordsBody) -> Response:
        topic = engine.add_keywords(name, body.keywords)
        engine.save()
        return _json(serialize.topic_payload(topic))

    @app.post("/topics/{name}/expand")
    def expand(name: str, body: ExpandBody | None = None) -> Response:
        theta = body.theta if body else None
        limit = body.limit if body else None
        candidates = engine.expand(name, theta, limit)
        return _json(serialize.candidates_payload(candidates))

    @app.get("/topics/{name}/results")
    def results(name: str, order: str = "relevance",
                limit: int = 50) -> Response:
        found = engine.retrieve(name, order, limit)
        return _json(serialize.results_payload(found))

    @app.get("/topics/{name}/trend")
    def trend(name: str, granularity: str = "year",
              from_str: str | None = Query(None, alias="from"),
              to_str: str | None = Query(None, alias="to")) -> Response:
        series = engine.trend(name, granularity,
                              _parse_date(from_str, "from"),
                              _parse_date(to_str, "to"))
        return _json(serialize.trend_payload(series))

    @app.get("/topics/{name}/spikes")
    def spikes(name: str, granularity: str = "year",
               from_str: str | None = Query(None, alias="from"),
               to_str: str | None = Query(None, alias="to"),
               window: int | None = None,
               threshold: float | None = None) -> Response:
        base = engine.config.spike
        config = SpikeConfig(
            window=window if window is not None else base.window,
            threshold=threshold if threshold is not None else base.threshold,
            sigma_floor=base.sigma_floor,
        )
        found = engine.spikes(name, granularity,
                              _parse_date(from_str, "from"),
                              _parse_date(to_str, "to"), config)
        return _json(serialize.spikes_payload(found))

    @app.get("/documents/{doc_id}")
    def document(doc_id: str, topic: str | None = None) -> Response:
        doc, matched = engine.document_view(doc_id, topic)
        return _json(serialize.document_payload(doc, matched))

    ui_dist = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_dist.is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dist, html=True), name="ui")

    return app
