"""HTTP JSON verification service: verify, trends, sites, health."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from datetime import timedelta

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .analytics import (
    QueryLog,
    QueryLogEntry,
    format_ts,
    now_utc,
    read_log,
    site_ranking,
    trend_report,
)
from .corpus import Corpus, load_corpus
from .match import DEFAULT_K, DEFAULT_THETA, EmptyQueryError, SearchParams, build_index
from .verdict import Status, Verdict, verify

logger = logging.getLogger(__name__)

MAX_QUERY_CHARS = 10_000


@dataclass
class ServerConfig:
    corpus_path: str
    log_path: str
    theta: float = DEFAULT_THETA
    k: int = DEFAULT_K
    cors_origins: tuple[str, ...] = ("*",)


def _error(status_code: int, code: str) -> JSONResponse:
    return JSONResponse({"error": code}, status_code=status_code)


def _positive_int(raw: str | None, default: int) -> int:
    """Parse a positive integer query parameter; ValueError on anything else."""
    if raw is None:
        return default
    value = int(raw)
    if value < 1:
        raise ValueError("must be positive")
    return value


def verdict_payload(verdict: Verdict, corpus: Corpus) -> dict:
    return {
        "status": verdict.status.value,
        "query_normalized": verdict.query_norm,
        "best_grade": verdict.best_grade.value if verdict.best_grade else None,
        "matches": [
            {
                "hadith_id": m.hadith_id,
                "book": m.book.value,
                "number": m.number_in_book,
                "grade": m.grade.value,
                "score": m.score,
                "matn": corpus.by_id[m.hadith_id].matn_raw,
            }
            for m in verdict.matches
        ],
    }


def trend_payload_entry(trend, corpus: Corpus) -> dict:
    record = corpus.get(trend.hadith_id)
    return {
        "hadith_id": trend.hadith_id,
        "query_count": trend.query_count,
        "last_seen": format_ts(trend.last_seen),
        "book": record.book.value if record else None,
        "number": record.number_in_book if record else None,
        "grade": record.grade.value if record else None,
    }


def site_payload_entry(site) -> dict:
    return {
        "domain": site.domain,
        "sahih_count": site.sahih_count,
        "dhaeef_count": site.dhaeef_count,
        "score": site.score,
    }


def create_app(config: ServerConfig) -> FastAPI:
    """Build the service: loads the corpus, builds the index, opens the log.

    Corpus and index are immutable shared snapshots; log appends go through
    the QueryLog single-writer lock. The app never returns 5xx for malformed
    client input.
    """
    corpus = load_corpus(config.corpus_path)
    index = build_index(corpus)
    query_log = QueryLog(config.log_path)
    params = SearchParams(k=config.k, theta=config.theta)

    app = FastAPI(title="hadithcheck", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.corpus = corpus
    app.state.index = index
    app.state.query_log = query_log
    app.state.params = params
    app.state.log_write_failures = 0

    @app.post("/api/v1/verify")
    async def verify_route(request: Request) -> JSONResponse:
        try:
            body = json.loads(await request.body())
        except ValueError:
            return _error(400, "bad_request")
        if not isinstance(body, dict) or "text" not in body:
            return _error(400, "bad_request")
        text = body["text"]
        page_url = body.get("page_url")
        if not isinstance(text, str):
            return _error(400, "bad_request")
        if page_url is not None and not isinstance(page_url, str):
            return _error(400, "bad_request")
        if len(text) > MAX_QUERY_CHARS:
            return _error(413, "query_too_long")

        try:
            verdict = verify(app.state.index, app.state.corpus, text, app.state.params)
        except EmptyQueryError:
            return _error(400, "empty_query")

        found = verdict.status is Status.FOUND
        entry = QueryLogEntry.create(
            ts=now_utc(),
            query=text,
            url=page_url,
            status=verdict.status,
            grade=verdict.best_grade if found else None,
            hadith_id=verdict.matches[0].hadith_id if found else None,
        )
        try:
            app.state.query_log.append(entry)
        except OSError:
            app.state.log_write_failures += 1
            logger.warning("query log append failed", exc_info=True)

        return JSONResponse(verdict_payload(verdict, app.state.corpus))

    @app.get("/api/v1/trends")
    async def trends_route(request: Request) -> JSONResponse:
        try:
            window_days = _positive_int(request.query_params.get("window_days"), 7)
            limit = _positive_int(request.query_params.get("limit"), 10)
        except ValueError:
            return _error(400, "bad_request")
        entries = read_log(app.state.query_log.path)
        trends = trend_report(entries, timedelta(days=window_days), limit)
        return JSONResponse(
            {"trends": [trend_payload_entry(t, app.state.corpus) for t in trends]}
        )

    @app.get("/api/v1/sites")
    async def sites_route(request: Request) -> JSONResponse:
        try:
            limit = _positive_int(request.query_params.get("limit"), 10)
        except ValueError:
            return _error(400, "bad_request")
        entries = read_log(app.state.query_log.path)
        sites = site_ranking(entries, limit)
        return JSONResponse({"sites": [site_payload_entry(s) for s in sites]})

    @app.get("/api/v1/health")
    async def health_route() -> JSONResponse:
        return JSONResponse(
            {
                "status": "ok",
                "corpus_size": len(app.state.corpus),
                "log_write_failures": app.state.log_write_failures,
            }
        )

    return app
