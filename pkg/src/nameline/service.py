"""HTTP service exposing the timeline pipeline and the browser UI assets.

Read-only API: models are loaded once at startup and never mutated.  Results
are cached per (normalized query, model version); long computations are cut
off at a configurable timeout.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from .ingest import (
    ArticleNotFoundError,
    FetchError,
    IngestConfig,
    NetworkError,
    TimelineCache,
    cache_key,
    fetch_article,
    fetch_url,
)
from .pipeline import build_timeline, load_model_set, timeline_to_dict
from .textseg import analyze

DEFAULT_COMPUTE_TIMEOUT_SECONDS = 120.0


@dataclass
class ServiceConfig:
    model_dir: str
    host: str = "127.0.0.1"
    port: int = 8000
    static_dir: str | None = None
    ingest: IngestConfig = field(default_factory=IngestConfig)
    compute_timeout_seconds: float = DEFAULT_COMPUTE_TIMEOUT_SECONDS


def create_app(config: ServiceConfig) -> FastAPI:
    """Build the service app; fails fast if the model directory is unloadable."""
    model_set = load_model_set(config.model_dir)
    cache = TimelineCache(config.ingest.cache_dir, config.ingest.cache_ttl_seconds)
    executor = concurrent.futures.ThreadPoolExecutor(max_workers=8)

    app = FastAPI(title="nameline", version="0.1.0")
    app.state.model_set = model_set
    app.state.cache = cache
    app.state.compute_count = 0

    def fetch(query: str | None, url: str | None):
        if config.ingest.offline:
            raise NetworkError("service is in offline mode")
        if query is not None:
            return fetch_article(query, endpoint=config.ingest.endpoint)
        return fetch_url(url, min_paragraph_chars=config.ingest.min_paragraph_chars)

    @app.get("/api/health")
    def health():
        return {"status": "ok", "model_version": model_set.version}

    @app.get("/api/timeline")
    def timeline(query: str | None = None, url: str | None = None):
        if (query is None) == (url is None):
            raise HTTPException(status_code=400,
                                detail="provide exactly one of 'query' or 'url'")
        subject = query if query is not None else url
        prefix = "query:" if query is not None else "url:"
        key = cache_key(prefix + subject, model_set.version)

        def compute() -> dict:
            app.state.compute_count += 1
            result = fetch(query, url)
            doc = analyze(result.text, result.source_id)
            return timeline_to_dict(build_timeline(doc, model_set, subject))

        future = executor.submit(cache.get_or_compute, key, compute)
        try:
            return future.result(timeout=config.compute_timeout_seconds)
        except concurrent.futures.TimeoutError:
            raise HTTPException(status_code=504, detail="timeline computation timed out")
        except ArticleNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except (NetworkError, FetchError) as exc:
            raise HTTPException(status_code=502, detail=str(exc))

    if config.static_dir and Path(config.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
