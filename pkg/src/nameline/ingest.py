"""Article fetching, boilerplate stripping and the file-backed result cache.

Queries resolve against a MediaWiki-style plain-text extract endpoint;
arbitrary URLs are fetched and stripped of markup; local files are read
verbatim (the offline path).  Pipeline results are cached on disk with a TTL,
with per-key single-flight so concurrent misses compute once.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import logging
import os
import re
import threading
import time
from dataclasses import dataclass, field, replace
from html.parser import HTMLParser
from pathlib import Path
from typing import Callable

import requests

logger = logging.getLogger(__name__)

DEFAULT_ENDPOINT = "https://en.wikipedia.org/w/api.php"
DEFAULT_CACHE_TTL_SECONDS = 7 * 24 * 3600.0
DEFAULT_MIN_PARAGRAPH_CHARS = 25

ORIGIN_ENCYCLOPEDIA = "encyclopedia_api"
ORIGIN_URL = "raw_url"
ORIGIN_FILE = "local_file"


class FetchError(Exception):
    pass


class ArticleNotFoundError(FetchError):
    pass


class RateLimitError(FetchError):
    pass


class NetworkError(FetchError):
    pass


@dataclass(frozen=True)
class FetchResult:
    source_id: str
    text: str
    fetched_at: str
    origin: str


def _now_iso() -> str:
    return _dt.datetime.now(tz=_dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def fetch_article(query: str, endpoint: str = DEFAULT_ENDPOINT,
                  timeout: float = 30.0) -> FetchResult:
    """Plain-text body of the best-matching encyclopedia article for ``query``.

    Raises :class:`ArticleNotFoundError` when no article matches,
    :class:`RateLimitError` on HTTP 429 and :class:`NetworkError` for other
    transport failures.
    """
    params = {
        "action": "query",
        "prop": "extracts",
        "explaintext": 1,
        "redirects": 1,
        "format": "json",
        "titles": query,
    }
    try:
        response = requests.get(endpoint, params=params, timeout=timeout,
                                headers={"User-Agent": "nameline/0.1"})
    except requests.RequestException as exc:
        raise NetworkError(f"fetch failed: {exc}") from exc
    if response.status_code == 429:
        raise RateLimitError("endpoint rate limit hit (HTTP 429)")
    if response.status_code >= 400:
        raise NetworkError(f"endpoint returned HTTP {response.status_code}")
    try:
        pages = response.json()["query"]["pages"]
    except (ValueError, KeyError) as exc:
        raise NetworkError(f"unexpected endpoint response: {exc}") from exc
    for page_id, page in pages.items():
        if page_id == "-1" or "missing" in page:
            raise ArticleNotFoundError(f"no article found for {query!r}")
        extract = page.get("extract", "")
        if not extract.strip():
            raise ArticleNotFoundError(f"article for {query!r} has no text")
        return FetchResult(
            source_id=page.get("title", query),
            text=extract,
            fetched_at=_now_iso(),
            origin=ORIGIN_ENCYCLOPEDIA,
        )
    raise ArticleNotFoundError(f"no article found for {query!r}")


_SKIP_TAGS = {
    "script", "style", "noscript", "template", "head", "title", "nav",
    "header", "footer", "aside", "form", "iframe", "svg", "canvas", "button",
    "select", "option",
}
_BLOCK_TAGS = {
    "p", "div", "section", "article", "main", "li", "ul", "ol", "table",
    "tr", "td", "th", "blockquote", "pre", "br", "hr", "figure", "figcaption",
    "dl", "dt", "dd", "h1", "h2", "h3", "h4", "h5", "h6", "body",
}


class _MainTextParser(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.chunks: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
        elif tag in _BLOCK_TAGS:
            self.chunks.append("\n")

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS and self._skip_depth > 0:
            self._skip_depth -= 1
        elif tag in _BLOCK_TAGS:
            self.chunks.append("\n")

    def handle_data(self, data):
        if self._skip_depth == 0 and data:
            self.chunks.append(data)


def extract_main_text(html: str, min_paragraph_chars: int = DEFAULT_MIN_PARAGRAPH_CHARS) -> str:
    """Markup-free article text: scripts/styles/nav removed, block elements
    become paragraph breaks, short boilerplate paragraphs dropped."""
    parser = _MainTextParser()
    parser.feed(html)
    parser.close()
    paragraphs = []
    for raw in "".join(parser.chunks).split("\n"):
        paragraph = re.sub(r"\s+", " ", raw).strip()
        if len(paragraph) >= min_paragraph_chars:
            paragraphs.append(paragraph)
    return "\n\n".join(paragraphs)


def fetch_url(url: str, timeout: float = 30.0,
              min_paragraph_chars: int = DEFAULT_MIN_PARAGRAPH_CHARS) -> FetchResult:
    """Fetch an arbitrary web page and strip it down to its main text."""
    try:
        response = requests.get(url, timeout=timeout,
                                headers={"User-Agent": "nameline/0.1"})
    except requests.RequestException as exc:
        raise NetworkError(f"fetch failed: {exc}") from exc
    if response.status_code == 429:
        raise RateLimitError("server rate limit hit (HTTP 429)")
    if response.status_code == 404:
        raise ArticleNotFoundError(f"no page at {url}")
    if response.status_code >= 400:
        raise NetworkError(f"server returned HTTP {response.status_code}")
    return FetchResult(
        source_id=url,
        text=extract_main_text(response.text, min_paragraph_chars),
        fetched_at=_now_iso(),
        origin=ORIGIN_URL,
    )


def read_local_file(path) -> FetchResult:
    path = Path(path)
    return FetchResult(
        source_id=str(path),
        text=path.read_text("utf-8"),
        fetched_at=_now_iso(),
        origin=ORIGIN_FILE,
    )


def normalize_query(query: str) -> str:
    return re.sub(r"\s+", " ", query).strip().lower()


def cache_key(query: str, model_version: str) -> str:
    return normalize_query(query) + "|" + model_version


class TimelineCache:
    """File-backed TTL cache of serialized timelines.

    One JSON file per key under ``directory``; expired entries are never
    served.  ``get_or_compute`` holds a per-key lock, so N concurrent misses
    for one key run the producer exactly once.  Storage failures degrade to
    compute-without-store.
    """

    def __init__(self, directory, ttl_seconds: float = DEFAULT_CACHE_TTL_SECONDS,
                 clock: Callable[[], float] = time.time) -> None:
        self.directory = Path(directory)
        self.ttl_seconds = float(ttl_seconds)
        self.clock = clock
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _path_for(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()
        return self.directory / f"{digest}.json"

    def _lock_for(self, key: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(key, threading.Lock())

    def get(self, key: str) -> dict | None:
        path = self._path_for(key)
        try:
            with open(path, encoding="utf-8") as fh:
                entry = json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, ValueError):
            logger.warning("unreadable cache entry %s, ignoring", path)
            return None
        if entry.get("key") != key:
            return None
        if self.clock() - entry.get("created_at", 0.0) > entry.get("ttl", self.ttl_seconds):
            return None
        return entry.get("timeline")

    def put(self, key: str, timeline: dict) -> None:
        entry = {
            "key": key,
            "created_at": self.clock(),
            "ttl": self.ttl_seconds,
            "timeline": timeline,
        }
        path = self._path_for(key)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(entry, fh, ensure_ascii=False)
            os.replace(tmp, path)
        except OSError as exc:
            logger.warning("cache store failed for %s: %s", path, exc)

    def get_or_compute(self, key: str, compute: Callable[[], dict]) -> dict:
        cached = self.get(key)
        if cached is not None:
            return cached
        with self._lock_for(key):
            cached = self.get(key)
            if cached is not None:
                return cached
            timeline = compute()
            self.put(key, timeline)
            return timeline


def cached_timeline(cache: TimelineCache, key: str, compute: Callable[[], dict]) -> dict:
    """Serve ``key`` from cache, computing (once per concurrent burst) on miss."""
    return cache.get_or_compute(key, compute)


@dataclass
class IngestConfig:
    """Fetching and caching knobs; see README for the matching env variables."""

    endpoint: str = DEFAULT_ENDPOINT
    cache_dir: str = field(default_factory=lambda: str(Path.home() / ".cache" / "nameline"))
    cache_ttl_seconds: float = DEFAULT_CACHE_TTL_SECONDS
    offline: bool = False
    min_paragraph_chars: int = DEFAULT_MIN_PARAGRAPH_CHARS

    @classmethod
    def from_file(cls, path) -> "IngestConfig":
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        allowed = {k: payload[k] for k in (
            "endpoint", "cache_dir", "cache_ttl_seconds", "offline",
            "min_paragraph_chars") if k in payload}
        return cls(**allowed)

    def with_env_overrides(self) -> "IngestConfig":
        overrides = {}
        if os.environ.get("NAMELINE_ENDPOINT"):
            overrides["endpoint"] = os.environ["NAMELINE_ENDPOINT"]
        if os.environ.get("NAMELINE_CACHE_DIR"):
            overrides["cache_dir"] = os.environ["NAMELINE_CACHE_DIR"]
        if os.environ.get("NAMELINE_CACHE_TTL"):
            overrides["cache_ttl_seconds"] = float(os.environ["NAMELINE_CACHE_TTL"])
        if os.environ.get("NAMELINE_OFFLINE"):
            overrides["offline"] = os.environ["NAMELINE_OFFLINE"] not in ("0", "false", "")
        return replace(self, **overrides) if overrides else self
