"""Four-model ensemble application and timeline assembly.

An excerpt is accepted only when every configured classifier for its distance
votes positive (by default the distance-specific model AND the all-distances
model), trading recall for precision.  Accepted excerpts are deduplicated
(smallest distance wins among overlapping windows) and ordered by the first
year they mention.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .excerpt import Excerpt, extract_candidates, DEFAULT_MAX_DISTANCE
from .features import ordered_pairs, vectorize
from .svm import Model, classify, decision, load_model, save_model, serialize_model
from .textseg import Document

TAG_FOR_DISTANCE = {0: "D0", 1: "D1", 2: "D2"}
MODEL_FILENAMES = {
    "D0": "d0.model.json",
    "D1": "d1.model.json",
    "D2": "d2.model.json",
    "All": "all.model.json",
}
# which classifiers vote on an excerpt of each distance
DEFAULT_COMBINATION: dict[int, tuple[str, ...]] = {
    0: ("D0", "All"),
    1: ("D1", "All"),
    2: ("D2", "All"),
}


@dataclass
class ModelSet:
    by_distance: dict[int, Model]
    all_model: Model
    _version: str | None = field(default=None, repr=False)

    def __post_init__(self):
        for distance, model in self.by_distance.items():
            expected = TAG_FOR_DISTANCE.get(distance)
            if expected is None or model.distance_tag != expected:
                raise ValueError(
                    f"model tagged {model.distance_tag!r} registered for distance {distance}")
        if self.all_model.distance_tag != "All":
            raise ValueError("all_model must carry the All tag")

    def model_for(self, tag: str) -> Model:
        if tag == "All":
            return self.all_model
        for distance, expected in TAG_FOR_DISTANCE.items():
            if expected == tag:
                return self.by_distance[distance]
        raise KeyError(tag)

    def models(self) -> list[Model]:
        return [self.by_distance[d] for d in sorted(self.by_distance)] + [self.all_model]

    @property
    def version(self) -> str:
        if self._version is None:
            digest = hashlib.sha256()
            for model in self.models():
                digest.update(serialize_model(model).encode("utf-8"))
            self._version = digest.hexdigest()[:12]
        return self._version


def save_model_set(model_set: ModelSet, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for model in model_set.models():
        save_model(model, directory / MODEL_FILENAMES[model.distance_tag])


def load_model_set(directory) -> ModelSet:
    directory = Path(directory)
    by_distance = {}
    for distance, tag in TAG_FOR_DISTANCE.items():
        by_distance[distance] = load_model(directory / MODEL_FILENAMES[tag])
    all_model = load_model(directory / MODEL_FILENAMES["All"])
    return ModelSet(by_distance=by_distance, all_model=all_model)


@dataclass(frozen=True)
class TimelineEntry:
    year: int
    excerpt_text: str
    source_id: str
    sentence_range: tuple[int, int]
    distance: int
    scores: Mapping[str, float]


@dataclass(frozen=True)
class Timeline:
    query: str
    entries: tuple[TimelineEntry, ...]
    generated_at: str
    model_version: str


def classify_excerpt(model_set: ModelSet, excerpt: Excerpt,
                     combination: Mapping[int, tuple[str, ...]] | None = None,
                     ) -> tuple[bool, dict[str, float]]:
    """Vote on one excerpt; accepted only if every configured model says +1.

    Raw decision scores of every consulted model are returned either way.
    """
    tags = (combination or DEFAULT_COMBINATION)[excerpt.distance]
    pairs = ordered_pairs(excerpt.generalized)
    scores: dict[str, float] = {}
    accepted = True
    for tag in tags:
        model = model_set.model_for(tag)
        vector = vectorize(pairs, model.index)
        score = decision(model, vector)
        scores[tag] = score
        if classify(model, vector) != 1:
            accepted = False
    return accepted, scores


def first_year(excerpt: Excerpt) -> int:
    """Year of the earliest-positioned year mention (not the smallest value)."""
    if not excerpt.years:
        raise ValueError("excerpt contains no year")
    return excerpt.years[0]


def _now_iso() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        moment = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        moment = _dt.datetime.now(tz=_dt.timezone.utc)
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


def build_timeline(doc: Document, model_set: ModelSet, query: str,
                   max_distance: int = DEFAULT_MAX_DISTANCE,
                   combination: Mapping[int, tuple[str, ...]] | None = None) -> Timeline:
    """Classify all candidates of ``doc`` and assemble the accepted ones into
    a chronological timeline (overlaps deduplicated, smallest distance wins)."""
    accepted: list[tuple[Excerpt, dict[str, float]]] = []
    for candidate in extract_candidates(doc, max_distance):
        ok, scores = classify_excerpt(model_set, candidate, combination)
        if ok:
            accepted.append((candidate, scores))

    accepted.sort(key=lambda item: (item[0].distance, item[0].first_sentence))
    kept: list[tuple[Excerpt, dict[str, float]]] = []
    used_sentences: set[int] = set()
    for candidate, scores in accepted:
        window = set(range(candidate.first_sentence, candidate.last_sentence + 1))
        if window & used_sentences:
            continue
        kept.append((candidate, scores))
        used_sentences |= window

    entries = [
        TimelineEntry(
            year=first_year(candidate),
            excerpt_text=candidate.text,
            source_id=candidate.source_id,
            sentence_range=candidate.sentence_range,
            distance=candidate.distance,
            scores=scores,
        )
        for candidate, scores in kept
    ]
    entries.sort(key=lambda e: (e.year, e.sentence_range))
    return Timeline(
        query=query,
        entries=tuple(entries),
        generated_at=_now_iso(),
        model_version=model_set.version,
    )


def timeline_to_dict(timeline: Timeline) -> dict:
    """Wire format served by the HTTP API and stored in the cache."""
    return {
        "query": timeline.query,
        "model_version": timeline.model_version,
        "generated_at": timeline.generated_at,
        "entries": [
            {
                "year": entry.year,
                "text": entry.excerpt_text,
                "source_id": entry.source_id,
                "first_sentence": entry.sentence_range[0],
                "last_sentence": entry.sentence_range[1],
                "distance": entry.distance,
                "scores": dict(entry.scores),
            }
            for entry in timeline.entries
        ],
    }


def timeline_from_dict(payload: dict) -> Timeline:
    entries = tuple(
        TimelineEntry(
            year=item["year"],
            excerpt_text=item["text"],
            source_id=item["source_id"],
            sentence_range=(item["first_sentence"], item["last_sentence"]),
            distance=item["distance"],
            scores=dict(item["scores"]),
        )
        for item in payload["entries"]
    )
    return Timeline(
        query=payload["query"],
        entries=entries,
        generated_at=payload.get("generated_at", ""),
        model_version=payload["model_version"],
    )
