"""Candidate excerpt enumeration and N/Y generalization.

An excerpt is a window of up to ``max_distance + 1`` consecutive sentences
that could describe a name change: it must contain at least two names and a
year, and both boundary sentences must carry a name or year mention.  Name
runs collapse to the token ``N`` and years to ``Y`` so downstream classifiers
see structure, not vocabulary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .textseg import Document, Sentence, Token, TokenKind

NAME_TOKEN = "N"
YEAR_TOKEN = "Y"
DEFAULT_MAX_DISTANCE = 2


@dataclass(frozen=True)
class Excerpt:
    source_id: str
    first_sentence: int
    last_sentence: int
    distance: int
    name_count: int
    year_count: int
    names: tuple[str, ...]
    years: tuple[int, ...]
    generalized: tuple[str, ...]
    text: str

    @property
    def sentence_range(self) -> tuple[int, int]:
        return (self.first_sentence, self.last_sentence)

    def overlaps(self, other: "Excerpt") -> bool:
        return (self.source_id == other.source_id
                and self.first_sentence <= other.last_sentence
                and other.first_sentence <= self.last_sentence)


def first_last_rule(window: Sequence[Sentence]) -> bool:
    """True iff both boundary sentences mention a name or a year."""

    def has_component(sentence: Sentence) -> bool:
        return any(t.kind in (TokenKind.NAME, TokenKind.YEAR) for t in sentence.tokens)

    return has_component(window[0]) and has_component(window[-1])


def _name_runs(tokens: Sequence[Token]) -> list[list[Token]]:
    runs: list[list[Token]] = []
    current: list[Token] = []
    for token in tokens:
        if token.kind is TokenKind.NAME:
            current.append(token)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def generalize(tokens: Sequence[Token]) -> list[str]:
    """Map a token window to its generalized stream.

    Each maximal run of adjacent name tokens emits one ``N``, each year
    emits ``Y``, words emit their lowercased surface, punctuation vanishes.
    """
    out: list[str] = []
    in_name_run = False
    for token in tokens:
        if token.kind is TokenKind.NAME:
            if not in_name_run:
                out.append(NAME_TOKEN)
            in_name_run = True
            continue
        in_name_run = False
        if token.kind is TokenKind.YEAR:
            out.append(YEAR_TOKEN)
        elif token.kind is TokenKind.WORD:
            out.append(token.surface.lower())
    return out


def make_excerpt(doc: Document, first: int, last: int) -> Excerpt | None:
    """Build the excerpt for sentence window [first, last], or None if it
    fails any candidate constraint."""
    window = doc.sentences[first:last + 1]
    if not window or not first_last_rule(window):
        return None
    tokens = [t for sentence in window for t in sentence.tokens]
    runs = _name_runs(tokens)
    years = [int(t.surface) for t in tokens if t.kind is TokenKind.YEAR]
    if len(runs) < 2 or not years:
        return None
    start = window[0].char_span[0]
    end = window[-1].char_span[1]
    return Excerpt(
        source_id=doc.source_id,
        first_sentence=first,
        last_sentence=last,
        distance=last - first,
        name_count=len(runs),
        year_count=len(years),
        names=tuple(" ".join(t.surface for t in run) for run in runs),
        years=tuple(years),
        generalized=tuple(generalize(tokens)),
        text=doc.raw_text[start:end],
    )


def extract_candidates(doc: Document, max_distance: int = DEFAULT_MAX_DISTANCE) -> list[Excerpt]:
    """Every sentence window of distance <= max_distance satisfying the
    excerpt constraints, ordered by (first_sentence, distance)."""
    if max_distance < 0:
        raise ValueError("max_distance must be >= 0")
    out: list[Excerpt] = []
    n = len(doc.sentences)
    for first in range(n):
        for distance in range(max_distance + 1):
            last = first + distance
            if last >= n:
                break
            candidate = make_excerpt(doc, first, last)
            if candidate is not None:
                out.append(candidate)
    return out


def to_record(excerpt: Excerpt) -> dict:
    return {
        "source_id": excerpt.source_id,
        "first_sentence": excerpt.first_sentence,
        "last_sentence": excerpt.last_sentence,
        "distance": excerpt.distance,
        "text": excerpt.text,
        "generalized": list(excerpt.generalized),
        "names": list(excerpt.names),
        "years": list(excerpt.years),
    }


def from_record(record: dict) -> Excerpt:
    generalized = tuple(record["generalized"])
    return Excerpt(
        source_id=record["source_id"],
        first_sentence=record["first_sentence"],
        last_sentence=record["last_sentence"],
        distance=record["distance"],
        name_count=sum(1 for t in generalized if t == NAME_TOKEN),
        year_count=sum(1 for t in generalized if t == YEAR_TOKEN),
        names=tuple(record.get("names", ())),
        years=tuple(record.get("years", ())),
        generalized=generalized,
        text=record["text"],
    )


def write_excerpts(path, excerpts: Iterable[Excerpt]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for excerpt in excerpts:
            fh.write(json.dumps(to_record(excerpt), ensure_ascii=False) + "\n")


def read_excerpts(path) -> list[Excerpt]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(from_record(json.loads(line)))
    return out
