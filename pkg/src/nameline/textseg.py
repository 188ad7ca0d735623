"""Rule-based sentence splitting, tokenization and name/year annotation.

The segmenter is deliberately deterministic: sentences end at ``.``, ``!`` or
``?`` followed by whitespace and an uppercase letter (or end of text), with a
bundled abbreviation list suppressing false breaks.  Names are detected with a
capitalization heuristic rather than a tagger, years with a strict 4-digit
pattern.  All functions are pure and the returned structures are immutable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources


class TokenKind(Enum):
    WORD = "word"
    NAME = "name"
    YEAR = "year"
    PUNCT = "punct"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind
    sentence_index: int
    position: int
    char_span: tuple[int, int]


@dataclass(frozen=True)
class Sentence:
    index: int
    tokens: tuple[Token, ...]
    char_span: tuple[int, int]


@dataclass(frozen=True)
class Document:
    source_id: str
    sentences: tuple[Sentence, ...]
    raw_text: str

    def iter_tokens(self):
        for sentence in self.sentences:
            yield from sentence.tokens


def _load_wordlist(name: str) -> frozenset[str]:
    text = resources.files(__package__).joinpath(f"data/{name}").read_text("utf-8")
    return frozenset(line.strip().lower() for line in text.splitlines() if line.strip())


@lru_cache(maxsize=None)
def _bundled(name: str) -> frozenset[str]:
    return _load_wordlist(name)


@dataclass(frozen=True)
class SegmenterConfig:
    """Tunables for segmentation and annotation.

    ``stopwords`` are lowercased function words that never count as names;
    ``abbreviations`` are lowercased tokens ending in ``.`` that never end a
    sentence.  Both default to the bundled lists but can be loaded from
    external files via :meth:`load`.
    """

    stopwords: frozenset[str] = field(default_factory=lambda: _bundled("stopwords.txt"))
    abbreviations: frozenset[str] = field(default_factory=lambda: _bundled("abbreviations.txt"))
    year_min: int = 1000
    year_max: int = 2199

    @classmethod
    def load(cls, stopwords_path=None, abbreviations_path=None,
             year_min: int = 1000, year_max: int = 2199) -> "SegmenterConfig":
        def read(path, fallback):
            if path is None:
                return _bundled(fallback)
            with open(path, encoding="utf-8") as fh:
                return frozenset(line.strip().lower() for line in fh if line.strip())

        return cls(
            stopwords=read(stopwords_path, "stopwords.txt"),
            abbreviations=read(abbreviations_path, "abbreviations.txt"),
            year_min=year_min,
            year_max=year_max,
        )


_DEFAULT_CONFIG: SegmenterConfig | None = None


def default_config() -> SegmenterConfig:
    global _DEFAULT_CONFIG
    if _DEFAULT_CONFIG is None:
        _DEFAULT_CONFIG = SegmenterConfig()
    return _DEFAULT_CONFIG


_TERMINATORS = ".!?"

# alphanumeric runs (underscore excluded), else one non-space character
_TOKEN_RE = re.compile(r"[^\W_]+|\S", re.UNICODE)


def _word_before(text: str, pos: int) -> str:
    """Letters-and-dots run immediately left of ``pos`` ("St", "e.g", "U.S")."""
    k = pos
    while k > 0 and (text[k - 1].isalpha() or text[k - 1] == "."):
        k -= 1
    return text[k:pos]


def _splits_after_run(text: str, run_start: int, run_end: int, config: SegmenterConfig) -> bool:
    n = len(text)
    k = run_end + 1
    if k >= n:
        return True
    if not text[k].isspace():
        return False
    while k < n and text[k].isspace():
        k += 1
    if k >= n:
        return True
    if not text[k].isupper():
        return False
    if run_start == run_end and text[run_start] == ".":
        word = _word_before(text, run_start)
        if word:
            if (word + ".").lower() in config.abbreviations:
                return False
            if len(word) == 1 and word.isupper():
                return False
    return True


def split_sentences(text: str, config: SegmenterConfig | None = None) -> list[tuple[tuple[int, int], str]]:
    """Split ``text`` into trimmed sentence spans.

    Returns ``[((start, end), sentence_text), ...]`` with disjoint, ordered
    spans; whitespace-only segments are discarded.
    """
    config = config or default_config()
    spans: list[tuple[tuple[int, int], str]] = []

    def push(seg_start: int, seg_end: int) -> None:
        a, b = seg_start, seg_end
        while a < b and text[a].isspace():
            a += 1
        while b > a and text[b - 1].isspace():
            b -= 1
        if a < b:
            spans.append(((a, b), text[a:b]))

    n = len(text)
    start = 0
    i = 0
    while i < n:
        if text[i] in _TERMINATORS:
            j = i
            while j + 1 < n and text[j + 1] in _TERMINATORS:
                j += 1
            if _splits_after_run(text, i, j, config):
                push(start, j + 1)
                start = j + 1
            i = j + 1
        else:
            i += 1
    push(start, n)
    return spans


def tokenize(sentence_text: str) -> list[tuple[str, tuple[int, int]]]:
    """Split one sentence into (surface, char_span) tokens.

    Alphanumeric runs become one token each; every other non-space character
    becomes a single-character token.  Nothing but whitespace is dropped.
    """
    return [(m.group(), (m.start(), m.end())) for m in _TOKEN_RE.finditer(sentence_text)]


def _is_year_surface(surface: str, config: SegmenterConfig) -> bool:
    return (
        len(surface) == 4
        and surface.isascii()
        and surface.isdigit()
        and config.year_min <= int(surface) <= config.year_max
    )


def annotate(raw_tokens: list[tuple[str, tuple[int, int]]], sentence_index: int = 0,
             config: SegmenterConfig | None = None, first_position: int = 0) -> list[Token]:
    """Assign a :class:`TokenKind` to each raw token of one sentence.

    Years are claimed before names.  A token is a name iff it starts with an
    uppercase letter, is not a stopword, and is either not sentence-initial or
    sits next to another name token (so "Saint Petersburg" keeps its first
    word while a lone capitalized sentence opener does not count).

    ``first_position`` is the sentence position of the first given token;
    pass a nonzero value to annotate a fragment that starts mid-sentence.
    """
    config = config or default_config()
    surfaces = [s for s, _ in raw_tokens]
    n = len(surfaces)
    kinds: list[TokenKind | None] = [None] * n

    for idx, s in enumerate(surfaces):
        if not s[0].isalnum():
            kinds[idx] = TokenKind.PUNCT

    def all_digits(idx: int) -> bool:
        return 0 <= idx < n and surfaces[idx].isascii() and surfaces[idx].isdigit()

    for idx, s in enumerate(surfaces):
        if kinds[idx] is None and _is_year_surface(s, config):
            if not all_digits(idx - 1) and not all_digits(idx + 1):
                kinds[idx] = TokenKind.YEAR

    # the token opening the sentence, if this fragment contains it
    first_word = None
    if first_position == 0:
        first_word = next((i for i in range(n) if kinds[i] is not TokenKind.PUNCT), None)

    def name_candidate(idx: int) -> bool:
        s = surfaces[idx]
        return kinds[idx] is None and s[0].isupper() and s.lower() not in config.stopwords

    for idx in range(n):
        if idx != first_word and name_candidate(idx):
            kinds[idx] = TokenKind.NAME
    if first_word is not None and name_candidate(first_word):
        for j in (first_word - 1, first_word + 1):
            if 0 <= j < n and kinds[j] is TokenKind.NAME:
                kinds[first_word] = TokenKind.NAME
                break

    return [
        Token(surface=s, kind=kinds[idx] or TokenKind.WORD,
              sentence_index=sentence_index, position=first_position + idx,
              char_span=span)
        for idx, (s, span) in enumerate(raw_tokens)
    ]


def analyze(text: str, source_id: str = "", config: SegmenterConfig | None = None) -> Document:
    """Segment and annotate ``text`` into an immutable :class:`Document`."""
    config = config or default_config()
    sentences: list[Sentence] = []
    for (a, b), sentence_text in split_sentences(text, config):
        raw = [(s, (sa + a, sb + a)) for s, (sa, sb) in tokenize(sentence_text)]
        if not raw:
            continue
        index = len(sentences)
        tokens = annotate(raw, index, config)
        sentences.append(Sentence(index=index, tokens=tuple(tokens), char_span=(a, b)))
    return Document(source_id=source_id, sentences=tuple(sentences), raw_text=text)
