"""Synthetic labeled-corpus generator for training and evaluation runs.

Articles are assembled from templated sentence blocks: renaming blocks (the
positives, spread over 1-3 sentences), distractor blocks that still satisfy
the candidate constraints (two names plus a year) without describing a name
change, and component-free filler.  The generator validates every article
against the real segmenter, so a template drifting out of sync with the
annotation heuristics fails loudly instead of silently corrupting labels.
"""

from __future__ import annotations

import random
from typing import Callable

from .excerpt import extract_candidates
from .textseg import analyze
from .training import CorpusArticle

SINGLE_NAMES = [
    "Kalden", "Veyra", "Dorvan", "Meltor", "Sarveth", "Olvira", "Tremund",
    "Caldris", "Nerova", "Vastmere", "Quillan", "Bremora", "Ashfeld",
    "Lorvik", "Tyrshall", "Evandel", "Morcastle", "Fenwick", "Harrowgate",
    "Zelmora", "Ostrava", "Brindel", "Corvane", "Welstead", "Marovia",
]
DOUBLE_NAMES = [
    "Port Avery", "New Calden", "Fort Bram", "Lake Sorrel", "East Varnis",
    "Saint Moreth", "North Quay", "Mount Ferris", "West Haldern", "Cape Loren",
]

FILLER = [
    "The population grew quickly.",
    "Little else is recorded from that period.",
    "The winters were long and harsh.",
    "Trade along the river flourished.",
    "The old walls still stand today.",
    "Few documents survive from those years.",
    "The harvest was poor that season.",
    "Local crafts were famous throughout the region.",
]

# each template maps (a, b, y) -> list of sentences; the positive window spans
# all of them
POSITIVE_TEMPLATES: dict[int, list[Callable[[str, str, int], list[str]]]] = {
    0: [
        lambda a, b, y: [f"The town of {a} was renamed {b} in {y}."],
        lambda a, b, y: [f"In {y} the settlement called {a} became {b}."],
        lambda a, b, y: [f"The council renamed {a} to {b} in {y}."],
        lambda a, b, y: [f"Under the charter of {y} the borough of {a} took the name {b}."],
        lambda a, b, y: [f"The firm {a} was rebranded as {b} in {y}."],
        lambda a, b, y: [f"The village known as {a} was officially renamed {b} in {y}."],
    ],
    1: [
        lambda a, b, y: [
            f"The port was first recorded as {a}.",
            f"It was renamed {b} in {y}.",
        ],
        lambda a, b, y: [
            f"In {y} the assembly voted to rename {a}.",
            f"The district has been called {b} ever since.",
        ],
        lambda a, b, y: [
            f"The company traded as {a} for decades.",
            f"Its name changed to {b} in {y}.",
        ],
        lambda a, b, y: [
            f"Old charts still show the bay as {a}.",
            f"Surveyors relabeled it {b} in {y}.",
        ],
    ],
    2: [
        lambda a, b, y: [
            f"The monastery was founded as {a}.",
            "Pilgrims arrived from every region.",
            f"In {y} it adopted the name {b}.",
        ],
        lambda a, b, y: [
            f"Historians first mention {a} around {y}.",
            "The marsh was drained and the walls rebuilt.",
            f"The chronicle later calls the same town {b}.",
        ],
        lambda a, b, y: [
            f"The mine operated under the name {a}.",
            "Production doubled within a generation.",
            f"Its owners renamed it {b} in {y}.",
        ],
    ],
}

NEGATIVE_TEMPLATES: list[Callable[[str, str, int], list[str]]] = [
    lambda a, b, y: [f"The army of {a} besieged {b} in {y}."],
    lambda a, b, y: [f"Merchants from {a} sold cloth in {b} around {y}."],
    lambda a, b, y: [f"The road linking {a} and {b} opened in {y}."],
    lambda a, b, y: [f"Delegates from {a} met the envoys of {b} in {y}."],
    lambda a, b, y: [f"The flood of {y} destroyed the bridge between {a} and {b}."],
    lambda a, b, y: [f"The treaty of {y} divided the valley between {a} and {b}."],
    lambda a, b, y: [
        f"The fair returned to {a} in {y}.",
        f"Visitors arrived from {b} by river.",
    ],
    lambda a, b, y: [
        f"The harvest of {y} failed across {a}.",
        f"Grain was shipped in from {b} instead.",
    ],
    lambda a, b, y: [
        f"The duke of {a} raised taxes in {y}.",
        "The burghers petitioned the crown.",
        f"Soldiers from {b} restored order.",
    ],
]


def _pick_names(rng: random.Random) -> tuple[str, str]:
    pool = SINGLE_NAMES + DOUBLE_NAMES
    a, b = rng.sample(pool, 2)
    return a, b


def _year(rng: random.Random) -> int:
    return rng.randint(1050, 2090)


def generate_article(article_id: str, rng: random.Random,
                     n_positives: int = 4, n_negatives: int = 3) -> CorpusArticle:
    blocks: list[tuple[list[str], bool]] = []
    for i in range(n_positives):
        distance = i % 3
        template = rng.choice(POSITIVE_TEMPLATES[distance])
        a, b = _pick_names(rng)
        blocks.append((template(a, b, _year(rng)), True))
    for _ in range(n_negatives):
        template = rng.choice(NEGATIVE_TEMPLATES)
        a, b = _pick_names(rng)
        blocks.append((template(a, b, _year(rng)), False))
    rng.shuffle(blocks)

    sentences: list[str] = []
    positives: list[tuple[int, int]] = []
    for block_sentences, is_positive in blocks:
        if sentences and rng.random() < 0.5:
            sentences.append(rng.choice(FILLER))
        start = len(sentences)
        sentences.extend(block_sentences)
        if is_positive:
            positives.append((start, start + len(block_sentences) - 1))

    article = CorpusArticle(
        source_id=article_id,
        text=" ".join(sentences),
        positives=tuple(positives),
    )
    _validate_article(article, expected_sentences=len(sentences))
    return article


def _validate_article(article: CorpusArticle, expected_sentences: int) -> None:
    doc = analyze(article.text, article.source_id)
    if len(doc.sentences) != expected_sentences:
        raise ValueError(
            f"{article.source_id}: splitter produced {len(doc.sentences)} sentences, "
            f"template produced {expected_sentences}")
    candidate_ranges = {
        (c.first_sentence, c.last_sentence)
        for c in extract_candidates(doc, max_distance=2)
    }
    for window in article.positives:
        if window not in candidate_ranges:
            raise ValueError(
                f"{article.source_id}: positive window {window} is not a candidate")


def generate_corpus(n_articles: int = 60, seed: int = 0) -> list[CorpusArticle]:
    """Deterministic synthetic corpus; about 4 positives per article, evenly
    spread over distances 0-2."""
    rng = random.Random(seed)
    return [
        generate_article(f"synthetic-{i:03d}", rng,
                         n_positives=rng.randint(3, 5),
                         n_negatives=rng.randint(2, 4))
        for i in range(n_articles)
    ]
