"""Dataset construction, cross-validation and model-set training.

A labeled corpus is a JSONL file of articles with positive excerpt windows
given as sentence ranges against this package's own splitter.  Negatives are
sampled (seeded) from the remaining candidate windows of the same articles,
matched by sentence distance and never sharing a sentence with a positive.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from statistics import mean
from typing import Iterable, Sequence

from .excerpt import Excerpt, extract_candidates
from .features import build_index, stream_vector
from .pipeline import ModelSet, TAG_FOR_DISTANCE
from .svm import Model, TrainConfig, TrainingError, classify, train_smo
from .textseg import SegmenterConfig, analyze

POSITIVE = 1
NEGATIVE = -1
DATASET_TAGS = ("D0", "D1", "D2", "All")


class CorpusError(Exception):
    pass


class DatasetError(Exception):
    pass


@dataclass(frozen=True)
class CorpusArticle:
    source_id: str
    text: str
    positives: tuple[tuple[int, int], ...] = ()


def load_corpus(path) -> list[CorpusArticle]:
    articles = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                articles.append(CorpusArticle(
                    source_id=record["source_id"],
                    text=record["text"],
                    positives=tuple(
                        (p["first_sentence"], p["last_sentence"])
                        for p in record.get("positives", [])
                    ),
                ))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise CorpusError(f"{path}:{lineno}: bad corpus record: {exc}") from exc
    return articles


def dump_corpus(articles: Iterable[CorpusArticle], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for article in articles:
            record = {
                "source_id": article.source_id,
                "text": article.text,
                "positives": [
                    {"first_sentence": a, "last_sentence": b}
                    for a, b in article.positives
                ],
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


@dataclass(frozen=True)
class LabeledExcerpt:
    generalized: tuple[str, ...]
    distance: int
    label: int
    source_id: str


@dataclass
class Dataset:
    tag: str
    items: list[LabeledExcerpt] = field(default_factory=list)

    @property
    def positives(self) -> int:
        return sum(1 for item in self.items if item.label == POSITIVE)

    @property
    def negatives(self) -> int:
        return sum(1 for item in self.items if item.label == NEGATIVE)

    @property
    def trainable(self) -> bool:
        return self.positives > 0 and self.negatives > 0


def _labeled(excerpt: Excerpt, label: int) -> LabeledExcerpt:
    return LabeledExcerpt(
        generalized=excerpt.generalized,
        distance=excerpt.distance,
        label=label,
        source_id=excerpt.source_id,
    )


def build_datasets(articles: Sequence[CorpusArticle], ratio: float = 1.0, seed: int = 0,
                   max_distance: int = 2,
                   segmenter: SegmenterConfig | None = None) -> dict[str, Dataset]:
    """Build the D0/D1/D2/All datasets from a labeled corpus.

    Positives pass through unchanged; negatives are drawn uniformly (seeded)
    from the candidate windows of the same articles, excluding anything that
    shares a sentence with a positive, matched by distance at
    ``ratio`` negatives per positive.
    """
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    positives: dict[int, list[Excerpt]] = {d: [] for d in range(max_distance + 1)}
    pools: dict[int, list[Excerpt]] = {d: [] for d in range(max_distance + 1)}

    for article in articles:
        doc = analyze(article.text, article.source_id, segmenter)
        candidates = extract_candidates(doc, max_distance)
        by_range = {(c.first_sentence, c.last_sentence): c for c in candidates}
        positive_sentences: set[int] = set()
        for first, last in article.positives:
            excerpt = by_range.get((first, last))
            if excerpt is None:
                raise CorpusError(
                    f"{article.source_id}: labeled window ({first}, {last}) is not a "
                    f"valid candidate excerpt")
            positives[excerpt.distance].append(excerpt)
            positive_sentences.update(range(first, last + 1))
        marked = set(article.positives)
        for candidate in candidates:
            if (candidate.first_sentence, candidate.last_sentence) in marked:
                continue
            window = range(candidate.first_sentence, candidate.last_sentence + 1)
            if positive_sentences.intersection(window):
                continue
            pools[candidate.distance].append(candidate)

    rng = random.Random(seed)
    datasets: dict[str, Dataset] = {}
    all_items: list[LabeledExcerpt] = []
    for distance in range(max_distance + 1):
        tag = TAG_FOR_DISTANCE[distance]
        items = [_labeled(e, POSITIVE) for e in positives[distance]]
        wanted = round(ratio * len(items))
        pool = pools[distance]
        if items and not pool:
            raise DatasetError(
                f"no eligible negative windows at distance {distance} "
                f"({len(items)} positives need negatives)")
        if wanted:
            sampled = rng.sample(pool, min(wanted, len(pool)))
            items.extend(_labeled(e, NEGATIVE) for e in sampled)
        datasets[tag] = Dataset(tag=tag, items=items)
        all_items.extend(items)
    datasets["All"] = Dataset(tag="All", items=all_items)
    return datasets


@dataclass
class FoldCounts:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def accuracy(self) -> float:
        return (self.tp + self.tn) / self.total if self.total else 0.0

    @property
    def precision(self) -> float:
        predicted = self.tp + self.fp
        return self.tp / predicted if predicted else 1.0

    @property
    def recall(self) -> float:
        actual = self.tp + self.fn
        return self.tp / actual if actual else 1.0


@dataclass
class CVReport:
    tag: str
    k: int
    fold_accuracies: list[float]
    mean_accuracy: float
    folds: list[FoldCounts]
    # size of the feature index each fold trained with; differing sizes are
    # direct evidence the index was built from the training partition only
    fold_index_sizes: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "k": self.k,
            "fold_accuracies": self.fold_accuracies,
            "mean_accuracy": self.mean_accuracy,
            "fold_index_sizes": self.fold_index_sizes,
            "folds": [
                {"tp": f.tp, "fp": f.fp, "tn": f.tn, "fn": f.fn}
                for f in self.folds
            ],
        }

    def format_text(self) -> str:
        lines = [f"dataset {self.tag}: {self.k}-fold cross-validation"]
        for i, (acc, counts) in enumerate(zip(self.fold_accuracies, self.folds)):
            lines.append(
                f"  fold {i}: accuracy={acc:.4f} "
                f"tp={counts.tp} fp={counts.fp} tn={counts.tn} fn={counts.fn}")
        lines.append(f"  mean accuracy: {self.mean_accuracy:.4f}")
        return "\n".join(lines)


def train_on_items(items: Sequence[LabeledExcerpt], config: TrainConfig,
                   tag: str) -> Model:
    index = build_index(item.generalized for item in items)
    examples = [(stream_vector(item.generalized, index), item.label) for item in items]
    return train_smo(examples, config, index=index, distance_tag=tag)


def evaluate_model(model: Model, items: Sequence[LabeledExcerpt]) -> FoldCounts:
    counts = FoldCounts()
    for item in items:
        predicted = classify(model, stream_vector(item.generalized, model.index))
        if item.label == POSITIVE:
            if predicted == POSITIVE:
                counts.tp += 1
            else:
                counts.fn += 1
        else:
            if predicted == POSITIVE:
                counts.fp += 1
            else:
                counts.tn += 1
    return counts


def cross_validate(dataset: Dataset, k: int = 10, config: TrainConfig | None = None,
                   seed: int = 0) -> CVReport:
    """Stratified seeded k-fold cross-validation of one dataset.

    Each fold trains a fresh model with a feature index built only from that
    fold's training partition.
    """
    config = config or TrainConfig()
    if k < 2:
        raise DatasetError("k must be at least 2")
    pos = [item for item in dataset.items if item.label == POSITIVE]
    neg = [item for item in dataset.items if item.label == NEGATIVE]
    if len(pos) < k or len(neg) < k:
        raise DatasetError(
            f"dataset {dataset.tag}: stratified {k}-fold split impossible "
            f"({len(pos)} positives, {len(neg)} negatives)")
    rng = random.Random(seed)
    rng.shuffle(pos)
    rng.shuffle(neg)
    folds = [pos[i::k] + neg[i::k] for i in range(k)]

    accuracies: list[float] = []
    counts_per_fold: list[FoldCounts] = []
    index_sizes: list[int] = []
    for i in range(k):
        held_out = folds[i]
        train_items = [item for j, fold in enumerate(folds) if j != i for item in fold]
        model = train_on_items(train_items, config, dataset.tag)
        counts = evaluate_model(model, held_out)
        counts_per_fold.append(counts)
        accuracies.append(counts.accuracy)
        index_sizes.append(len(model.index))
    return CVReport(
        tag=dataset.tag,
        k=k,
        fold_accuracies=accuracies,
        mean_accuracy=mean(accuracies),
        folds=counts_per_fold,
        fold_index_sizes=index_sizes,
    )


def train_model_set(datasets: dict[str, Dataset], config: TrainConfig | None = None) -> ModelSet:
    """One model per dataset tag; fails naming the first untrainable tag."""
    config = config or TrainConfig()
    models: dict[str, Model] = {}
    for tag in DATASET_TAGS:
        dataset = datasets[tag]
        if not dataset.trainable:
            raise DatasetError(
                f"dataset {tag} is untrainable "
                f"({dataset.positives} positives, {dataset.negatives} negatives)")
        try:
            models[tag] = train_on_items(dataset.items, config, tag)
        except TrainingError as exc:
            raise DatasetError(f"training failed for {tag}: {exc}") from exc
    return ModelSet(
        by_distance={0: models["D0"], 1: models["D1"], 2: models["D2"]},
        all_model=models["All"],
    )
