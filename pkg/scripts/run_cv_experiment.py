#!/usr/bin/env python3
"""Cross-validation experiment over the bundled and synthetic corpora.

Reports the 10-fold mean accuracy of every dataset across several seeds, the
kind of table worth eyeballing after touching the segmenter, the feature
scheme or the trainer.

    python3 scripts/run_cv_experiment.py --seeds 0 1 2
"""

import argparse
from importlib import resources
from statistics import mean

from nameline.svm import TrainConfig
from nameline.synth import generate_corpus
from nameline.training import build_datasets, cross_validate, load_corpus

TAGS = ("D0", "D1", "D2", "All")


def cv_row(articles, seed: int, k: int) -> dict[str, float]:
    datasets = build_datasets(articles, ratio=1.0, seed=seed)
    config = TrainConfig(seed=seed)
    return {tag: cross_validate(datasets[tag], k=k, config=config, seed=seed).mean_accuracy
            for tag in TAGS}


def run(name: str, articles, seeds, k: int) -> None:
    print(f"\n{name} ({len(articles)} articles, k={k})")
    print("seed  " + "  ".join(f"{tag:>6}" for tag in TAGS))
    rows = []
    for seed in seeds:
        row = cv_row(articles, seed, k)
        rows.append(row)
        print(f"{seed:<4}  " + "  ".join(f"{row[tag]:6.3f}" for tag in TAGS))
    print("mean  " + "  ".join(
        f"{mean(r[tag] for r in rows):6.3f}" for tag in TAGS))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    parser.add_argument("--k", type=int, default=10)
    parser.add_argument("--synthetic-articles", type=int, default=60)
    args = parser.parse_args()

    fixture_path = resources.files("nameline").joinpath("fixtures/corpus.jsonl")
    run("fixture corpus", load_corpus(str(fixture_path)), args.seeds, args.k)
    run("synthetic corpus", generate_corpus(args.synthetic_articles, seed=0),
        args.seeds, args.k)


if __name__ == "__main__":
    main()
