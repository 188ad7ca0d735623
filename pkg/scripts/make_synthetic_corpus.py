#!/usr/bin/env python3
"""Generate a synthetic labeled corpus for training experiments.

Example:
    python3 scripts/make_synthetic_corpus.py --articles 60 --seed 0 --out synthetic.jsonl
"""

import argparse

from nameline.synth import generate_corpus
from nameline.training import build_datasets, dump_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--articles", type=int, default=60)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", required=True, help="output JSONL path")
    args = parser.parse_args()

    corpus = generate_corpus(args.articles, seed=args.seed)
    dump_corpus(corpus, args.out)
    datasets = build_datasets(corpus, ratio=1.0, seed=args.seed)
    print(f"wrote {args.out}: {len(corpus)} articles")
    for tag in ("D0", "D1", "D2", "All"):
        dataset = datasets[tag]
        print(f"  {tag}: {dataset.positives} positives, {dataset.negatives} negatives")


if __name__ == "__main__":
    main()
