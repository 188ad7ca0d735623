"""Command line entry points: train, crossval, timeline, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .ingest import (
    FetchError,
    IngestConfig,
    TimelineCache,
    cache_key,
    fetch_article,
    fetch_url,
    read_local_file,
)
from .pipeline import (
    build_timeline,
    load_model_set,
    save_model_set,
    timeline_from_dict,
    timeline_to_dict,
)
from .svm import ModelFormatError, TrainConfig
from .textseg import analyze
from .training import (
    CorpusError,
    DatasetError,
    DATASET_TAGS,
    build_datasets,
    cross_validate,
    load_corpus,
    train_model_set,
)


def _train_config(args) -> TrainConfig:
    return TrainConfig(C=args.C, tol=args.tol, max_passes=args.max_passes, seed=args.seed)


def _add_train_flags(parser) -> None:
    parser.add_argument("--C", type=float, default=1.0, help="SVM box constraint")
    parser.add_argument("--tol", type=float, default=1e-3, help="KKT tolerance")
    parser.add_argument("--max-passes", type=int, default=10,
                        help="consecutive no-change passes before the trainer stops")
    parser.add_argument("--seed", type=int, default=0, help="sampling / training seed")
    parser.add_argument("--ratio", type=float, default=1.0,
                        help="negatives sampled per positive")


def cmd_train(args) -> int:
    corpus = load_corpus(args.corpus)
    datasets = build_datasets(corpus, ratio=args.ratio, seed=args.seed)
    config = _train_config(args)
    model_set = train_model_set(datasets, config)
    out_dir = Path(args.out)
    save_model_set(model_set, out_dir)
    print(f"wrote 4 model files to {out_dir} (version {model_set.version})")

    if not args.skip_cv:
        reports = {}
        for tag in DATASET_TAGS:
            report = cross_validate(datasets[tag], k=args.k, config=config, seed=args.seed)
            reports[tag] = report.to_dict()
            print(report.format_text())
        report_path = out_dir / "cv_report.json"
        report_path.write_text(json.dumps(reports, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {report_path}")
    return 0


def cmd_crossval(args) -> int:
    corpus = load_corpus(args.corpus)
    datasets = build_datasets(corpus, ratio=args.ratio, seed=args.seed)
    config = _train_config(args)
    reports = {}
    for tag in DATASET_TAGS:
        report = cross_validate(datasets[tag], k=args.k, config=config, seed=args.seed)
        reports[tag] = report.to_dict()
        print(report.format_text())
    if args.report:
        Path(args.report).write_text(json.dumps(reports, indent=2) + "\n",
                                     encoding="utf-8")
        print(f"wrote {args.report}")
    return 0


def _format_table(timeline) -> str:
    if not timeline.entries:
        return "no evolutions found"
    lines = ["year  dist  sentences  source_id            excerpt"]
    for entry in timeline.entries:
        first, last = entry.sentence_range
        text = " ".join(entry.excerpt_text.split())
        if len(text) > 100:
            text = text[:97] + "..."
        lines.append(f"{entry.year:<5} {entry.distance:<5} {first}-{last:<8} "
                     f"{entry.source_id[:20]:<20} {text}")
    return "\n".join(lines)


def cmd_timeline(args) -> int:
    ingest = IngestConfig().with_env_overrides()
    if args.endpoint:
        ingest.endpoint = args.endpoint
    model_set = load_model_set(args.models)

    if args.file:
        result = read_local_file(args.file)
        subject = result.source_id
    elif args.url:
        result = fetch_url(args.url, min_paragraph_chars=ingest.min_paragraph_chars)
        subject = args.url
    else:
        result = fetch_article(args.query, endpoint=ingest.endpoint)
        subject = args.query

    def compute() -> dict:
        doc = analyze(result.text, result.source_id)
        return timeline_to_dict(build_timeline(doc, model_set, subject))

    if args.cache_dir:
        cache = TimelineCache(args.cache_dir, ingest.cache_ttl_seconds)
        payload = cache.get_or_compute(cache_key(subject, model_set.version), compute)
    else:
        payload = compute()

    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(_format_table(timeline_from_dict(payload)))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    ingest = IngestConfig().with_env_overrides()
    if args.endpoint:
        ingest.endpoint = args.endpoint
    if args.cache_dir:
        ingest.cache_dir = args.cache_dir
    if args.offline:
        ingest.offline = True
    config = ServiceConfig(
        model_dir=args.models,
        host=args.host,
        port=args.port,
        static_dir=args.static,
        ingest=ingest,
        compute_timeout_seconds=args.timeout,
    )
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nameline",
        description="find and order text excerpts describing entity name changes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="build datasets, train the four models")
    p_train.add_argument("corpus", help="labeled corpus (JSONL)")
    p_train.add_argument("--out", required=True, help="output directory for model files")
    p_train.add_argument("--k", type=int, default=10, help="cross-validation folds")
    p_train.add_argument("--skip-cv", action="store_true",
                         help="skip the cross-validation report")
    _add_train_flags(p_train)
    p_train.set_defaults(func=cmd_train)

    p_cv = sub.add_parser("crossval", help="cross-validate the four datasets")
    p_cv.add_argument("corpus", help="labeled corpus (JSONL)")
    p_cv.add_argument("--k", type=int, default=10, help="number of folds")
    p_cv.add_argument("--report", help="also write the reports to this JSON file")
    _add_train_flags(p_cv)
    p_cv.set_defaults(func=cmd_crossval)

    p_tl = sub.add_parser("timeline", help="build a timeline for a query, URL or file")
    p_tl.add_argument("query", nargs="?", help="encyclopedia article title")
    p_tl.add_argument("--url", help="fetch this web page instead of a query")
    p_tl.add_argument("--file", help="read this local text file instead of fetching")
    p_tl.add_argument("--models", required=True, help="directory with the 4 model files")
    p_tl.add_argument("--format", choices=("table", "json"), default="table")
    p_tl.add_argument("--endpoint", help="encyclopedia API endpoint override")
    p_tl.add_argument("--cache-dir", help="enable the timeline cache in this directory")
    p_tl.set_defaults(func=cmd_timeline)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--models", required=True, help="directory with the 4 model files")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static", help="directory of built UI assets to serve at /")
    p_serve.add_argument("--endpoint", help="encyclopedia API endpoint override")
    p_serve.add_argument("--cache-dir", help="cache directory override")
    p_serve.add_argument("--offline", action="store_true", help="never touch the network")
    p_serve.add_argument("--timeout", type=float, default=120.0,
                         help="per-request compute timeout in seconds")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "timeline":
        given = [x for x in (args.query, args.url, args.file) if x]
        if len(given) != 1:
            parser.error("provide exactly one of QUERY, --url or --file")
    try:
        return args.func(args)
    except (CorpusError, DatasetError, ModelFormatError, FetchError,
            FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
