"""Command line front-end.

    topicsum fit      --input topics.jsonl --model tfidf.json --topics topics.json
    topicsum terms    --model tfidf.json --topics topics.json [--topic Sports] [--n 100]
    topicsum score    --model tfidf.json --topics topics.json --pairs summaries.jsonl
    topicsum rouge    --pairs pairs.jsonl
    topicsum tag      --input corpus.jsonl --terms terms.jsonl [--prepend]
    topicsum prepend  --input corpus.jsonl [--topic Sports]
    topicsum compile  --input cnndm.jsonl --model tfidf.json --topics topics.json --seed 7
    topicsum split    --input super.jsonl --ratios 0.8,0.1,0.1 --output-dir splits/
    topicsum fixture  --seed 0 --output fixture.jsonl

Outputs are written atomically. Exit status is 0 on success, 1 on a runtime
failure and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import config
from .control_tokens import apply_both, prepend_topic, tag_document
from .corpus_io import (
    atomic_write_text,
    corpus_to_jsonl,
    dumps_jsonl,
    exclude_topics,
    filter_min_topic_frequency,
    load_corpus,
)
from .dataset_compiler import compile_dataset, load_super_articles, split_dataset, super_articles_to_jsonl
from .errors import TopicsumError
from .fixture import generate_fixture
from .rouge import mean_f1, rouge
from .stas import ScoreBatch, score_batch
from .textproc import load_lemmatizer
from .topic_model import build_prototypes, load_term_sets, load_topic_model, term_sets_to_jsonl, top_terms
from .vectorizer import fit, load_model

log = logging.getLogger("topicsum")

def _ratio(value: str) -> float:
    x = float(value)
    if not 0.0 < x <= 1.0:
        raise argparse.ArgumentTypeError("must lie in (0, 1]")
    return x


def _unit(value: str) -> float:
    x = float(value)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return x


def _positive_int(value: str) -> int:
    x = int(value)
    if x < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return x


def _ratios(value: str) -> tuple[float, float, float]:
    try:
        parts = tuple(float(p) for p in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected three comma-separated numbers") from None
    if len(parts) != 3 or any(p <= 0 for p in parts) or abs(sum(parts) - 1.0) > 1e-9:
        raise argparse.ArgumentTypeError("expected three positive numbers summing to 1")
    return parts  # type: ignore[return-value]


def _topic_list(value: str) -> list[str]:
    return [t.strip() for t in value.split(",") if t.strip()]


class _HelpFormatter(argparse.ArgumentDefaultsHelpFormatter):
    def _get_help_string(self, action):
        text = action.help or ""
        if "(default" in text or action.default in (None, False, argparse.SUPPRESS):
            return text
        return super()._get_help_string(action)


def build_parser() -> argparse.ArgumentParser:
    fmt = _HelpFormatter
    parser = argparse.ArgumentParser(
        prog="topicsum",
        description="Topic affinity scoring and topic-controllable training data preparation.",
        formatter_class=fmt,
    )
    parser.add_argument("--show-defaults", action="store_true", help="print every default setting as JSON and exit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    lem = argparse.ArgumentParser(add_help=False)
    lem.add_argument("--lemma-exceptions", metavar="JSONL", help="extra {surface, lemma} overrides for the lemmatizer")

    models = argparse.ArgumentParser(add_help=False)
    models.add_argument("--model", required=True, metavar="JSON", help="fitted tf-idf model")
    models.add_argument("--topics", required=True, metavar="JSON", help="topic prototypes built by 'fit'")

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--output", "-o", metavar="PATH", help="output file (default: stdout)")

    p = sub.add_parser("fit", parents=[lem], formatter_class=fmt,
                       help="fit tf-idf and topic prototypes on a topic-labeled corpus")
    p.add_argument("--input", required=True, metavar="JSONL", help="topic-labeled corpus")
    p.add_argument("--model", required=True, metavar="JSON", help="where to write the tf-idf model")
    p.add_argument("--topics", required=True, metavar="JSON", help="where to write the topic prototypes")
    p.add_argument("--min-topic-docs", type=_positive_int, default=config.MIN_TOPIC_DOCS,
                   help="drop topics labeling fewer documents than this")
    p.add_argument("--exclude-topics", type=_topic_list, default=[], metavar="A,B",
                   help="comma-separated topics to leave out")
    p.add_argument("--no-normalize-before-average", dest="normalize_before_average", action="store_false",
                   help="average raw tf-idf vectors instead of L2-normalized ones")

    p = sub.add_parser("terms", parents=[models, out], formatter_class=fmt,
                       help="export the top-N representative terms per topic")
    p.add_argument("--topic", action="append", metavar="TOPIC", help="restrict to this topic (repeatable; default: all)")
    p.add_argument("--n", type=_positive_int, default=config.TOP_N,
                   help="representative terms (top-N) per topic")

    p = sub.add_parser("score", parents=[lem, models, out], formatter_class=fmt,
                       help="compute STAS for {id, summary, topic} records")
    p.add_argument("--pairs", required=True, metavar="JSONL", help="records with id, summary and requested topic")
    p.add_argument("--threshold", type=_unit, default=config.RELEVANCE_THRESHOLD,
                   help="inclusive STAS relevance threshold; lowest score of summaries people rated strongly on-topic (default: %(default).4f)")

    p = sub.add_parser("rouge", parents=[out], formatter_class=fmt,
                       help="ROUGE-1/2/L F1 for {id, candidate, reference} records")
    p.add_argument("--pairs", required=True, metavar="JSONL")

    p = sub.add_parser("tag", parents=[lem, out], formatter_class=fmt,
                       help="surround each document's topic terms with the tag marker")
    p.add_argument("--input", required=True, metavar="JSONL")
    p.add_argument("--terms", required=True, metavar="JSONL", help="term sets written by 'terms'")
    p.add_argument("--topic", help="tag every document for this topic instead of its own 'topic' field")
    p.add_argument("--prepend", action="store_true", help="also prepend the topic label")
    p.add_argument("--marker", default=config.TAG_MARKER)
    p.add_argument("--separator", default=config.PREPEND_SEPARATOR, help="text between prepended topic and body")

    p = sub.add_parser("prepend", parents=[out], formatter_class=fmt, help="prepend the topic label to each document")
    p.add_argument("--input", required=True, metavar="JSONL")
    p.add_argument("--topic", help="prepend this topic instead of each document's 'topic' field")
    p.add_argument("--separator", default=config.PREPEND_SEPARATOR)

    p = sub.add_parser("compile", parents=[lem, models], formatter_class=fmt,
                       help="build the two-topic super-article dataset")
    p.add_argument("--input", required=True, metavar="JSONL", help="articles with reference summaries")
    p.add_argument("--output", "-o", required=True, metavar="JSONL")
    p.add_argument("--stats", metavar="JSON", help="sidecar stats file (default: OUTPUT with .stats.json suffix)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dominance-ratio", type=_ratio, default=config.DOMINANCE_RATIO,
                   help="discard summaries whose runner-up topic reaches this fraction of the best similarity")
    p.add_argument("--min-topic-docs", type=_positive_int, default=config.MIN_TOPIC_DOCS,
                   help="drop assigned topics with fewer articles than this")
    p.add_argument("--exclude-topics", type=_topic_list, default=[], metavar="A,B",
                   help="comma-separated topics held out (zero-shot evaluation)")
    p.add_argument("--identical-pair-text", action="store_true",
                   help="give both super-articles of a pair the same interleaved text")
    p.add_argument("--raw-bow", action="store_true",
                   help="assign topics by raw-count dot product instead of tf-idf cosine")
    p.add_argument("--ratios", type=_ratios, metavar="TRAIN,VAL,TEST",
                   help="also write OUTPUT.{train,val,test}.jsonl split by pair")

    p = sub.add_parser("split", formatter_class=fmt, help="split super-articles into train/val/test by pair")
    p.add_argument("--input", required=True, metavar="JSONL")
    p.add_argument("--output-dir", required=True, metavar="DIR")
    p.add_argument("--ratios", type=_ratios, default=config.SPLIT_RATIOS, metavar="TRAIN,VAL,TEST",
                   help="split proportions, by pair (default: " + ",".join(map(str, config.SPLIT_RATIOS)) + ")")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("fixture", parents=[out], formatter_class=fmt, help="write the synthetic 6-topic fixture corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--docs-per-topic", type=_positive_int, default=25)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        atomic_write_text(path, text)
    else:
        sys.stdout.write(text)


def _check_inputs(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    for name in ("input", "model", "pairs", "terms", "lemma_exceptions"):
        if args.command == "fit" and name == "model":
            continue
        value = getattr(args, name, None)
        if value and not Path(value).is_file():
            parser.error(f"--{name.replace('_', '-')}: no such file: {value}")
    if args.command != "fit" and getattr(args, "topics", None) and not Path(args.topics).is_file():
        parser.error(f"--topics: no such file: {args.topics}")


def _load_models(args):
    lemmatizer = load_lemmatizer(getattr(args, "lemma_exceptions", None))
    tfidf = load_model(args.model, lemmatizer)
    return tfidf, load_topic_model(args.topics, tfidf)


def _read_jsonl(path: str) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise TopicsumError(f"{path}: malformed JSON at line {lineno}: {exc}") from None
            if not isinstance(row, dict):
                raise TopicsumError(f"{path}: line {lineno} is not a JSON object")
            rows.append(row)
    return rows


def _require(row: dict, keys, path: str, lineno: int):
    missing = [k for k in keys if not isinstance(row.get(k), str)]
    if missing:
        raise TopicsumError(f"{path}: record {lineno} lacks string field(s) {', '.join(missing)}")
    return tuple(row[k] for k in keys)


def cmd_fit(args) -> None:
    lemmatizer = load_lemmatizer(args.lemma_exceptions)
    corpus = load_corpus(args.input, require_topics=True)
    if args.exclude_topics:
        corpus = exclude_topics(corpus, args.exclude_topics)
    kept = filter_min_topic_frequency(corpus, args.min_topic_docs)
    log.info("fit: %d of %d documents kept, %d topics", len(kept), len(corpus), len(kept.topics))
    if not len(kept):
        raise TopicsumError(f"no topic has at least {args.min_topic_docs} documents")
    tfidf = fit(kept, lemmatizer)
    topics = build_prototypes(tfidf, kept, normalize_before_average=args.normalize_before_average)
    tfidf.save(args.model)
    topics.save(args.topics)
    print(f"fitted {len(tfidf.vocabulary)} terms over {tfidf.doc_count} documents and {len(topics.topics)} topics")


def cmd_terms(args) -> None:
    tfidf, topics = _load_models(args)
    wanted = args.topic or list(topics.topics)
    _emit(term_sets_to_jsonl(top_terms(topics, t.strip(), args.n) for t in wanted), args.output)


def format_stas_table(batch: ScoreBatch) -> str:
    lines = [f"{'topic':<24} {'count':>6} {'STAS (%)':>9} {'relevant':>9}"]
    by_topic: dict[str, list] = {}
    for r in batch.reports:
        by_topic.setdefault(r.requested_topic, []).append(r)
    for topic in sorted(by_topic):
        rs = by_topic[topic]
        mean = 100 * sum(r.stas for r in rs) / len(rs)
        lines.append(f"{topic:<24} {len(rs):>6} {mean:>9.2f} {sum(r.relevant for r in rs):>9}")
    if batch.mean_stas is not None:
        lines.append(f"{'all':<24} {len(batch.reports):>6} {100 * batch.mean_stas:>9.2f} "
                     f"{sum(r.relevant for r in batch.reports):>9}")
    if batch.errors:
        lines.append(f"{len(batch.errors)} record(s) could not be scored")
    return "\n".join(lines) + "\n"


def cmd_score(args) -> None:
    tfidf, topics = _load_models(args)
    rows = _read_jsonl(args.pairs)
    pairs = [_require(row, ("id", "summary", "topic"), args.pairs, i) for i, row in enumerate(rows, 1)]
    batch = score_batch(topics, tfidf, [(i, s, t.strip()) for i, s, t in pairs], args.threshold)
    _emit(dumps_jsonl([r.to_json() for r in batch.records] + [batch.footer()]), args.output)
    (sys.stdout if args.output else sys.stderr).write(format_stas_table(batch))


def cmd_rouge(args) -> None:
    rows = _read_jsonl(args.pairs)
    records, scores = [], []
    for i, row in enumerate(rows, 1):
        pid, cand, ref = _require(row, ("id", "candidate", "reference"), args.pairs, i)
        s = rouge(cand, ref)
        scores.append(s)
        records.append({"id": pid, **s.to_json()})
    means = mean_f1(scores)
    if means is not None:
        records.append({"mean_f1": {"rouge1": means[0], "rouge2": means[1], "rougeL": means[2]}, "count": len(scores)})
    _emit(dumps_jsonl(records), args.output)
    if means is not None:
        table = f"{'':<8} {'R-1':>6} {'R-2':>6} {'R-L':>6}\n{'F1':<8} " + " ".join(f"{100 * m:>6.2f}" for m in means) + "\n"
        (sys.stdout if args.output else sys.stderr).write(table)


def cmd_tag(args) -> None:
    lemmatizer = load_lemmatizer(args.lemma_exceptions)
    corpus = load_corpus(args.input, require_topics=args.topic is None)
    term_sets = load_term_sets(args.terms)
    rows = []
    for doc in corpus:
        topic = (args.topic or doc.topic).strip()
        if topic not in term_sets:
            raise TopicsumError(f"document {doc.id}: no term set for topic {topic!r}")
        if args.prepend:
            res = apply_both(doc.text, topic, term_sets[topic], args.marker, args.separator, lemmatizer)
        else:
            res = tag_document(doc.text, term_sets[topic], args.marker, lemmatizer)
        row = doc.to_json()
        row.update(text=res.text, method=res.method, tag_count=res.tag_count)
        rows.append(row)
    _emit(dumps_jsonl(rows), args.output)


def cmd_prepend(args) -> None:
    corpus = load_corpus(args.input, require_topics=args.topic is None)
    rows = []
    for doc in corpus:
        res = prepend_topic(doc.text, (args.topic or doc.topic).strip(), args.separator)
        row = doc.to_json()
        row.update(text=res.text, method=res.method, tag_count=res.tag_count)
        rows.append(row)
    _emit(dumps_jsonl(rows), args.output)


def _split_paths(base: Path) -> list[Path]:
    stem = base.name[: -len(".jsonl")] if base.name.endswith(".jsonl") else base.name
    return [base.with_name(f"{stem}.{part}.jsonl") for part in ("train", "val", "test")]


def cmd_compile(args) -> None:
    tfidf, topics = _load_models(args)
    corpus = load_corpus(args.input)
    articles, stats = compile_dataset(
        corpus,
        topics,
        tfidf,
        seed=args.seed,
        dominance_ratio=args.dominance_ratio,
        min_topic_docs=args.min_topic_docs,
        identical_pair_text=args.identical_pair_text,
        raw_bow=args.raw_bow,
        exclude_topics=args.exclude_topics,
    )
    out = Path(args.output)
    stats_path = Path(args.stats) if args.stats else out.with_name(out.name + ".stats.json")
    atomic_write_text(out, super_articles_to_jsonl(articles))
    atomic_write_text(stats_path, json.dumps(stats.to_json(), indent=2) + "\n")
    if args.ratios:
        for path, part in zip(_split_paths(out), split_dataset(articles, args.ratios, args.seed)):
            atomic_write_text(path, super_articles_to_jsonl(part))
    print(f"{len(articles)} super-articles from {stats.pairs_formed} pairs; stats in {stats_path}")


def cmd_split(args) -> None:
    articles = load_super_articles(args.input)
    outdir = Path(args.output_dir)
    parts = split_dataset(articles, args.ratios, args.seed)
    for name, part in zip(("train", "val", "test"), parts):
        atomic_write_text(outdir / f"{name}.jsonl", super_articles_to_jsonl(part))
    print(" ".join(f"{name}={len(part)}" for name, part in zip(("train", "val", "test"), parts)))


def cmd_fixture(args) -> None:
    _emit(corpus_to_jsonl(generate_fixture(args.seed, args.docs_per_topic)), args.output)


COMMANDS = {
    "fit": cmd_fit,
    "terms": cmd_terms,
    "score": cmd_score,
    "rouge": cmd_rouge,
    "tag": cmd_tag,
    "prepend": cmd_prepend,
    "compile": cmd_compile,
    "split": cmd_split,
    "fixture": cmd_fixture,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.show_defaults:
        print(json.dumps(config.defaults(), indent=2))
        return 0
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    _check_inputs(parser, args)
    try:
        COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"topicsum {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
