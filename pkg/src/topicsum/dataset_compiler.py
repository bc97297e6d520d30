"""Compile a topic-oriented dataset of two-topic super-articles.

Each source article gets the topic of its summary. Pairs of articles with
different topics are then drawn at random and their sentences interleaved;
every pair yields two super-articles, one per source summary.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, fields
from itertools import zip_longest
from pathlib import Path
from typing import Iterable, Sequence

from .config import DOMINANCE_RATIO
from .corpus_io import Corpus, Document, dumps_jsonl, filter_min_topic_frequency
from .errors import CorpusError, NoContentError, TopicsumError
from .textproc import split_sentences
from .topic_model import TopicModel, assign_topic
from .vectorizer import TfIdfModel


@dataclass(frozen=True)
class SuperArticle:
    id: str
    text: str
    summary: str
    topic: str
    source_ids: tuple[str, str]

    def to_json(self) -> dict:
        return {"id": self.id, "text": self.text, "summary": self.summary, "topic": self.topic, "source_ids": list(self.source_ids)}

    @classmethod
    def from_json(cls, row: dict) -> "SuperArticle":
        try:
            a, b = row["source_ids"]
            return cls(row["id"], row["text"], row["summary"], row["topic"], (a, b))
        except (KeyError, TypeError, ValueError) as exc:
            raise TopicsumError(f"malformed super-article: {exc}") from None


@dataclass
class CompileStats:
    input_count: int = 0
    assigned_count: int = 0
    discarded_multi_dominant: int = 0
    discarded_low_frequency: int = 0
    discarded_no_content: int = 0
    discarded_excluded: int = 0
    pairs_formed: int = 0
    leftover_same_topic: int = 0

    def merge(self, other: "CompileStats") -> "CompileStats":
        """Combine assignment-stage counts from ``self`` with pairing-stage counts from *other*."""
        return CompileStats(
            self.input_count,
            self.assigned_count,
            self.discarded_multi_dominant,
            self.discarded_low_frequency,
            self.discarded_no_content,
            self.discarded_excluded,
            other.pairs_formed,
            other.leftover_same_topic,
        )

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, row: dict) -> "CompileStats":
        return cls(**{f.name: int(row.get(f.name, 0)) for f in fields(cls)})


def build_intermediate(
    corpus: Corpus,
    topic_model: TopicModel,
    tfidf: TfIdfModel,
    dominance_ratio: float = DOMINANCE_RATIO,
    min_topic_docs: int = 1,
    raw_bow: bool = False,
    exclude_topics: Iterable[str] = (),
) -> tuple[Corpus, CompileStats]:
    """Label every article with the topic of its summary.

    Articles whose summary is multi-dominant or has no in-vocabulary lemma are
    dropped, as are articles assigned one of *exclude_topics* (held out for
    zero-shot evaluation). Finally, articles of topics left with fewer than
    *min_topic_docs* members are dropped.
    """
    excluded = {t.strip() for t in exclude_topics}
    stats = CompileStats(input_count=len(corpus))
    kept = []
    for doc in corpus:
        if doc.summary is None:
            raise CorpusError(f"document {doc.id} has no summary")
        try:
            topic, _, multi = assign_topic(topic_model, tfidf, doc.summary, dominance_ratio, raw_bow=raw_bow)
        except NoContentError:
            stats.discarded_no_content += 1
            continue
        if multi:
            stats.discarded_multi_dominant += 1
            continue
        if topic in excluded:
            stats.discarded_excluded += 1
            continue
        kept.append(doc.replace(topic=topic))
    assigned = Corpus(kept)
    filtered = filter_min_topic_frequency(assigned, min_topic_docs)
    stats.discarded_low_frequency = len(assigned) - len(filtered)
    stats.assigned_count = len(filtered)
    return filtered, stats


def interleave(first: Sequence[str], second: Sequence[str]) -> list[str]:
    """Round-robin merge; once one side runs out the other's remainder follows."""
    out = []
    for a, b in zip_longest(first, second):
        if a is not None:
            out.append(a)
        if b is not None:
            out.append(b)
    return out


def _draw_pair(pool: list[Document], rng: random.Random) -> tuple[Document, Document]:
    a = pool[rng.randrange(len(pool))]
    # rejection sampling first; fall back to an explicit scan for skewed pools
    for _ in range(32):
        b = pool[rng.randrange(len(pool))]
        if b.topic != a.topic:
            return a, b
    others = [d for d in pool if d.topic != a.topic]
    return a, others[rng.randrange(len(others))]


def compile_pairs(
    intermediate: Corpus, seed: int, identical_pair_text: bool = False
) -> tuple[list[SuperArticle], CompileStats]:
    """Pair articles of different topics until the pool is empty or single-topic.

    For a drawn pair ``(a1, a2)`` the first super-article interleaves sentences
    starting with ``a1`` and carries ``a1``'s summary and topic; the second
    starts with ``a2`` (or reuses the first text when *identical_pair_text*)
    and carries ``a2``'s summary and topic.
    """
    for doc in intermediate:
        if doc.topic is None or doc.summary is None:
            raise CorpusError(f"document {doc.id} is not topic-assigned with a summary")
    rng = random.Random(seed)
    pool = list(intermediate)
    position = {doc.id: i for i, doc in enumerate(pool)}
    counts: dict[str, int] = {}
    for doc in pool:
        counts[doc.topic] = counts.get(doc.topic, 0) + 1
    out: list[SuperArticle] = []
    stats = CompileStats(input_count=len(intermediate), assigned_count=len(intermediate))
    while pool and len(counts) > 1:
        a1, a2 = _draw_pair(pool, rng)
        s1, s2 = split_sentences(a1.text), split_sentences(a2.text)
        text1 = " ".join(interleave(s1, s2))
        text2 = text1 if identical_pair_text else " ".join(interleave(s2, s1))
        out.append(SuperArticle(f"{a1.id}+{a2.id}", text1, a1.summary, a1.topic, (a1.id, a2.id)))
        out.append(SuperArticle(f"{a2.id}+{a1.id}", text2, a2.summary, a2.topic, (a2.id, a1.id)))
        for doc in (a1, a2):
            i = position.pop(doc.id)
            last = pool.pop()
            if last is not doc:
                pool[i] = last
                position[last.id] = i
            counts[doc.topic] -= 1
            if not counts[doc.topic]:
                del counts[doc.topic]
        stats.pairs_formed += 1
    stats.leftover_same_topic = len(pool)
    return out, stats


def compile_dataset(
    corpus: Corpus,
    topic_model: TopicModel,
    tfidf: TfIdfModel,
    seed: int,
    dominance_ratio: float = DOMINANCE_RATIO,
    min_topic_docs: int = 1,
    identical_pair_text: bool = False,
    raw_bow: bool = False,
    exclude_topics: Iterable[str] = (),
) -> tuple[list[SuperArticle], CompileStats]:
    intermediate, assign_stats = build_intermediate(
        corpus, topic_model, tfidf, dominance_ratio, min_topic_docs, raw_bow, exclude_topics
    )
    articles, pair_stats = compile_pairs(intermediate, seed, identical_pair_text)
    return articles, assign_stats.merge(pair_stats)


def _pair_key(article: SuperArticle) -> tuple[str, str]:
    return tuple(sorted(article.source_ids))  # type: ignore[return-value]


def split_dataset(
    super_articles: Sequence[SuperArticle], ratios: Sequence[float], seed: int
) -> tuple[list[SuperArticle], list[SuperArticle], list[SuperArticle]]:
    """Shuffle whole pairs with *seed* and slice them into train/validation/test.

    Both super-articles built from one source pair always land in the same split.
    """
    if len(ratios) != 3 or any(r <= 0 for r in ratios):
        raise ValueError("ratios must be three positive numbers")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("ratios must sum to 1")
    groups: dict[tuple[str, str], list[SuperArticle]] = {}
    for art in super_articles:
        groups.setdefault(_pair_key(art), []).append(art)
    keys = list(groups)
    if len(keys) < 3:
        raise TopicsumError(f"need at least 3 pairs to split, got {len(keys)}")
    random.Random(seed).shuffle(keys)
    n = len(keys)
    n_train = round(n * ratios[0])
    n_val = min(round(n * ratios[1]), n - n_train)
    bounds = (0, n_train, n_train + n_val, n)
    return tuple(  # type: ignore[return-value]
        [art for key in keys[lo:hi] for art in groups[key]] for lo, hi in zip(bounds, bounds[1:])
    )


def super_articles_to_jsonl(articles: Iterable[SuperArticle]) -> str:
    return dumps_jsonl(a.to_json() for a in articles)


def load_super_articles(path: str | Path) -> list[SuperArticle]:
    with open(path, encoding="utf-8") as fh:
        return [SuperArticle.from_json(json.loads(line)) for line in fh if line.strip()]
