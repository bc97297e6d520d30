"""Topic prototypes (mean tf-idf vector per topic), representative terms and topic assignment."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .config import DOMINANCE_RATIO, NORMALIZE_BEFORE_AVERAGE, TOP_N
from .corpus_io import Corpus, atomic_write_text, dumps_jsonl
from .errors import CorpusError, NoContentError, TopicsumError, UnknownTopicError
from .vectorizer import SparseVector, TfIdfModel, Vocabulary, cosine, mean_vector


@dataclass(frozen=True)
class TopicModel:
    topics: tuple[str, ...]
    prototypes: Mapping[str, SparseVector]
    source_counts: Mapping[str, int]
    vocabulary: Vocabulary

    def __post_init__(self):
        if list(self.topics) != sorted(set(self.topics)):
            raise ValueError("topics must be unique and sorted")
        if set(self.prototypes) != set(self.topics):
            raise ValueError("prototypes must cover exactly the topic list")
        for t in self.topics:
            if self.prototypes[t].norm <= 0.0:
                raise TopicsumError(f"topic {t!r} has an all-zero prototype")

    def prototype(self, topic: str) -> SparseVector:
        if topic not in self.prototypes:
            raise UnknownTopicError(topic, self.topics)
        return self.prototypes[topic]

    def similarities(self, vector: SparseVector) -> dict[str, float]:
        return {t: cosine(vector, self.prototypes[t]) for t in self.topics}

    def to_json(self) -> dict:
        return {
            "topics": list(self.topics),
            "prototypes": {t: [[i, w] for i, w in self.prototypes[t].entries] for t in self.topics},
            "source_counts": {t: self.source_counts[t] for t in self.topics},
        }

    def save(self, path: str | Path) -> None:
        atomic_write_text(path, json.dumps(self.to_json(), ensure_ascii=False) + "\n")


@dataclass(frozen=True)
class TermSet:
    topic: str
    terms: tuple[tuple[str, float], ...]
    n: int

    @property
    def lemmas(self) -> frozenset[str]:
        return frozenset(t for t, _ in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> dict:
        return {"topic": self.topic, "terms": [[t, s] for t, s in self.terms]}

    @classmethod
    def from_json(cls, row: dict) -> "TermSet":
        try:
            terms = tuple((str(t), float(s)) for t, s in row["terms"])
            return cls(str(row["topic"]).strip(), terms, len(terms))
        except (KeyError, TypeError, ValueError) as exc:
            raise TopicsumError(f"malformed term set: {exc}") from None


def build_prototypes(
    model: TfIdfModel, corpus: Corpus, normalize_before_average: bool = NORMALIZE_BEFORE_AVERAGE
) -> TopicModel:
    """Average the tf-idf vectors of each topic's documents into that topic's prototype."""
    grouped: dict[str, list[SparseVector]] = {}
    for doc in corpus:
        if doc.topic is None:
            raise CorpusError(f"document {doc.id} has no topic")
        grouped.setdefault(doc.topic, []).append(model.transform(doc.text, normalize=normalize_before_average))
    topics = tuple(sorted(grouped))
    return TopicModel(
        topics,
        {t: mean_vector(grouped[t]) for t in topics},
        {t: len(grouped[t]) for t in topics},
        model.vocabulary,
    )


def top_terms(topic_model: TopicModel, topic: str, n: int = TOP_N) -> TermSet:
    """The *n* highest-weight lemmas of a topic prototype, ties broken alphabetically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    proto = topic_model.prototype(topic)
    terms = topic_model.vocabulary.terms
    ranked = sorted(((terms[i], w) for i, w in proto.entries), key=lambda tw: (-tw[1], tw[0]))
    return TermSet(topic, tuple(ranked[:n]), n)


@dataclass(frozen=True)
class Assignment:
    topic: str
    similarities: dict[str, float]
    is_multi_dominant: bool

    def __iter__(self):
        return iter((self.topic, self.similarities, self.is_multi_dominant))


def dominant(similarities: Mapping[str, float]) -> str:
    return min(similarities, key=lambda t: (-similarities[t], t))


def assign_topic(
    topic_model: TopicModel,
    tfidf: TfIdfModel,
    text: str,
    dominance_ratio: float = DOMINANCE_RATIO,
    raw_bow: bool = False,
) -> Assignment:
    """Pick the most similar topic for *text* and flag texts with a close runner-up.

    With ``raw_bow`` the similarity is the plain dot product between the raw
    lemma counts of *text* and each prototype instead of the tf-idf cosine.
    """
    if not 0.0 < dominance_ratio <= 1.0:
        raise ValueError("dominance_ratio must lie in (0, 1]")
    if raw_bow:
        vec = tfidf.counts(text)
        if vec.norm == 0.0:
            raise NoContentError()
        sims = {t: vec.dot(topic_model.prototypes[t]) for t in topic_model.topics}
    else:
        vec = tfidf.transform(text)
        if vec.norm == 0.0:
            raise NoContentError()
        sims = topic_model.similarities(vec)
    best = dominant(sims)
    cutoff = dominance_ratio * sims[best]
    multi = any(s >= cutoff for t, s in sims.items() if t != best)
    return Assignment(best, sims, multi)


def topic_model_from_json(data: dict, tfidf: TfIdfModel) -> TopicModel:
    size = len(tfidf.vocabulary)
    try:
        topics = tuple(data["topics"])
        prototypes = {}
        for t in topics:
            entries = data["prototypes"][t]
            if any(not 0 <= int(i) < size for i, _ in entries):
                raise TopicsumError(f"prototype of {t!r} indexes outside the tf-idf vocabulary")
            prototypes[t] = SparseVector([int(i) for i, _ in entries], [float(w) for _, w in entries])
        counts = {t: int(data["source_counts"][t]) for t in topics}
    except (KeyError, TypeError, ValueError) as exc:
        raise TopicsumError(f"malformed topic model: {exc}") from None
    return TopicModel(topics, prototypes, counts, tfidf.vocabulary)


def load_topic_model(path: str | Path, tfidf: TfIdfModel) -> TopicModel:
    with open(path, encoding="utf-8") as fh:
        return topic_model_from_json(json.load(fh), tfidf)


def term_sets_to_jsonl(term_sets: Iterable[TermSet]) -> str:
    return dumps_jsonl(ts.to_json() for ts in term_sets)


def load_term_sets(path: str | Path) -> dict[str, TermSet]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                ts = TermSet.from_json(json.loads(line))
                out[ts.topic] = ts
    return out
