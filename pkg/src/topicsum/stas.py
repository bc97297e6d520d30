"""Summarization Topic Affinity Score.

The score of a summary for a requested topic is the cosine similarity between
the summary's tf-idf vector and the topic prototype, divided by the largest
such similarity over all topics. The summary's dominant topic therefore always
scores exactly 1.0, and a summary that covers two topics equally scores close
to 1.0 on both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

from .config import RELEVANCE_THRESHOLD
from .errors import NoContentError, TopicsumError, UnknownTopicError
from .topic_model import TopicModel, dominant
from .vectorizer import TfIdfModel


@dataclass(frozen=True)
class StasReport:
    summary_id: str
    requested_topic: str
    similarities: dict[str, float]
    stas: float
    dominant_topic: str
    relevant: bool

    def to_json(self) -> dict:
        return {
            "id": self.summary_id,
            "topic": self.requested_topic,
            "stas": self.stas,
            "dominant": self.dominant_topic,
            "relevant": self.relevant,
            "similarities": self.similarities,
        }


@dataclass(frozen=True)
class ScoreError:
    summary_id: str
    requested_topic: str
    error: str

    def to_json(self) -> dict:
        return {"id": self.summary_id, "topic": self.requested_topic, "error": self.error}


def stas_from_similarities(similarities: dict[str, float], topic: str) -> float:
    top = max(similarities.values())
    if top <= 0.0:
        raise NoContentError()
    return similarities[topic] / top


def stas_score(
    topic_model: TopicModel,
    tfidf: TfIdfModel,
    summary: str,
    requested_topic: str,
    threshold: float = RELEVANCE_THRESHOLD,
    summary_id: str = "",
) -> StasReport:
    if requested_topic not in topic_model.prototypes:
        raise UnknownTopicError(requested_topic, topic_model.topics)
    vec = tfidf.transform(summary)
    if vec.norm == 0.0:
        raise NoContentError()
    sims = topic_model.similarities(vec)
    value = stas_from_similarities(sims, requested_topic)
    return StasReport(summary_id, requested_topic, sims, value, dominant(sims), value >= threshold)


@dataclass
class ScoreBatch:
    """Reports and per-pair errors in input order."""

    records: list[Union[StasReport, ScoreError]] = field(default_factory=list)

    @property
    def reports(self) -> list[StasReport]:
        return [r for r in self.records if isinstance(r, StasReport)]

    @property
    def errors(self) -> list[ScoreError]:
        return [r for r in self.records if isinstance(r, ScoreError)]

    @property
    def mean_stas(self) -> float | None:
        values = [r.stas for r in self.reports]
        return math.fsum(values) / len(values) if values else None

    def footer(self) -> dict:
        out: dict = {}
        if self.mean_stas is not None:
            out["mean_stas"] = self.mean_stas
        out["count"] = len(self.reports)
        return out

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def score_batch(
    topic_model: TopicModel,
    tfidf: TfIdfModel,
    pairs: Iterable[tuple[str, str, str]],
    threshold: float = RELEVANCE_THRESHOLD,
) -> ScoreBatch:
    """Score ``(summary_id, summary, requested_topic)`` triples.

    A failing pair becomes a :class:`ScoreError` record; the rest of the batch
    is unaffected.
    """
    batch = ScoreBatch()
    for summary_id, summary, topic in pairs:
        try:
            batch.records.append(stas_score(topic_model, tfidf, summary, topic, threshold, summary_id))
        except TopicsumError as exc:
            batch.records.append(ScoreError(summary_id, topic, str(exc)))
    return batch
