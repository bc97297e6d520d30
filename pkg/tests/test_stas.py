import itertools
import random

import pytest

from topicsum.config import RELEVANCE_THRESHOLD
from topicsum.corpus_io import Corpus, Document
from topicsum.errors import NoContentError, UnknownTopicError
from topicsum.stas import StasReport, ScoreError, score_batch, stas_from_similarities, stas_score
from topicsum.topic_model import build_prototypes
from topicsum.vectorizer import fit


def test_threshold_constant():
    assert RELEVANCE_THRESHOLD == 0.6960


def test_definition_from_similarities():
    sims = {"politics": 0.5, "sports": 0.25}
    assert stas_from_similarities(sims, "politics") == 1.0
    assert stas_from_similarities(sims, "sports") == 0.5


def small_models():
    corpus = Corpus([
        Document("p", "senate vote election", "politics"),
        Document("s", "goal match league", "sports"),
        Document("m", "film actor screen", "movies"),
    ])
    tfidf = fit(corpus)
    return tfidf, build_prototypes(tfidf, corpus)


def test_self_similarity_dominates():
    tfidf, topics = small_models()
    report = stas_score(topics, tfidf, "goal match league", "sports", summary_id="x")
    assert report.stas == 1.0 and report.dominant_topic == "sports" and report.relevant
    assert report.similarities["sports"] == pytest.approx(1.0, abs=1e-9)


def test_threshold_is_inclusive():
    tfidf, topics = small_models()
    report = stas_score(topics, tfidf, "goal match league vote", "politics")
    assert report.relevant == (report.stas >= RELEVANCE_THRESHOLD)
    at = stas_score(topics, tfidf, "goal match league vote", "politics", threshold=report.stas)
    assert at.relevant


def test_relevant_at_exact_threshold_value():
    # similarities 0.696 / 1.0 exactly as in a report
    assert stas_from_similarities({"a": 1.0, "b": 0.6960}, "b") >= RELEVANCE_THRESHOLD


def test_errors():
    tfidf, topics = small_models()
    with pytest.raises(UnknownTopicError):
        stas_score(topics, tfidf, "goal", "cooking")
    with pytest.raises(NoContentError, match="no in-vocabulary content"):
        stas_score(topics, tfidf, "zzz qqq", "sports")


def test_batch():
    tfidf, topics = small_models()
    assert len(score_batch(topics, tfidf, [])) == 0
    assert score_batch(topics, tfidf, []).mean_stas is None
    assert score_batch(topics, tfidf, []).footer() == {"count": 0}
    batch = score_batch(topics, tfidf, [
        ("a", "goal match league", "sports"),
        ("b", "zzz", "sports"),
        ("c", "film actor screen", "movies"),
        ("d", "film", "cooking"),
    ])
    assert [type(r) for r in batch] == [StasReport, ScoreError, StasReport, ScoreError]
    assert [r.summary_id for r in batch] == ["a", "b", "c", "d"]
    assert batch.mean_stas == 1.0
    assert batch.footer() == {"mean_stas": 1.0, "count": 2}


def test_batch_mean_arithmetic():
    tfidf, topics = small_models()
    # a summary made of one sports and one politics document scored for both
    text = "goal match league goal match league senate"
    r1 = stas_score(topics, tfidf, text, "sports")
    r2 = stas_score(topics, tfidf, text, "politics")
    batch = score_batch(topics, tfidf, [("1", text, "sports"), ("2", text, "politics")])
    assert batch.mean_stas == pytest.approx((r1.stas + r2.stas) / 2, abs=1e-15)


def test_report_json_schema():
    tfidf, topics = small_models()
    row = stas_score(topics, tfidf, "film", "movies", summary_id="z").to_json()
    assert set(row) == {"id", "topic", "stas", "dominant", "relevant", "similarities"}


def test_max_is_exactly_one_and_unit_interval(fixture_tfidf, fixture_topics, fixture_corpus):
    rng = random.Random(3)
    words = fixture_tfidf.vocabulary.terms
    for _ in range(200):
        text = " ".join(rng.choices(words, k=rng.randint(1, 30)))
        values = [stas_score(fixture_topics, fixture_tfidf, text, t).stas for t in fixture_topics.topics]
        assert max(values) == 1.0
        assert all(0.0 <= v <= 1.0 for v in values)


def test_two_topic_summary_ordering(fixture_tfidf, fixture_topics, fixture_corpus):
    a = fixture_corpus.by_topic("Sports")[0].text
    b = fixture_corpus.by_topic("Space")[0].text
    reports = {t: stas_score(fixture_topics, fixture_tfidf, a + " " + b, t).stas for t in fixture_topics.topics}
    others = [v for t, v in reports.items() if t not in ("Sports", "Space")]
    assert min(reports["Sports"], reports["Space"]) > max(others)


def test_relabel_permutes_reports(fixture_tfidf, fixture_corpus):
    rename = dict(zip(sorted(fixture_corpus.topics), ["z1", "y2", "x3", "w4", "v5", "u6"]))
    relabeled = Corpus(d.replace(topic=rename[d.topic]) for d in fixture_corpus)
    original = build_prototypes(fixture_tfidf, fixture_corpus)
    renamed = build_prototypes(fixture_tfidf, relabeled)
    for doc in itertools.islice(fixture_corpus, 0, 150, 17):
        for t in original.topics:
            a = stas_score(original, fixture_tfidf, doc.summary, t)
            b = stas_score(renamed, fixture_tfidf, doc.summary, rename[t])
            assert a.stas == b.stas
            assert rename[a.dominant_topic] == b.dominant_topic
