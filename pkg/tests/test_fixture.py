from topicsum.corpus_io import filter_min_topic_frequency
from topicsum.fixture import COMMON_POOL, TOPIC_POOLS, generate_fixture
from topicsum.textproc import lemmatize
from topicsum.topic_model import top_terms
from topicsum.vectorizer import cosine


def test_deterministic():
    assert generate_fixture(0) == generate_fixture(0)
    assert generate_fixture(0) != generate_fixture(1)


def test_shape(fixture_corpus):
    assert len(fixture_corpus) == 150
    assert all(c == 25 for c in fixture_corpus.topic_counts().values())
    assert filter_min_topic_frequency(fixture_corpus, 20) == fixture_corpus
    for doc in fixture_corpus:
        assert doc.summary


def test_pools_disjoint_and_stable():
    pools = list(TOPIC_POOLS.values()) + [COMMON_POOL]
    seen = set()
    for pool in pools:
        assert not seen & set(pool)
        seen |= set(pool)
    assert all(lemmatize(w) == w for w in seen)


def test_sports_terms_before_common_words(fixture_topics):
    ranked = [t for t, _ in top_terms(fixture_topics, "Sports", 200).terms]
    first_common = min(ranked.index(w) for w in COMMON_POOL if w in ranked)
    assert ranked.index("game") < first_common and ranked.index("team") < first_common


def test_prototypes_separate_topics(fixture_topics):
    protos = fixture_topics.prototypes
    for t in fixture_topics.topics:
        own = cosine(protos[t], protos[t])
        assert all(own > cosine(protos[t], protos[u]) for u in fixture_topics.topics if u != t)
