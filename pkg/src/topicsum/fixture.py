"""Synthetic topic-labeled corpus used by the tests, the docs and ``topicsum fixture``.

Six topics, 25 articles each. Article and summary sentences are filled from a
topic keyword pool (Zipf-weighted, so the first few words dominate) plus a
pool of common words shared by every topic.
"""

from __future__ import annotations

import random

from .corpus_io import Corpus, Document

TOPIC_POOLS = {
    "Politics": [
        "policy", "president", "state", "political", "vote", "law", "country", "election",
        "senate", "congress", "governor", "campaign", "democrat", "republican", "senator", "legislation",
    ],
    "Sports": [
        "game", "sport", "team", "football", "fifa", "nfl", "player", "play",
        "soccer", "league", "coach", "championship", "stadium", "tournament", "goal", "fan",
    ],
    "Health Care": [
        "patient", "uninsured", "insurer", "coverage", "care", "insurance", "hospital", "doctor",
        "premium", "medicaid", "medicare", "clinic", "nurse", "treatment", "prescription", "pharmacy",
    ],
    "Education": [
        "student", "college", "school", "education", "test", "score", "loan", "teacher",
        "classroom", "tuition", "university", "campus", "curriculum", "degree", "exam", "graduate",
    ],
    "Movies": [
        "film", "season", "episode", "show", "movie", "character", "series", "story",
        "actor", "director", "screen", "premiere", "trailer", "audience", "drama", "sequel",
    ],
    "Space": [
        "earth", "asteroid", "mars", "comet", "nasa", "space", "mission", "planet",
        "orbit", "rocket", "telescope", "galaxy", "astronaut", "satellite", "moon", "launch",
    ],
}

COMMON_POOL = [
    "year", "people", "time", "week", "month", "day", "report", "number", "group", "official",
    "way", "work", "world", "city", "part", "change", "problem", "question", "public", "plan",
]

# {t} = topic word, {c} = common word
TEMPLATES = [
    "{t} and {t} drew {c} attention after {t} officials spoke.",
    "Officials said {t} and {t} would change {c} plans for {t}.",
    "New {t} figures on {t} and {t} came out last {c}.",
    "Many {c} leaders expect {t} to shape {t} again.",
    "Debate over {t} grew as {t} and {t} drew {c} attention.",
    "Critics of {t} asked about {t}, {t} and {c}.",
    "Every {c} brings another {t}, more {t} and fresh {t} talk.",
    "In {c} terms, {t} remains central to {t} and {t}.",
]

SUMMARY_TEMPLATES = [
    "{t} and {t} dominated {t} headlines.",
    "{t}, {t} and {t} drew a large {c}.",
    "Officials tied {t} to {t} and {t}.",
]


def _zipf_weights(n: int, s: float = 0.8) -> list[float]:
    return [1.0 / (rank + 1) ** s for rank in range(n)]


def _fill(template: str, rng: random.Random, pool: list[str], weights: list[float]) -> str:
    out = []
    for chunk in template.split("{"):
        if chunk.startswith("t}"):
            out.append(rng.choices(pool, weights)[0] + chunk[2:])
        elif chunk.startswith("c}"):
            out.append(rng.choice(COMMON_POOL) + chunk[2:])
        else:
            out.append(chunk)
    sentence = "".join(out)
    return sentence[:1].upper() + sentence[1:]


def _slug(topic: str) -> str:
    return topic.lower().replace(" ", "-")


def generate_fixture(seed: int = 0, docs_per_topic: int = 25) -> Corpus:
    rng = random.Random(seed)
    docs = []
    for topic, pool in TOPIC_POOLS.items():
        weights = _zipf_weights(len(pool))
        for i in range(docs_per_topic):
            n_sent = rng.randint(5, 10)
            text = " ".join(_fill(rng.choice(TEMPLATES), rng, pool, weights) for _ in range(n_sent))
            summary = " ".join(_fill(rng.choice(SUMMARY_TEMPLATES), rng, pool, weights) for _ in range(2))
            docs.append(Document(f"{_slug(topic)}-{i:03d}", text, topic, summary))
    return Corpus(docs)
