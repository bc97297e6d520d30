"""Smoothed tf-idf over lemmas, sparse vectors and cosine similarity."""

from __future__ import annotations

import json
import math
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .corpus_io import Corpus, Document, atomic_write_text
from .errors import TopicsumError
from .textproc import Lemmatizer, default_lemmatizer, lemmas


class SparseVector:
    """Non-negative sparse vector stored as parallel index/weight tuples.

    Indices are strictly increasing and zero weights are never stored.
    """

    __slots__ = ("indices", "weights", "norm")

    def __init__(self, indices: Iterable[int] = (), weights: Iterable[float] = ()):
        pairs = [(int(i), float(w)) for i, w in zip(indices, weights)]
        for k, (i, w) in enumerate(pairs):
            if w < 0 or math.isnan(w):
                raise ValueError(f"negative or NaN weight at index {i}")
            if k and pairs[k - 1][0] >= i:
                raise ValueError("indices must be strictly increasing")
        pairs = [(i, w) for i, w in pairs if w != 0.0]
        self.indices = tuple(i for i, _ in pairs)
        self.weights = tuple(w for _, w in pairs)
        self.norm = math.sqrt(math.fsum(w * w for w in self.weights))

    @classmethod
    def from_dict(cls, weights: Mapping[int, float]) -> "SparseVector":
        items = sorted(weights.items())
        return cls([i for i, _ in items], [w for _, w in items])

    @property
    def entries(self) -> list[tuple[int, float]]:
        return list(zip(self.indices, self.weights))

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.indices, self.weights))

    def get(self, index: int) -> float:
        k = bisect_left(self.indices, index)
        if k < len(self.indices) and self.indices[k] == index:
            return self.weights[k]
        return 0.0

    def dot(self, other: "SparseVector") -> float:
        if len(self.indices) > len(other.indices):
            return other.dot(self)
        lookup = other.as_dict() if len(other.indices) < 64 else None
        total = []
        for i, w in zip(self.indices, self.weights):
            v = lookup.get(i, 0.0) if lookup is not None else other.get(i)
            if v:
                total.append(w * v)
        return math.fsum(total)

    def scaled(self, factor: float) -> "SparseVector":
        if factor < 0:
            raise ValueError("factor must be non-negative")
        return SparseVector(self.indices, (w * factor for w in self.weights))

    def normalized(self) -> "SparseVector":
        return self if self.norm == 0.0 else self.scaled(1.0 / self.norm)

    def __len__(self) -> int:
        return len(self.indices)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseVector) and self.indices == other.indices and self.weights == other.weights

    def __repr__(self) -> str:
        return f"SparseVector(nnz={len(self)}, norm={self.norm:.6g})"


def mean_vector(vectors: list[SparseVector]) -> SparseVector:
    if not vectors:
        raise ValueError("cannot average zero vectors")
    acc: dict[int, list[float]] = {}
    for vec in vectors:
        for i, w in zip(vec.indices, vec.weights):
            acc.setdefault(i, []).append(w)
    n = len(vectors)
    return SparseVector.from_dict({i: math.fsum(ws) / n for i, ws in acc.items()})


def cosine(a: SparseVector, b: SparseVector) -> float:
    """Cosine similarity; 0.0 when either vector is zero."""
    if a.norm == 0.0 or b.norm == 0.0:
        return 0.0
    return min(1.0, max(0.0, a.dot(b) / (a.norm * b.norm)))


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    index: dict[str, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if list(self.terms) != sorted(set(self.terms)):
            raise ValueError("vocabulary terms must be unique and sorted")
        object.__setattr__(self, "index", {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index


@dataclass(frozen=True)
class TfIdfModel:
    vocabulary: Vocabulary
    idf: tuple[float, ...]
    doc_count: int
    lemmatizer: Lemmatizer = field(default_factory=default_lemmatizer, compare=False, repr=False)

    def __post_init__(self):
        if len(self.idf) != len(self.vocabulary):
            raise ValueError("idf length must equal vocabulary size")
        if any(w < 0 for w in self.idf):
            raise ValueError("idf weights must be non-negative")

    def idf_of(self, term: str) -> float:
        return self.idf[self.vocabulary.index[term]]

    def counts(self, text: str) -> SparseVector:
        """Raw in-vocabulary lemma counts of *text* (no idf, no normalization)."""
        index = self.vocabulary.index
        tf = Counter(index[l] for l in lemmas(text, self.lemmatizer) if l in index)
        return SparseVector.from_dict(tf)

    def transform(self, text: str, normalize: bool = True) -> SparseVector:
        index = self.vocabulary.index
        tf = Counter(index[l] for l in lemmas(text, self.lemmatizer) if l in index)
        vec = SparseVector.from_dict({i: c * self.idf[i] for i, c in tf.items()})
        return vec.normalized() if normalize else vec

    def to_json(self) -> dict:
        return {"doc_count": self.doc_count, "terms": list(self.vocabulary.terms), "idf": list(self.idf)}

    def save(self, path: str | Path) -> None:
        # repr() of a float is the shortest string that round-trips exactly
        atomic_write_text(path, json.dumps(self.to_json(), ensure_ascii=False) + "\n")


def _texts(corpus) -> list[str]:
    return [d.text if isinstance(d, Document) else d for d in corpus]


def fit(corpus: Corpus | Iterable[str], lemmatizer: Lemmatizer | None = None) -> TfIdfModel:
    """Fit vocabulary and smoothed idf, ``ln((1 + N) / (1 + df)) + 1``, over every document."""
    lem = lemmatizer or default_lemmatizer()
    texts = _texts(corpus)
    if not texts:
        raise TopicsumError("cannot fit tf-idf on an empty corpus")
    df: Counter = Counter()
    for text in texts:
        df.update(set(lemmas(text, lem)))
    terms = tuple(sorted(df))
    n = len(texts)
    idf = tuple(math.log((1 + n) / (1 + df[t])) + 1.0 for t in terms)
    return TfIdfModel(Vocabulary(terms), idf, n, lem)


def transform(model: TfIdfModel, text: str, normalize: bool = True) -> SparseVector:
    return model.transform(text, normalize=normalize)


def model_from_json(data: dict, lemmatizer: Lemmatizer | None = None) -> TfIdfModel:
    try:
        return TfIdfModel(
            Vocabulary(tuple(data["terms"])),
            tuple(float(w) for w in data["idf"]),
            int(data["doc_count"]),
            lemmatizer or default_lemmatizer(),
        )
    except (KeyError, TypeError) as exc:
        raise TopicsumError(f"malformed tf-idf model: {exc}") from None


def load_model(path: str | Path, lemmatizer: Lemmatizer | None = None) -> TfIdfModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_json(json.load(fh), lemmatizer)
