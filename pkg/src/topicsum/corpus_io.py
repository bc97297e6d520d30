"""Line-delimited JSON corpora: loading, validation, filtering and atomic writes."""

from __future__ import annotations

import json
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator

from .errors import CorpusError

KNOWN_FIELDS = ("id", "text", "topic", "summary")


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    topic: str | None = None
    summary: str | None = None
    extra: dict[str, Any] = field(default_factory=dict, compare=True, repr=False)

    def to_json(self) -> dict[str, Any]:
        row: dict[str, Any] = {"id": self.id, "text": self.text}
        if self.topic is not None:
            row["topic"] = self.topic
        if self.summary is not None:
            row["summary"] = self.summary
        for key, value in self.extra.items():
            row.setdefault(key, value)
        return row

    def replace(self, **changes) -> "Document":
        fields = {"id": self.id, "text": self.text, "topic": self.topic, "summary": self.summary, "extra": self.extra}
        fields.update(changes)
        return Document(**fields)


class Corpus:
    """Immutable ordered collection of documents with unique ids."""

    def __init__(self, documents: Iterable[Document] = ()):
        self._documents = tuple(documents)
        seen = set()
        for doc in self._documents:
            if doc.id in seen:
                raise CorpusError(f"duplicate id {doc.id}")
            seen.add(doc.id)

    @property
    def documents(self) -> tuple[Document, ...]:
        return self._documents

    @property
    def topics(self) -> frozenset[str]:
        return frozenset(d.topic for d in self._documents if d.topic is not None)

    def topic_counts(self) -> Counter:
        return Counter(d.topic for d in self._documents if d.topic is not None)

    def by_topic(self, topic: str) -> list[Document]:
        return [d for d in self._documents if d.topic == topic]

    def __iter__(self) -> Iterator[Document]:
        return iter(self._documents)

    def __len__(self) -> int:
        return len(self._documents)

    def __getitem__(self, i):
        return self._documents[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Corpus) and self._documents == other._documents

    def __repr__(self) -> str:
        return f"Corpus({len(self)} documents, {len(self.topics)} topics)"


def _clean_topic(value) -> str | None:
    if value is None:
        return None
    if not isinstance(value, str):
        raise TypeError("topic must be a string")
    value = value.strip()
    return value or None


def parse_document(row: Any) -> Document:
    """Build a Document from a decoded JSON object, validating field types."""
    if not isinstance(row, dict):
        raise TypeError("expected a JSON object")
    for key in ("id", "text"):
        if key not in row:
            raise KeyError(f"missing field {key!r}")
    doc_id, text = row["id"], row["text"]
    if not isinstance(doc_id, str) or not doc_id:
        raise TypeError("id must be a nonempty string")
    if not isinstance(text, str) or not text.strip():
        raise TypeError("text must be a nonempty string")
    summary = row.get("summary")
    if summary is not None and not isinstance(summary, str):
        raise TypeError("summary must be a string")
    extra = {k: v for k, v in row.items() if k not in KNOWN_FIELDS}
    return Document(doc_id, text, _clean_topic(row.get("topic")), summary, extra)


def read_corpus(lines: Iterable[str], require_topics: bool = False, source: str = "<input>") -> Corpus:
    docs = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            doc = parse_document(json.loads(line))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CorpusError(f"{source}: malformed document at line {lineno}: {exc}") from None
        if doc.id in seen:
            raise CorpusError(f"duplicate id {doc.id} at line {lineno}")
        if require_topics and doc.topic is None:
            raise CorpusError(f"document {doc.id} has no topic")
        seen.add(doc.id)
        docs.append(doc)
    return Corpus(docs)


def load_corpus(path: str | Path, require_topics: bool = False) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        return read_corpus(fh, require_topics=require_topics, source=str(path))


def dumps_jsonl(rows: Iterable[dict[str, Any]]) -> str:
    return "".join(json.dumps(row, ensure_ascii=False) + "\n" for row in rows)


def corpus_to_jsonl(corpus: Iterable[Document]) -> str:
    return dumps_jsonl(doc.to_json() for doc in corpus)


def atomic_write_text(path: str | Path, content: str) -> None:
    """Write *content* to a sibling temp file, then rename it over *path*."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_corpus(corpus: Iterable[Document], path: str | Path) -> None:
    atomic_write_text(path, corpus_to_jsonl(corpus))


def filter_min_topic_frequency(corpus: Corpus, min_docs: int) -> Corpus:
    """Drop documents whose topic labels fewer than *min_docs* documents.

    Untopiced documents have no frequency to judge and are kept.
    """
    if min_docs < 1:
        raise ValueError("min_docs must be >= 1")
    counts = corpus.topic_counts()
    return Corpus(d for d in corpus if d.topic is None or counts[d.topic] >= min_docs)


def exclude_topics(corpus: Corpus, topics: Iterable[str]) -> Corpus:
    drop = {t.strip() for t in topics}
    return Corpus(d for d in corpus if d.topic not in drop)
