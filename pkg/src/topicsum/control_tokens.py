"""Control-token transforms: prepend the topic label, tag topic terms, or both."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .config import PREPEND_SEPARATOR, TAG_MARKER
from .errors import TopicsumError
from .textproc import Lemmatizer, tokenize
from .topic_model import TermSet

PREPEND = "prepend"
TAG = "tag"
PREPEND_TAG = "prepend+tag"


@dataclass(frozen=True)
class ControlledDocument:
    text: str
    topic: str
    method: str
    tag_count: int = 0


def prepend_topic(text: str, topic: str, separator: str = PREPEND_SEPARATOR) -> ControlledDocument:
    if not topic:
        raise ValueError("topic must be nonempty")
    return ControlledDocument(topic + separator + text, topic, PREPEND)


def tag_document(
    text: str,
    term_set: TermSet,
    marker: str = TAG_MARKER,
    lemmatizer: Lemmatizer | None = None,
) -> ControlledDocument:
    """Surround every token whose lemma is one of the topic's terms with *marker*.

    ``"spend 6.1 billion hours"`` becomes ``"spend 6.1 [TAG] billion [TAG] hours"``
    when ``billion`` is a term. Characters outside tagged tokens are untouched.
    """
    if not len(term_set):
        raise ValueError("term set is empty")
    if marker in text:
        raise TopicsumError("text already tagged")
    wanted = term_set.lemmas
    parts = []
    pos = 0
    count = 0
    for tok in tokenize(text, lemmatizer):
        if tok.lemma in wanted:
            parts.append(text[pos : tok.start])
            parts.append(f"{marker} {tok.surface} {marker}")
            pos = tok.end
            count += 1
    parts.append(text[pos:])
    return ControlledDocument("".join(parts), term_set.topic, TAG, count)


def apply_both(
    text: str,
    topic: str,
    term_set: TermSet,
    marker: str = TAG_MARKER,
    separator: str = PREPEND_SEPARATOR,
    lemmatizer: Lemmatizer | None = None,
) -> ControlledDocument:
    if term_set.topic != topic:
        raise ValueError(f"term set is for topic {term_set.topic!r}, not {topic!r}")
    tagged = tag_document(text, term_set, marker, lemmatizer)
    return ControlledDocument(topic + separator + tagged.text, topic, PREPEND_TAG, tagged.tag_count)


def strip_controls(text: str, topic: str | None = None, marker: str = TAG_MARKER, separator: str = PREPEND_SEPARATOR) -> str:
    """Undo :func:`prepend_topic` / :func:`tag_document`."""
    if topic is not None:
        prefix = topic + separator
        if not text.startswith(prefix):
            raise ValueError("text does not start with the prepended topic")
        text = text[len(prefix) :]
    m = re.escape(marker)
    return re.sub(rf"{m} ([^\W_]+) {m}", r"\1", text)
