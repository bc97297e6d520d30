"""Tokenization, rule-based English lemmatization and sentence splitting.

Every downstream module (tf-idf, tagging, ROUGE, interleaving) goes through
these functions so that terms extracted from a topic collection and words in
an input document are normalized identically.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

_TOKEN_RE = re.compile(r"[^\W_]{2,}")
_VOWELS = frozenset("aeiou")


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    start: int
    end: int


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    # number of vowel->consonant transitions, as in the Porter stemmer
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        cons = _is_consonant(stem, i)
        if cons and prev_vowel:
            m += 1
        prev_vowel = not cons
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_cvc(stem: str) -> bool:
    if len(stem) < 3:
        return False
    return (
        _is_consonant(stem, -3 + len(stem))
        and not _is_consonant(stem, -2 + len(stem))
        and _is_consonant(stem, len(stem) - 1)
        and stem[-1] not in "wxy"
    )


def _restore(stem: str) -> str:
    """Repair a stem left behind by removing -ed / -ing."""
    if stem.endswith(("at", "bl", "iz")):
        return stem + "e"
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in "lsz" and _is_consonant(stem, len(stem) - 1):
        return stem[:-1]
    if _measure(stem) == 1 and _ends_cvc(stem):
        return stem + "e"
    return stem


def _strip_once(word: str) -> str | None:
    """Apply the first matching suffix rule, or return None when none applies.

    Every rule shortens the word, so repeated application terminates.
    """
    n = len(word)
    if word.endswith("ies") and n > 3:
        return word[:-3] + ("y" if n > 4 else "ie")
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith(("xes", "ches", "shes", "zzes")):
        return word[:-2]
    if word.endswith("s") and n > 3 and word[-2] not in "sui'":
        return word[:-1]
    if word.endswith("ied") and n > 3:
        return word[:-3] + ("y" if n > 4 else "ie")
    if word.endswith("ed") and not word.endswith("eed"):
        stem = word[:-2]
        if len(stem) >= 3 and _has_vowel(stem):
            return _restore(stem)
    if word.endswith("ing"):
        stem = word[:-3]
        if len(stem) >= 2 and _has_vowel(stem):
            if stem.endswith("y") and len(stem) > 2:
                return stem
            return _restore(stem)
    return None


class Lemmatizer:
    """Suffix-rule lemmatizer with an overridable exception table.

    Exceptions map a lowercased surface form straight to its lemma and take
    precedence over the suffix rules at every step.
    """

    def __init__(self, exceptions: Mapping[str, str] | None = None):
        table = {k.lower(): v.lower() for k, v in (exceptions or {}).items()}
        resolved = {}
        for key in table:
            seen = {key}
            value = table[key]
            while value in table and table[value] != value:
                if value in seen:
                    raise ValueError(f"cyclic lemma exceptions involving {key!r}")
                seen.add(value)
                value = table[value]
            resolved[key] = value
        # lemmas named by the table are fixed points
        for value in list(resolved.values()):
            resolved.setdefault(value, value)
        self.exceptions = resolved
        self._cache: dict[str, str] = {}

    def __call__(self, surface: str) -> str:
        return self.lemmatize(surface)

    def lemmatize(self, surface: str) -> str:
        if not surface:
            raise ValueError("cannot lemmatize an empty string")
        cached = self._cache.get(surface)
        if cached is not None:
            return cached
        word = surface.lower()
        while True:
            if word in self.exceptions:
                word = self.exceptions[word]
                break
            nxt = _strip_once(word)
            if nxt is None:
                break
            word = nxt
        if len(self._cache) < 500_000:
            self._cache[surface] = word
        return word

    def with_exceptions(self, extra: Mapping[str, str]) -> "Lemmatizer":
        merged = dict(self.exceptions)
        merged.update({k.lower(): v.lower() for k, v in extra.items()})
        return Lemmatizer(merged)


def read_lemma_exceptions(path) -> dict[str, str]:
    """Read a ``{"surface": ..., "lemma": ...}`` JSONL file."""
    table = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
                table[row["surface"]] = row["lemma"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}: bad lemma exception at line {lineno}: {exc}") from None
    return table


def _resource_lines(name: str) -> Iterable[str]:
    return resources.files("topicsum").joinpath("resources", name).read_text(encoding="utf-8").splitlines()


@lru_cache(maxsize=1)
def default_lemmatizer() -> Lemmatizer:
    table = {}
    for line in _resource_lines("lemma_exceptions.jsonl"):
        if line.strip():
            row = json.loads(line)
            table[row["surface"]] = row["lemma"]
    return Lemmatizer(table)


def load_lemmatizer(path: str | Path | None) -> Lemmatizer:
    """Default lemmatizer, extended with the exceptions in *path* if given."""
    if path is None:
        return default_lemmatizer()
    return default_lemmatizer().with_exceptions(read_lemma_exceptions(path))


def lemmatize(token_surface: str, lemmatizer: Lemmatizer | None = None) -> str:
    return (lemmatizer or default_lemmatizer()).lemmatize(token_surface)


def tokenize(text: str, lemmatizer: Lemmatizer | None = None) -> list[Token]:
    """Split *text* into maximal alphanumeric runs of length >= 2.

    Single characters (the ``s`` of ``cat's``, a lone digit) are dropped.
    Offsets index into the original string.
    """
    lem = lemmatizer or default_lemmatizer()
    return [Token(m.group(), lem.lemmatize(m.group()), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]


def lemmas(text: str, lemmatizer: Lemmatizer | None = None) -> list[str]:
    lem = lemmatizer or default_lemmatizer()
    return [lem.lemmatize(m.group()) for m in _TOKEN_RE.finditer(text)]


def surfaces(text: str) -> list[str]:
    return _TOKEN_RE.findall(text)


@lru_cache(maxsize=1)
def abbreviations() -> frozenset[str]:
    return frozenset(
        line.strip().lower() for line in _resource_lines("abbreviations.txt") if line.strip() and not line.startswith("#")
    )


# terminal punctuation, optional closing quotes/brackets, whitespace, then an
# (optionally quoted) uppercase letter
_BOUNDARY_RE = re.compile(r"[.!?]+[\"')\]”’]*(?=\s+[\"'(\[“‘]?[A-Z]|\s*$)")


def split_sentences(text: str, guard: frozenset[str] | None = None) -> list[str]:
    """Split on . ! ? followed by whitespace and an uppercase letter (or end of text).

    A period closing a word from the abbreviation guard list (``Dr.``,
    ``U.S.``) does not end a sentence.
    """
    guard = abbreviations() if guard is None else guard
    sentences = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        if text[m.start()] == "." and m.end() - m.start() >= 1:
            word_start = max(text.rfind(" ", 0, m.start()), text.rfind("\n", 0, m.start()), text.rfind("\t", 0, m.start())) + 1
            word = text[word_start : m.start()].lstrip("\"'([“‘").lower()
            if word in guard:
                continue
        piece = text[start : m.end()].strip()
        if piece:
            sentences.append(piece)
        start = m.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences
