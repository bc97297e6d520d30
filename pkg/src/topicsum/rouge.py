"""ROUGE-1, ROUGE-2 and ROUGE-L F1 over lowercased tokens (no stemming)."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .textproc import surfaces


class Score(NamedTuple):
    precision: float
    recall: float
    f1: float


def _score(overlap: int, n_candidate: int, n_reference: int) -> Score:
    p = overlap / n_candidate if n_candidate else 0.0
    r = overlap / n_reference if n_reference else 0.0
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return Score(p, r, f)


def rouge_tokens(text: str) -> list[str]:
    return [s.lower() for s in surfaces(text)]


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: str, reference: str, n: int = 1) -> Score:
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    cand = ngrams(rouge_tokens(candidate), n)
    ref = ngrams(rouge_tokens(reference), n)
    overlap = sum((cand & ref).values())
    return _score(overlap, sum(cand.values()), sum(ref.values()))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: str, reference: str) -> Score:
    cand, ref = rouge_tokens(candidate), rouge_tokens(reference)
    return _score(lcs_length(cand, ref), len(cand), len(ref))


@dataclass(frozen=True)
class RougeScores:
    r1: Score
    r2: Score
    rl: Score

    @property
    def r1_f1(self) -> float:
        return self.r1.f1

    @property
    def r2_f1(self) -> float:
        return self.r2.f1

    @property
    def rl_f1(self) -> float:
        return self.rl.f1

    def to_json(self) -> dict:
        return {
            name: {"precision": s.precision, "recall": s.recall, "f1": s.f1}
            for name, s in (("rouge1", self.r1), ("rouge2", self.r2), ("rougeL", self.rl))
        }


def rouge(candidate: str, reference: str) -> RougeScores:
    return RougeScores(rouge_n(candidate, reference, 1), rouge_n(candidate, reference, 2), rouge_l(candidate, reference))


def mean_f1(scores: Sequence[RougeScores]) -> tuple[float, float, float] | None:
    if not scores:
        return None
    k = len(scores)
    return (
        math.fsum(s.r1_f1 for s in scores) / k,
        math.fsum(s.r2_f1 for s in scores) / k,
        math.fsum(s.rl_f1 for s in scores) / k,
    )
