import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import lcs_brute
from topicsum.rouge import lcs_length, rouge, rouge_l, rouge_n


def test_identity():
    text = "The cat sat on the mat."
    assert rouge_n(text, text, 1).f1 == 1.0
    assert rouge_n(text, text, 2).f1 == 1.0
    assert rouge_l(text, text).f1 == 1.0


def test_hand_computed_pair():
    assert rouge_n("the cat sat", "the cat", 1) == pytest.approx((2 / 3, 1.0, 0.8), abs=1e-12)
    assert rouge_n("the cat sat", "the cat", 2) == pytest.approx((0.5, 1.0, 2 / 3), abs=1e-12)
    assert rouge_l("the cat sat", "the cat") == pytest.approx((2 / 3, 1.0, 0.8), abs=1e-12)


def test_disjoint_and_empty():
    assert rouge_l("alpha beta", "gamma delta").f1 == 0.0
    assert rouge_n("", "the cat", 1) == (0.0, 0.0, 0.0)
    assert rouge_n("cat", "cat", 2) == (0.0, 0.0, 0.0)


def test_lowercased_without_stemming():
    assert rouge_n("The Cats", "the cats", 1).f1 == 1.0
    assert rouge_n("cats", "cat", 1).f1 == 0.0


def test_clipping():
    p, r, _ = rouge_n("the the the the", "the cat", 1)
    assert p == 0.25 and r == 0.5


def test_bad_n():
    with pytest.raises(ValueError):
        rouge_n("a", "b", 3)


def test_scores_bundle():
    s = rouge("the cat sat", "the cat")
    assert (s.r1_f1, s.r2_f1, s.rl_f1) == pytest.approx((0.8, 2 / 3, 0.8))
    assert set(s.to_json()) == {"rouge1", "rouge2", "rougeL"}


@pytest.mark.parametrize("seed", range(50))
def test_lcs_matches_brute_force(seed):
    rng = random.Random(seed)
    a = rng.choices("abcd", k=rng.randint(0, 12))
    b = rng.choices("abcd", k=rng.randint(0, 12))
    assert lcs_length(a, b) == lcs_brute(a, b)


words = st.lists(st.sampled_from(["the", "cat", "sat", "on", "mat", "dog", "ran"]), max_size=15).map(" ".join)


@given(words, words)
def test_f1_symmetric(a, b):
    for fn in (lambda x, y: rouge_n(x, y, 1), lambda x, y: rouge_n(x, y, 2), rouge_l):
        fwd, back = fn(a, b), fn(b, a)
        assert fwd.precision == back.recall and fwd.recall == back.precision
        assert fwd.f1 == pytest.approx(back.f1, abs=1e-15)
        assert all(0.0 <= v <= 1.0 for v in fwd)


@given(st.integers(1, 10), st.integers(0, 4))
def test_clipping_property(k, ref_count):
    cand = " ".join(["cat"] * k)
    ref = " ".join(["cat"] * ref_count + ["dog"])
    p, _, _ = rouge_n(cand, ref, 1)
    assert p * k == pytest.approx(min(k, ref_count))
