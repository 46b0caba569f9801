import math
import random

import numpy as np
import pytest

from subwordkit.corpus import Corpus, Sentence
from subwordkit.errors import AlignmentError, SubwordError
from subwordkit.eval import bleu, bootstrap_test, sentence_stats, soft_bleu


def C(*lines):
    return Corpus.from_lines(lines)


def random_pair(rng, n=20, vocab="abcdefghij"):
    words = [vocab[i] * rng.randint(1, 3) for i in range(len(vocab))]
    refs, hyps = [], []
    for _ in range(n):
        ref = [rng.choice(words) for _ in range(rng.randint(4, 12))]
        hyp = [w if rng.random() < 0.6 else rng.choice(words) + rng.choice("xy") for w in ref]
        if rng.random() < 0.3:
            hyp = hyp[: rng.randint(1, len(hyp))]
        refs.append(" ".join(ref))
        hyps.append(" ".join(hyp))
    return Corpus.from_lines(hyps), Corpus.from_lines(refs)


def test_hand_fixture():
    r = bleu(C("a b c d"), C("a b c d e"))
    assert r.ngram_precisions == (1.0, 1.0, 1.0, 1.0)
    assert r.brevity_penalty == pytest.approx(math.exp(1 - 5 / 4), abs=1e-12)
    assert r.score == pytest.approx(math.exp(-0.25), abs=1e-9)
    assert (r.hyp_length, r.ref_length) == (4, 5)


def test_identity_and_zero():
    refs = C("the cat sat on the mat", "a b c d")
    assert bleu(refs, refs).score == 1.0
    assert bleu(C("x y z w"), C("a b c d")).score == 0.0


def test_clipping():
    # hyp repeats "the": clipped to the reference count of 2
    stats = sentence_stats("the the the the".split(), "the cat the mat".split(), max_n=1)
    assert stats[0] == 2 and stats[1] == 4


def test_score_is_bp_times_geomean():
    rng = random.Random(0)
    hyps, refs = random_pair(rng)
    for r in (bleu(hyps, refs), soft_bleu(hyps, refs)):
        if min(r.ngram_precisions) > 0:
            gm = math.exp(sum(math.log(p) for p in r.ngram_precisions) / 4)
            assert r.score == pytest.approx(r.brevity_penalty * gm, abs=1e-12)


def test_errors():
    with pytest.raises(AlignmentError):
        bleu(C("a"), C("a", "b"))
    with pytest.raises(SubwordError):
        bleu(Corpus(()), Corpus(()))


def test_cognate_soft_credit():
    hyp, ref = C("andhapana"), C("aandhaLepaNaa")
    # levenshtein = 5 (insert a, insert L e, n->N, insert a) -> similarity 8/13
    assert soft_bleu(hyp, ref, max_n=1).ngram_precisions[0] == pytest.approx(8 / 13, abs=1e-12)
    assert soft_bleu(hyp, ref, max_n=1, threshold=0.7).score == 0.0
    assert bleu(hyp, ref, max_n=1).score == 0.0


def test_soft_identity():
    refs = C("the cat sat on the mat", "a b c d")
    assert soft_bleu(refs, refs).score == 1.0


def test_soft_mass_clipped_per_reference_ngram():
    # two near-miss hypothesis words compete for one reference word
    stats = sentence_stats(["cats", "cat"], ["cab"], max_n=1, soft=True, threshold=0.4)
    assert stats[0] == pytest.approx(2 / 3)


@pytest.mark.parametrize("seed", range(100))
def test_soft_dominates_hard(seed):
    hyps, refs = random_pair(random.Random(seed), n=8)
    assert soft_bleu(hyps, refs).score >= bleu(hyps, refs).score


def test_permutation_invariance():
    rng = random.Random(1)
    hyps, refs = random_pair(rng)
    order = list(range(hyps.line_count))
    rng.shuffle(order)
    ph = Corpus(tuple(hyps[i] for i in order))
    pr = Corpus(tuple(refs[i] for i in order))
    assert bleu(ph, pr).score == pytest.approx(bleu(hyps, refs).score, abs=1e-15)


def test_self_match_monotone():
    rng = random.Random(2)
    hyps, refs = random_pair(rng)
    base = bleu(hyps, refs).score
    sents = list(hyps.sentences)
    for i in range(len(sents)):
        sents[i] = refs[i]
        new = bleu(Corpus(tuple(sents)), refs).score
        assert new >= base - 1e-12
        base = new


def fifty():
    rng = random.Random(42)
    vocab = [f"w{i}" for i in range(40)]
    refs = [[rng.choice(vocab) for _ in range(rng.randint(6, 14))] for _ in range(50)]
    shuffled = []
    for r in refs:
        s = list(r)
        rng.shuffle(s)
        shuffled.append(s)
    to_c = lambda xs: Corpus(tuple(Sentence(tuple(x)) for x in xs))  # noqa: E731
    return to_c(refs), to_c(shuffled)


def test_bootstrap_separates_and_is_deterministic():
    refs, shuffled = fifty()
    a = bootstrap_test(refs, shuffled, refs, "bleu", 1000, seed=17)
    assert a.p_value < 0.05
    assert a.delta_mean > 0
    assert bootstrap_test(refs, shuffled, refs, "bleu", 1000, seed=17) == a
    b = bootstrap_test(shuffled, refs, refs, "bleu", 1000, seed=17)
    assert b.p_value < 0.05 and b.delta_mean < 0


def test_bootstrap_equal_systems():
    refs, shuffled = fifty()
    res = bootstrap_test(shuffled, shuffled, refs, "soft_bleu", 200, seed=1)
    assert res.p_value == 1.0 and res.delta_mean == 0.0


def test_bootstrap_rejects_few_samples():
    refs, shuffled = fifty()
    with pytest.raises(ValueError):
        bootstrap_test(refs, shuffled, refs, num_samples=50, seed=1)
    with pytest.raises(AlignmentError):
        bootstrap_test(refs, Corpus(shuffled.sentences[:3]), refs, seed=1)


def test_bootstrap_resamples_independent_of_order():
    from subwordkit.eval import resample_indices

    all_idx = list(resample_indices(10, 5, seed=3))
    assert np.array_equal(list(resample_indices(10, 5, seed=3))[4], all_idx[4])
    assert not np.array_equal(all_idx[0], all_idx[1])
