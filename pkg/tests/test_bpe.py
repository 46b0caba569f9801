import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import reference_bpe
from conftest import random_corpus
from subwordkit.bpe import (
    BpeModel,
    BpeSegmenter,
    MergeRule,
    apply_bpe,
    learn_bpe,
    learn_joint,
    load_model,
    match_merges,
    save_model,
    target_overlap,
)
from subwordkit.corpus import Corpus, vocabulary
from subwordkit.errors import CorpusError, ModelFormatError, ScriptMismatchError
from subwordkit.translit import table_for


def pairs(model):
    return [(m.left, m.right) for m in model.merges]


def test_toy_two_merges(toy):
    # (a,a) occurs 4 times vs (a,b) 3; then aa|a|b gives (a,b)=3 vs (aa,a)=2
    model = learn_bpe(toy, 2)
    assert pairs(model) == [("a", "a"), ("a", "b")]
    assert [m.rank for m in model.merges] == [0, 1]
    ref_merges, ref_words, _ = reference_bpe(vocabulary(toy), 2)
    assert pairs(model) == ref_merges
    assert apply_bpe(model, "aaab") == ref_words["aaab"] == ["aa", "ab"]


def test_early_stop():
    model = learn_bpe(Corpus.from_lines(["ab"]), 5)
    # "ab" occurs once, below the frequency floor of 2
    assert model.num_merges == 0
    assert model.stopped_early
    model = learn_bpe(Corpus.from_lines(["ab ab"]), 5)
    assert pairs(model) == [("a", "b")]
    assert model.stopped_early and model.requested_merges == 5


def test_zero_merges(toy):
    model = learn_bpe(toy, 0)
    assert model.merges == ()
    assert model.alphabet == set(vocabulary(toy, "char"))


def test_empty_corpus_rejected():
    with pytest.raises(CorpusError):
        learn_bpe(Corpus.from_lines(["", ""]), 3)


def test_tie_break_is_lexicographic():
    # every pair occurs twice: (b,a) (c,d) (d,c)... pick smallest (left, right)
    model = learn_bpe(Corpus.from_lines(["cd cd ba ba"]), 1)
    assert pairs(model) == [("b", "a")]


def test_scion_segmentation():
    alphabet = set("scion")
    merges = [MergeRule("s", "c", 0), MergeRule("i", "o", 1), MergeRule("io", "n", 2)]
    model = BpeModel(alphabet, merges)
    assert apply_bpe(model, "scion") == ["sc", "ion"]


def test_unknown_chars_pass_through():
    model = BpeModel(set("ab"), [MergeRule("a", "b", 0)])
    assert apply_bpe(model, "xaby") == ["x", "ab", "y"]
    assert apply_bpe(BpeModel(set("abc")), "abc") == ["a", "b", "c"]


def test_model_invariants():
    with pytest.raises(ModelFormatError):
        BpeModel(set("ab"), [MergeRule("a", "b", 1)])
    with pytest.raises(ModelFormatError):
        BpeModel(set("ab"), [MergeRule("a", "c", 0)])
    with pytest.raises(ValueError):
        MergeRule("", "a", 0)


def test_single_pass_order_with_duplicate_strings():
    # "abc" can be built two ways; (abc, d) sits between them in rank
    merges = [
        MergeRule("a", "b", 0),
        MergeRule("b", "c", 1),
        MergeRule("a", "bc", 2),
        MergeRule("abc", "d", 3),
        MergeRule("ab", "c", 4),
    ]
    model = BpeModel(set("abcd"), merges)
    # a b c d -> ab c d -> (b,c) absent -> ab c d -> (abc,d) absent -> abc d
    assert apply_bpe(model, "abcd") == ["abc", "d"]


@pytest.mark.parametrize("seed", range(20))
def test_matches_reference_learner(seed):
    rng = random.Random(seed)
    c = random_corpus(rng, alphabet="abcdef"[: rng.randint(2, 6)], max_types=40)
    k = rng.randint(1, 60)
    model = learn_bpe(c, k)
    ref_merges, ref_words, _ = reference_bpe(vocabulary(c), k)
    assert pairs(model) == ref_merges
    for w, seg in ref_words.items():
        assert apply_bpe(model, w) == seg


def test_prefix_monotonicity(rng):
    c = random_corpus(rng, alphabet="abcd")
    full = pairs(learn_bpe(c, 40))
    for k in range(1, 41):
        assert pairs(learn_bpe(c, k)) == full[:k]


def test_doubling_invariance(rng):
    c = random_corpus(rng)
    doubled = Corpus(c.sentences + c.sentences)
    assert learn_bpe(c, 50).merges == learn_bpe(doubled, 50).merges


def test_match_merges_boundaries(toy):
    chars = len(vocabulary(toy, "char"))
    res = match_merges(toy, chars)
    assert res.model.num_merges == 0 and res.reached
    res = match_merges(toy, chars - 1)
    assert res.below_alphabet and res.model.num_merges == 0


def test_match_merges_replays_reference(rng):
    for _ in range(10):
        c = random_corpus(rng, alphabet="abcde")
        _, _, sizes = reference_bpe(vocabulary(c), 10_000)
        for target in range(sizes[0], max(sizes) + 2):
            res = match_merges(c, target)
            hit = next((k for k, v in enumerate(sizes) if v >= target), None)
            if hit is None:
                assert not res.reached
                assert res.model.num_merges == len(sizes) - 1
                assert res.achieved_vocab == sizes[-1] < target
            else:
                assert res.reached
                assert res.model.num_merges == hit
                assert res.achieved_vocab == sizes[hit]


def test_joint_same_corpus_equals_single(rng):
    c = random_corpus(rng)
    assert learn_joint(c, c, 40).merges == learn_bpe(c, 40).merges


def test_joint_counts_add():
    a = Corpus.from_lines(["ab ab cd"])
    b = Corpus.from_lines(["cd cd ab"])
    # step-0 pair counts: (a,b) 2+1, (c,d) 1+2; tie broken on (a,b)
    assert pairs(learn_joint(a, b, 1)) == [("a", "b")]
    assert pairs(learn_joint(a, Corpus.from_lines(["cd cd cd ab"]), 1)) == [("c", "d")]


def test_joint_script_mapping():
    deva = Corpus.from_lines(["भारत भारत का", "कमल कमल"])
    beng = Corpus.from_lines(["ভারত ভারত কমল"])
    with pytest.raises(ScriptMismatchError):
        learn_joint(deva, beng, 5)
    assert target_overlap(deva, beng) == 0.0
    model = learn_joint(deva, beng, 5, mapping=table_for("bengali", "devanagari"))
    assert not any(0x0980 <= ord(ch) < 0x0A00 for ch in model.alphabet)
    assert model.num_merges > 0


def test_save_load_roundtrip(tmp_path, rng):
    model = learn_bpe(random_corpus(rng), 30)
    p = tmp_path / "m.bpe"
    save_model(model, p)
    assert load_model(p) == model
    empty = BpeModel(set("xy"))
    save_model(empty, p)
    assert load_model(p) == empty


def _write(tmp_path, text):
    p = tmp_path / "m.bpe"
    p.write_text(text, encoding="utf-8")
    return p


def test_load_errors(tmp_path):
    good = "#subwordkit-bpe version=1 num_merges=2\n#alphabet\ta\tb\na\tb\nab\ta\n"
    assert load_model(_write(tmp_path, good)).num_merges == 2
    with pytest.raises(ModelFormatError, match="version"):
        load_model(_write(tmp_path, good.replace("version=1", "version=9")))
    with pytest.raises(ModelFormatError, match=":3"):
        load_model(_write(tmp_path, "#subwordkit-bpe version=1 num_merges=1\n#alphabet\ta\tb\na b\n"))
    with pytest.raises(ModelFormatError, match="duplicate rank"):
        load_model(_write(tmp_path, "#subwordkit-bpe version=1 num_merges=2\n#alphabet\ta\tb\na\tb\t0\nab\ta\t0\n"))
    with pytest.raises(ModelFormatError, match="declares"):
        load_model(_write(tmp_path, good.replace("num_merges=2", "num_merges=3")))


def test_segmenter_cache_returns_copies():
    seg = BpeSegmenter(BpeModel(set("ab"), [MergeRule("a", "b", 0)]))
    first = seg("abab")
    first.append("junk")
    assert seg("abab") == ["ab", "ab"]


words = st.text(alphabet="abcé", min_size=1, max_size=15)


@settings(max_examples=300, deadline=None)
@given(st.lists(words, min_size=1, max_size=30), st.integers(0, 30), words)
def test_concatenation_and_vocab_bound(train, k, probe):
    c = Corpus.from_lines([" ".join(train)])
    model = learn_bpe(c, k)
    assert "".join(apply_bpe(model, probe)) == probe
    used = {s for w in train for s in apply_bpe(model, w)}
    assert len(used) <= len(model.alphabet) + model.num_merges
