import unicodedata

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subwordkit.corpus import (
    Corpus,
    ParallelCorpus,
    Sentence,
    format_corpus,
    load_corpus,
    parse_text,
    vocabulary,
    write_corpus,
)
from subwordkit.errors import AlignmentError, CorpusError


def test_load_basic(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("a b\nc", encoding="utf-8")
    c = load_corpus(p)
    assert [s.tokens for s in c] == [("a", "b"), ("c",)]
    assert c.line_count == 2


def test_load_empty(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("", encoding="utf-8")
    assert load_corpus(p).line_count == 0


def test_blank_lines_kept_and_cr_stripped(tmp_path):
    p = tmp_path / "c.txt"
    p.write_bytes(b"a\r\n\r\nb  c\n")
    c = load_corpus(p)
    assert [s.tokens for s in c] == [("a",), (), ("b", "c")]


@pytest.mark.parametrize(
    "raw, expected",
    [
        # reference compositions from the Unicode data for these code points
        ("é", "é"),
        ("Å", "Å"),
        ("x́", "x́"),  # no precomposed form exists
        ("क़", "क़"),  # U+0958 is composition-excluded
        ("ো", "ো"),  # Bengali O sign
    ],
)
def test_nfc(tmp_path, raw, expected):
    p = tmp_path / "c.txt"
    p.write_text(raw, encoding="utf-8")
    assert load_corpus(p, "nfc")[0].tokens == (expected,)
    assert load_corpus(p, "none")[0].tokens == (raw,)


def test_invalid_utf8_reports_offset(tmp_path):
    p = tmp_path / "c.txt"
    p.write_bytes(b"ab\n\xffcd")
    with pytest.raises(CorpusError, match="byte offset 3"):
        load_corpus(p)


def test_marker_rejected_with_line_number(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("ok\nfoo_bar\n", encoding="utf-8")
    with pytest.raises(CorpusError, match="line 2"):
        load_corpus(p)
    assert load_corpus(p, marker=None)[1].tokens == ("foo_bar",)


def test_missing_file(tmp_path):
    with pytest.raises(CorpusError):
        load_corpus(tmp_path / "nope.txt")


def test_vocabulary():
    c = Corpus.from_lines(["ab ab b"])
    assert vocabulary(c, "word") == {"ab": 2, "b": 1}
    assert vocabulary(c, "char") == {"a": 2, "b": 3}
    assert vocabulary(Corpus(()), "word") == {}


def test_sentence_rejects_bad_tokens():
    with pytest.raises(CorpusError):
        Sentence(("a b",))
    with pytest.raises(CorpusError):
        Sentence(("",))


def test_parallel_alignment():
    with pytest.raises(AlignmentError):
        ParallelCorpus(Corpus.from_lines(["a"]), Corpus.from_lines(["a", "b"]))


text_lines = st.lists(
    st.text(alphabet=st.sampled_from(list("ab é́\tक़")), max_size=12), max_size=8
)


@settings(max_examples=200, deadline=None)
@given(text_lines)
def test_write_load_idempotent(tmp_path_factory, lines):
    d = tmp_path_factory.mktemp("rt")
    src = d / "in.txt"
    src.write_text("\n".join(lines), encoding="utf-8")
    first = load_corpus(src)
    out = d / "out.txt"
    write_corpus(first, out)
    assert load_corpus(out) == first
    assert format_corpus(first).count("\n") == first.line_count


@settings(max_examples=200, deadline=None)
@given(text_lines)
def test_word_counts_sum_to_tokens(lines):
    c = parse_text("\n".join(lines))
    assert sum(vocabulary(c, "word").values()) == sum(len(s) for s in c)
    for s in c:
        assert all(unicodedata.is_normalized("NFC", t) for t in s.tokens)
