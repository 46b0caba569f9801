import unicodedata

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subwordkit.corpus import Corpus
from subwordkit.errors import ModelFormatError
from subwordkit.translit import (
    INDIC_BLOCKS,
    TransliterationTable,
    format_table,
    load_table,
    mappable_fraction,
    mapped_range,
    parse_exceptions,
    table_for,
    transliterate,
    transliterate_report,
)

D2B = table_for("devanagari", "bengali")
B2D = table_for("bengali", "devanagari")


def test_ka():
    out = transliterate("क", D2B)
    assert out == "ক"
    # both code charts put KA at block offset 0x15
    assert unicodedata.name(out) == "BENGALI LETTER KA"


def test_ascii_passthrough():
    assert transliterate("abc", D2B) == "abc"


def test_exhaustive_roundtrip_and_injective():
    chars = mapped_range(D2B)
    assert len(chars) > 60
    outs = [transliterate(c, D2B) for c in chars]
    assert len(set(outs)) == len(outs)
    for c, o in zip(chars, outs):
        assert 0x980 <= ord(o) < 0xA00
        assert transliterate(o, B2D) == c


def test_same_named_letters():
    for name in ("LETTER KA", "LETTER A", "SIGN VIRAMA", "VOWEL SIGN AA", "SIGN ANUSVARA", "DIGIT FIVE"):
        d = unicodedata.lookup(f"DEVANAGARI {name}")
        assert transliterate(d, D2B) == unicodedata.lookup(f"BENGALI {name}")


def test_unassigned_target_kept():
    # DEVANAGARI LETTER SHORT A (U+0904): Bengali U+0984 is unassigned
    text, unmapped = transliterate_report("ऄक", D2B)
    assert text == "ऄক"
    assert unmapped == {"ऄ": 1}


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet=st.characters(min_codepoint=0x20, max_codepoint=0xD7F), max_size=30))
def test_length_and_offblock_identity(text):
    for a in INDIC_BLOCKS:
        out = transliterate(text, table_for("devanagari", a))
        assert len(out) == len(text)
        for c, o in zip(text, out):
            if not 0x900 <= ord(c) < 0x980:
                assert c == o


def test_mappable_fraction():
    assert mappable_fraction(Corpus.from_lines(["भारत का"]), D2B) == 1.0
    assert mappable_fraction(Corpus.from_lines(["abc def"]), D2B) == 0.0
    # 4 Devanagari + 4 ASCII characters
    assert mappable_fraction(Corpus.from_lines(["भारत", "abcd"]), D2B) == 0.5
    assert mappable_fraction(Corpus(()), D2B) == 0.0


def test_exception_validation():
    with pytest.raises(ValueError):
        # would collide with the offset image of U+0915
        TransliterationTable(0x900, 0x980, 0x80, {"ख": "ক"})
    t = TransliterationTable(0x900, 0x980, 0x80, {"क": "क"})
    assert transliterate("कख", t) == "कখ"


def test_map_file_roundtrip(tmp_path):
    p = tmp_path / "d2b.map"
    p.write_text(format_table(D2B), encoding="utf-8")
    assert load_table(p) == D2B
    p.write_text("from = bengali\nto = devanagari\n", encoding="utf-8")
    assert load_table(p) == B2D
    p.write_text("source_block_base = 0900\n", encoding="utf-8")
    with pytest.raises(ModelFormatError):
        load_table(p)


def test_exceptions_parse():
    assert parse_exceptions("U+0904 U+0985\n# c\n") == {"ऄ": "অ"}
    with pytest.raises(ModelFormatError, match=":1"):
        parse_exceptions("0904 0985")


def test_unknown_script():
    with pytest.raises(ModelFormatError):
        table_for("devanagari", "urdu")
