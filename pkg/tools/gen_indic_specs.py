"""Regenerate the Indic ScriptSpec files from the Unicode character database.

Run from the repository root:  python3 tools/gen_indic_specs.py
"""

import unicodedata
from pathlib import Path

from subwordkit.ortho import ScriptSpec, format_script_spec

BLOCKS = {
    "devanagari": 0x0900,
    "bengali": 0x0980,
    "gurmukhi": 0x0A00,
    "gujarati": 0x0A80,
    "oriya": 0x0B00,
    "tamil": 0x0B80,
    "telugu": 0x0C00,
    "kannada": 0x0C80,
    "malayalam": 0x0D00,
}

COMBINING_KEYS = ("VIRAMA", "NUKTA", "ANUSVARA", "VISARGA", "CANDRABINDU", "TIPPI", "ADDAK", "AYTHAM")
# independent vowel letters sit at these offsets in every block
INDEPENDENT = set(range(0x04, 0x15)) | {0x60, 0x61} | set(range(0x72, 0x78))


def build(name, base):
    vowels, consonants, combining = set(), set(), set()
    virama = nukta = None
    for off in range(0x80):
        ch = chr(base + off)
        uname = unicodedata.name(ch, "")
        if not uname:
            continue
        cat = unicodedata.category(ch)
        if any(k in uname for k in COMBINING_KEYS):
            combining.add(ch)
            if "VIRAMA" in uname:
                virama = ch
            elif "NUKTA" in uname:
                nukta = ch
        elif "VOWEL SIGN" in uname or "LENGTH MARK" in uname:
            vowels.add(ch)
        elif cat == "Lo" and " LETTER " in uname:
            (vowels if off in INDEPENDENT else consonants).add(ch)
        elif cat.startswith("M"):
            combining.add(ch)
    return ScriptSpec(name, "abugida", vowels, consonants, combining, base, virama, nukta)


if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "src" / "subwordkit" / "scripts"
    for name, base in BLOCKS.items():
        spec = build(name, base)
        header = f"# generated by tools/gen_indic_specs.py (Unicode {unicodedata.unidata_version})\n"
        (out / f"{name}.txt").write_text(header + format_script_spec(spec), encoding="utf-8")
        print(name, len(spec.vowels), len(spec.consonants), len(spec.combining))
