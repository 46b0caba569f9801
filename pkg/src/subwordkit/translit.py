"""One-to-one character mapping between Indic scripts.

The Indic Unicode blocks share a parallel layout (KA is always at offset
0x15, virama at 0x4D, ...), so mapping is a fixed code point offset. Code
points assigned in the source block but not in the target block are left
as they are and counted.
"""

from __future__ import annotations

import logging
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from subwordkit.corpus import Corpus, Sentence
from subwordkit.errors import ModelFormatError

log = logging.getLogger(__name__)

INDIC_BLOCKS = {
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
BLOCK_SIZE = 0x80


@dataclass(frozen=True)
class TransliterationTable:
    source_block_base: int
    target_block_base: int
    block_size: int = BLOCK_SIZE
    exceptions: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.block_size <= 0:
            raise ValueError("block_size must be positive")
        offset_outputs = {
            chr(cp + self.offset)
            for cp in range(self.source_block_base, self.source_block_base + self.block_size)
            if chr(cp) not in self.exceptions
        }
        seen = {}
        for src, dst in self.exceptions.items():
            if dst in offset_outputs and dst != chr(ord(src) + self.offset):
                raise ValueError(f"exception {src!r}->{dst!r} collides with an offset-mapped character")
            if dst in seen:
                raise ValueError(f"exceptions {seen[dst]!r} and {src!r} both map to {dst!r}")
            seen[dst] = src
        object.__setattr__(self, "_map", self._build())

    @property
    def offset(self) -> int:
        return self.target_block_base - self.source_block_base

    def _build(self):
        m = {cp: cp + self.offset for cp in range(self.source_block_base, self.source_block_base + self.block_size)}
        for src, dst in self.exceptions.items():
            m[ord(src)] = ord(dst)
        return m

    def in_block(self, ch: str) -> bool:
        return self.source_block_base <= ord(ch) < self.source_block_base + self.block_size

    def inverse(self) -> "TransliterationTable":
        exc = {dst: src for src, dst in self.exceptions.items()}
        return TransliterationTable(self.target_block_base, self.source_block_base, self.block_size, exc)


def table_for(source: str, target: str) -> TransliterationTable:
    """Offset table between two named Indic scripts.

    Source code points that are unassigned in the target block map to
    themselves (recorded as exceptions).
    """
    try:
        sbase, tbase = INDIC_BLOCKS[source.lower()], INDIC_BLOCKS[target.lower()]
    except KeyError as exc:
        raise ModelFormatError(f"no Indic block for {exc.args[0]!r}; known: {', '.join(INDIC_BLOCKS)}") from None
    exceptions = {}
    for off in range(BLOCK_SIZE):
        s, t = chr(sbase + off), chr(tbase + off)
        if unicodedata.name(s, None) and not unicodedata.name(t, None):
            exceptions[s] = s
    return TransliterationTable(sbase, tbase, BLOCK_SIZE, exceptions)


def mapped_range(table: TransliterationTable) -> list[str]:
    """Source characters mapped by plain offset onto assigned target characters."""
    out = []
    for cp in range(table.source_block_base, table.source_block_base + table.block_size):
        s = chr(cp)
        if s in table.exceptions:
            continue
        if unicodedata.name(s, None) and unicodedata.name(chr(cp + table.offset), None):
            out.append(s)
    return out


def transliterate(text: str, table: TransliterationTable) -> str:
    return text.translate(table._map)


def transliterate_report(text: str, table: TransliterationTable) -> tuple[str, Counter]:
    """Transliterate and count in-block characters left unmapped."""
    unmapped = Counter(ch for ch in text if ch in table.exceptions and table.exceptions[ch] == ch)
    return transliterate(text, table), unmapped


def transliterate_corpus(corpus: Corpus, table: TransliterationTable) -> Corpus:
    unmapped: Counter = Counter()
    sentences = []
    for s in corpus.sentences:
        toks = []
        for tok in s.tokens:
            out, miss = transliterate_report(tok, table)
            unmapped.update(miss)
            toks.append(out)
        sentences.append(Sentence(tuple(toks)))
    if unmapped:
        log.warning(
            "%d characters had no counterpart in the target block and were kept: %s",
            sum(unmapped.values()),
            " ".join(f"U+{ord(c):04X}" for c in sorted(unmapped)),
        )
    return Corpus(tuple(sentences))


def mappable_fraction(corpus: Corpus, table: TransliterationTable) -> float:
    """Fraction of non-whitespace characters that fall inside the source block."""
    total = inside = 0
    for tok in corpus.tokens():
        total += len(tok)
        inside += sum(1 for ch in tok if table.in_block(ch))
    return inside / total if total else 0.0


def parse_exceptions(text: str, source: str = "<exceptions>") -> dict:
    """Parse ``U+XXXX U+YYYY`` lines."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if len(parts) != 2 or not all(p.upper().startswith("U+") for p in parts):
                raise ValueError
            src, dst = (chr(int(p[2:], 16)) for p in parts)
        except ValueError:
            raise ModelFormatError(f"{source}:{lineno}: expected 'U+XXXX U+YYYY', got {raw!r}") from None
        out[src] = dst
    return out


def format_table(table: TransliterationTable) -> str:
    lines = [
        f"source_block_base = {table.source_block_base:04X}",
        f"target_block_base = {table.target_block_base:04X}",
        f"block_size = {table.block_size:X}",
    ]
    lines += [f"U+{ord(s):04X} U+{ord(d):04X}" for s, d in sorted(table.exceptions.items())]
    return "\n".join(lines) + "\n"


def load_table(path) -> TransliterationTable:
    """Read a map file: ``key = HEX`` header lines then exception lines.

    The header may instead name scripts (``from = bengali``, ``to =
    devanagari``), in which case the default table for that pair is used as
    a base.
    """
    text = Path(path).read_text(encoding="utf-8")
    header: dict = {}
    body = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if "=" in line:
            k, v = (p.strip() for p in line.split("=", 1))
            header[k.lower()] = v
        elif line:
            body.append(line)
    exceptions = parse_exceptions("\n".join(body), str(path))
    try:
        if "from" in header and "to" in header:
            base = table_for(header["from"], header["to"])
            return TransliterationTable(
                base.source_block_base, base.target_block_base, base.block_size, {**base.exceptions, **exceptions}
            )
        return TransliterationTable(
            int(header["source_block_base"], 16),
            int(header["target_block_base"], 16),
            int(header.get("block_size", "80"), 16),
            exceptions,
        )
    except KeyError as exc:
        raise ModelFormatError(f"{path}: missing header key {exc.args[0]!r}") from None
    except ValueError as exc:
        raise ModelFormatError(f"{path}: {exc}") from exc
