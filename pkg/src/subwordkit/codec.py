"""Word <-> subword conversion with a standalone boundary marker token.

``Childhood means`` segmented by some model becomes
``Chi ldhoo d _ mea ns``: every word is segmented on its own and a single
marker token separates consecutive words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from subwordkit.corpus import BOUNDARY_MARKER, Corpus, Sentence
from subwordkit.errors import SubwordError

Segmenter = Callable[[str], Sequence[str]]


class SegmentationError(SubwordError):
    pass


@dataclass(frozen=True)
class SegmentedText:
    units: tuple[str, ...]
    marker: str = BOUNDARY_MARKER

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))
        if any(not u for u in self.units):
            raise ValueError("segmented text contains an empty unit")

    def is_canonical(self) -> bool:
        u, m = self.units, self.marker
        if not u:
            return True
        if u[0] == m or u[-1] == m:
            return False
        return all(not (a == m and b == m) for a, b in zip(u, u[1:]))

    def text(self) -> str:
        return " ".join(self.units)

    @classmethod
    def from_text(cls, line: str, marker: str = BOUNDARY_MARKER) -> "SegmentedText":
        return cls(tuple(line.split()), marker)


def char_splitter(word: str) -> list[str]:
    return list(word)


def segment(sentence: Sentence, segmenter: Segmenter, marker: str = BOUNDARY_MARKER) -> SegmentedText:
    units: list[str] = []
    for i, word in enumerate(sentence.tokens):
        if marker in word:
            raise SegmentationError(f"word {i} ({word!r}) contains the boundary marker {marker!r}")
        try:
            pieces = list(segmenter(word))
        except Exception as exc:
            raise SegmentationError(f"segmenter failed on word {i} ({word!r}): {exc}") from exc
        if "".join(pieces) != word or any(not p for p in pieces):
            raise SegmentationError(f"segmenter output for word {i} ({word!r}) does not rebuild it: {pieces}")
        if i:
            units.append(marker)
        units.extend(pieces)
    return SegmentedText(tuple(units), marker)


def desegment(seg: SegmentedText) -> Sentence:
    # marker runs and edge markers collapse; decoder output may be malformed
    words: list[str] = []
    current: list[str] = []
    for unit in seg.units:
        if unit == seg.marker:
            if current:
                words.append("".join(current))
                current = []
        else:
            current.append(unit)
    if current:
        words.append("".join(current))
    return Sentence(tuple(words))


def segment_corpus(corpus: Corpus, segmenter: Segmenter, marker: str = BOUNDARY_MARKER) -> list[SegmentedText]:
    out = []
    for lineno, sentence in enumerate(corpus.sentences, 1):
        try:
            out.append(segment(sentence, segmenter, marker))
        except SegmentationError as exc:
            raise SegmentationError(f"line {lineno}: {exc}") from exc
    return out


def desegment_line(line: str, marker: str = BOUNDARY_MARKER) -> str:
    return desegment(SegmentedText.from_text(line, marker)).text()


def subword_vocabulary(segmented: Sequence[SegmentedText]) -> set[str]:
    """Distinct subwords in segmented text, markers excluded."""
    vocab = set()
    for seg in segmented:
        vocab.update(u for u in seg.units if u != seg.marker)
    return vocab
