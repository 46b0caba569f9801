"""Line-aligned text corpora.

A corpus is one sentence per line, tokens separated by whitespace. Nothing is
tokenized beyond that; inputs are expected to be pre-tokenized.
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from subwordkit.errors import AlignmentError, CorpusError

BOUNDARY_MARKER = "_"


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        for tok in self.tokens:
            if not tok or any(ch.isspace() for ch in tok):
                raise CorpusError(f"invalid token {tok!r}")

    @classmethod
    def from_text(cls, line: str) -> "Sentence":
        return cls(tuple(line.split()))

    def text(self) -> str:
        return " ".join(self.tokens)

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[Sentence, ...]

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "Corpus":
        return cls(tuple(Sentence.from_text(line) for line in lines))

    @property
    def line_count(self) -> int:
        return len(self.sentences)

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __getitem__(self, i):
        return self.sentences[i]

    def lines(self) -> list[str]:
        return [s.text() for s in self.sentences]

    def tokens(self):
        for s in self.sentences:
            yield from s.tokens


@dataclass(frozen=True)
class ParallelCorpus:
    source: Corpus
    target: Corpus

    def __post_init__(self):
        if self.source.line_count != self.target.line_count:
            raise AlignmentError(
                f"source has {self.source.line_count} lines, target has {self.target.line_count}"
            )

    def __len__(self):
        return self.source.line_count

    def pairs(self):
        return zip(self.source.sentences, self.target.sentences)


def parse_text(
    text: str, normalization: str = "nfc", marker: str | None = BOUNDARY_MARKER
) -> Corpus:
    """Build a corpus from already-decoded text.

    Blank lines become empty sentences so that parallel files stay aligned.
    Tokens containing ``marker`` are rejected; pass ``marker=None`` to allow
    them (e.g. when reading segmented text).
    """
    if normalization not in ("nfc", "none"):
        raise ValueError(f"unknown normalization {normalization!r}")
    if not text:
        return Corpus(())
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    sentences = []
    for lineno, line in enumerate(lines, 1):
        line = line.replace("\r", "")
        if normalization == "nfc":
            line = unicodedata.normalize("NFC", line)
        if marker and marker in line:
            for tok in line.split():
                if marker in tok:
                    raise CorpusError(
                        f"line {lineno}: token {tok!r} contains reserved boundary marker {marker!r}"
                    )
        sentences.append(Sentence.from_text(line))
    return Corpus(tuple(sentences))


def load_corpus(
    path, normalization: str = "nfc", marker: str | None = BOUNDARY_MARKER
) -> Corpus:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path}: invalid UTF-8 at byte offset {exc.start}") from exc
    try:
        return parse_text(text, normalization, marker)
    except CorpusError as exc:
        raise CorpusError(f"{path}: {exc}") from exc


def format_corpus(corpus: Corpus) -> str:
    return "".join(line + "\n" for line in corpus.lines())


def write_corpus(corpus: Corpus, path) -> None:
    Path(path).write_text(format_corpus(corpus), encoding="utf-8")


def vocabulary(corpus: Corpus, level: str = "word") -> Counter:
    """Unit counts at ``word`` or ``char`` level (whitespace never counted)."""
    if level == "word":
        return Counter(corpus.tokens())
    if level == "char":
        counts: Counter = Counter()
        for tok in corpus.tokens():
            counts.update(tok)
        return counts
    raise ValueError(f"unknown level {level!r}")
