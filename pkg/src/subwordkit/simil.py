"""Character-level lexical similarity (LCSR) and its correlation with accuracy."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from subwordkit import _kernels
from subwordkit.corpus import Corpus, ParallelCorpus
from subwordkit.errors import AlignmentError, DegenerateInputError

log = logging.getLogger(__name__)

MAX_CHARS = 10_000


def lcs_length(a: str, b: str) -> int:
    return _kernels.lcs_length(a, b)


def lcsr(a: str, b: str) -> float:
    """Longest common subsequence ratio: LCS length over the longer length."""
    longest = max(len(a), len(b))
    if not longest:
        raise DegenerateInputError("LCSR is undefined for two empty strings")
    return lcs_length(a, b) / longest


def _clip(s: str, lineno: int) -> str:
    if len(s) > MAX_CHARS:
        log.warning("line %d: %d characters, truncated to %d for LCS", lineno, len(s), MAX_CHARS)
        return s[:MAX_CHARS]
    return s


@dataclass(frozen=True)
class SimilarityReport:
    # None for sentence pairs where both sides are empty
    per_sentence: tuple
    corpus_mean: float | None

    def scored(self) -> list[float]:
        return [v for v in self.per_sentence if v is not None]


def sentence_lcsrs(a_lines: Sequence[str], b_lines: Sequence[str], workers: int = 1) -> list:
    if len(a_lines) != len(b_lines):
        raise AlignmentError(f"{len(a_lines)} vs {len(b_lines)} lines")

    def one(i):
        a, b = _clip(a_lines[i], i + 1), _clip(b_lines[i], i + 1)
        return lcsr(a, b) if (a or b) else None

    idx = range(len(a_lines))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(one, idx))
    return [one(i) for i in idx]


def corpus_lcsr(pc: ParallelCorpus, mapping=None, workers: int = 1) -> SimilarityReport:
    """Sentence-wise LCSR over a parallel corpus and its unweighted mean.

    Sentences are compared as their tokens joined by single spaces. With
    ``mapping`` the target side is first transliterated into the source
    script.
    """
    target = pc.target
    if mapping is not None:
        from subwordkit.translit import transliterate_corpus

        target = transliterate_corpus(target, mapping)
    values = sentence_lcsrs(pc.source.lines(), target.lines(), workers)
    scored = [v for v in values if v is not None]
    mean = math.fsum(scored) / len(scored) if scored else None
    return SimilarityReport(tuple(values), mean)


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise AlignmentError(f"series lengths differ: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise DegenerateInputError("need at least two points")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0 or syy == 0:
        raise DegenerateInputError("zero variance in " + ("xs" if sxx == 0 else "ys"))
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def correlate_similarity_accuracy(pc_test: ParallelCorpus, hyps: Corpus, workers: int = 1) -> float:
    """Pearson r between LCSR(source, reference) and LCSR(hypothesis, reference).

    ``pc_test`` holds (source, reference) pairs; ``hyps`` is line-aligned with
    it. Lines where either LCSR is undefined (both sides empty) are skipped.
    """
    if hyps.line_count != len(pc_test):
        raise AlignmentError(f"{hyps.line_count} hypotheses for {len(pc_test)} test sentences")
    refs = pc_test.target.lines()
    sim = sentence_lcsrs(pc_test.source.lines(), refs, workers)
    acc = sentence_lcsrs(hyps.lines(), refs, workers)
    pairs = [(x, y) for x, y in zip(sim, acc) if x is not None and y is not None]
    return pearson([p[0] for p in pairs], [p[1] for p in pairs])
