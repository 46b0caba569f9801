"""Corpus BLEU, a soft-matching BLEU variant, and paired bootstrap tests.

Scores are computed from per-sentence sufficient statistics (matched and
total n-grams for each order, hypothesis and reference lengths), so
bootstrap resampling only has to re-sum rows.

The soft variant gives partial credit to near-miss n-grams. Exact matches
are taken first (identical to BLEU's clipped counts); leftover hypothesis
n-grams are then paired one-to-one with leftover reference n-grams,
best similarity first, where similarity is
``1 - levenshtein(x, y) / max(len(x), len(y))`` on the space-joined
n-grams and pairs under ``threshold`` earn nothing. Each reference n-gram
absorbs at most one unit of credit.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from subwordkit import _kernels
from subwordkit.corpus import Corpus
from subwordkit.errors import AlignmentError, SubwordError

MIN_BOOTSTRAP_SAMPLES = 100


@dataclass(frozen=True)
class EvalReport:
    score: float
    ngram_precisions: tuple
    brevity_penalty: float
    hyp_length: int
    ref_length: int

    def summary(self, name: str = "BLEU") -> str:
        precs = "/".join(f"{p * 100:.1f}" for p in self.ngram_precisions)
        ratio = self.hyp_length / self.ref_length if self.ref_length else float("nan")
        return (
            f"{name} = {self.score * 100:.2f} {precs} (BP = {self.brevity_penalty:.3f} "
            f"ratio = {ratio:.3f} hyp_len = {self.hyp_length} ref_len = {self.ref_length})"
        )

    def tsv(self) -> str:
        cols = [f"{self.score:.6f}", *(f"{p:.6f}" for p in self.ngram_precisions),
                f"{self.brevity_penalty:.6f}", str(self.hyp_length), str(self.ref_length)]
        return "\t".join(cols)


@dataclass(frozen=True)
class SignificanceResult:
    p_value: float
    num_samples: int
    delta_mean: float
    score_a: float
    score_b: float


def _ngrams(tokens, n):
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


def _similarity(x: str, y: str, cache: dict) -> float:
    key = (x, y)
    s = cache.get(key)
    if s is None:
        s = cache[key] = 1.0 - _kernels.levenshtein(x, y) / max(len(x), len(y))
    return s


def _match_mass(hyp_grams, ref_grams, soft, threshold, cache):
    remaining = Counter(ref_grams)
    unmatched = []
    mass = 0.0
    for g in hyp_grams:
        if remaining[g] > 0:
            remaining[g] -= 1
            mass += 1.0
        else:
            unmatched.append(g)
    if not soft or not unmatched:
        return mass
    refs_left = []
    for g in ref_grams:
        if remaining[g] > 0:
            remaining[g] -= 1
            refs_left.append(g)
    if not refs_left:
        return mass
    hyp_str = [" ".join(g) for g in unmatched]
    ref_str = [" ".join(g) for g in refs_left]
    cands = []
    for hi, hs in enumerate(hyp_str):
        for ri, rs in enumerate(ref_str):
            s = _similarity(hs, rs, cache)
            if s >= threshold and s > 0:
                cands.append((-s, hi, ri))
    cands.sort()
    used_h, used_r = set(), set()
    for neg, hi, ri in cands:
        if hi in used_h or ri in used_r:
            continue
        used_h.add(hi)
        used_r.add(ri)
        mass -= neg
    return mass


def sentence_stats(hyp: Sequence[str], ref: Sequence[str], max_n: int = 4,
                   soft: bool = False, threshold: float = 0.4, cache=None) -> np.ndarray:
    """Row of ``[match_1..match_N, total_1..total_N, hyp_len, ref_len]``."""
    cache = {} if cache is None else cache
    row = np.zeros(2 * max_n + 2)
    for n in range(1, max_n + 1):
        hg, rg = _ngrams(hyp, n), _ngrams(ref, n)
        row[n - 1] = _match_mass(hg, rg, soft, threshold, cache)
        row[max_n + n - 1] = len(hg)
    row[-2] = len(hyp)
    row[-1] = len(ref)
    return row


def corpus_stats(hyps: Corpus, refs: Corpus, max_n: int = 4, soft: bool = False,
                 threshold: float = 0.4) -> np.ndarray:
    if hyps.line_count != refs.line_count:
        raise AlignmentError(f"{hyps.line_count} hypotheses vs {refs.line_count} references")
    if not hyps.line_count:
        raise SubwordError("cannot evaluate an empty corpus")
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    cache: dict = {}
    return np.array([
        sentence_stats(h.tokens, r.tokens, max_n, soft, threshold, cache)
        for h, r in zip(hyps.sentences, refs.sentences)
    ])


def score_from_stats(totals: np.ndarray, max_n: int) -> EvalReport:
    matches = totals[:max_n]
    counts = totals[max_n:2 * max_n]
    hyp_len, ref_len = int(totals[-2]), int(totals[-1])
    precisions = tuple(float(m / c) if c > 0 else 0.0 for m, c in zip(matches, counts))
    if hyp_len == 0:
        bp = 0.0
    elif hyp_len < ref_len:
        bp = math.exp(1.0 - ref_len / hyp_len)
    else:
        bp = 1.0
    # no smoothing: any zero precision zeroes the score
    if min(precisions) <= 0.0:
        score = 0.0
    else:
        score = bp * math.exp(math.fsum(math.log(p) for p in precisions) / max_n)
    return EvalReport(score, precisions, bp, hyp_len, ref_len)


def bleu(hyps: Corpus, refs: Corpus, max_n: int = 4) -> EvalReport:
    return score_from_stats(corpus_stats(hyps, refs, max_n).sum(axis=0), max_n)


def soft_bleu(hyps: Corpus, refs: Corpus, max_n: int = 4, threshold: float = 0.4) -> EvalReport:
    stats = corpus_stats(hyps, refs, max_n, soft=True, threshold=threshold)
    return score_from_stats(stats.sum(axis=0), max_n)


def resample_indices(n: int, num_samples: int, seed: int):
    """Yield one index vector per resample.

    Resample ``i`` draws from its own generator seeded with ``(seed, i)``, so
    any subset of resamples can be recomputed independently.
    """
    for i in range(num_samples):
        yield np.random.default_rng([seed, i]).integers(0, n, size=n)


def bootstrap_test(hyps_a: Corpus, hyps_b: Corpus, refs: Corpus, metric: str = "bleu",
                   num_samples: int = 1000, seed: int = 0, max_n: int = 4,
                   threshold: float = 0.4) -> SignificanceResult:
    """Paired bootstrap resampling over sentences.

    The p-value is the share of resamples whose score difference (a - b)
    does not have the same sign as the full-corpus difference; ties count
    against significance. Equal systems get p = 1.
    """
    if metric not in ("bleu", "soft_bleu"):
        raise ValueError(f"unknown metric {metric!r}")
    if num_samples < MIN_BOOTSTRAP_SAMPLES:
        raise ValueError(f"num_samples must be at least {MIN_BOOTSTRAP_SAMPLES}")
    if hyps_b.line_count != hyps_a.line_count:
        raise AlignmentError(f"system A has {hyps_a.line_count} lines, system B {hyps_b.line_count}")
    soft = metric == "soft_bleu"
    sa = corpus_stats(hyps_a, refs, max_n, soft, threshold)
    sb = corpus_stats(hyps_b, refs, max_n, soft, threshold)
    full_a = score_from_stats(sa.sum(axis=0), max_n).score
    full_b = score_from_stats(sb.sum(axis=0), max_n).score
    observed = full_a - full_b

    deltas = np.empty(num_samples)
    for i, idx in enumerate(resample_indices(len(sa), num_samples, seed)):
        deltas[i] = (score_from_stats(sa[idx].sum(axis=0), max_n).score
                     - score_from_stats(sb[idx].sum(axis=0), max_n).score)
    if observed == 0:
        p = 1.0
    elif observed > 0:
        p = float(np.count_nonzero(deltas <= 0)) / num_samples
    else:
        p = float(np.count_nonzero(deltas >= 0)) / num_samples
    return SignificanceResult(p, num_samples, float(deltas.mean()), full_a, full_b)
