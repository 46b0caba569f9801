"""Byte pair encoding over characters.

Learning starts from the character alphabet of a corpus and repeatedly
merges the most frequent adjacent symbol pair. Pairs are counted over the
word-type frequency table and never cross word boundaries. Ties on
frequency go to the smallest ``(left, right)`` in code point order.
"""

from __future__ import annotations

import heapq
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from subwordkit import _kernels
from subwordkit.corpus import Corpus, vocabulary
from subwordkit.errors import CorpusError, ModelFormatError, ScriptMismatchError

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
MIN_PAIR_FREQ = 2


@dataclass(frozen=True)
class MergeRule:
    left: str
    right: str
    rank: int

    def __post_init__(self):
        if not self.left or not self.right:
            raise ValueError("merge operands must be non-empty")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    @property
    def merged(self) -> str:
        return self.left + self.right


@dataclass(frozen=True)
class BpeModel:
    alphabet: frozenset
    merges: tuple[MergeRule, ...] = ()
    # informational only; not part of equality or the file format
    requested_merges: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "merges", tuple(self.merges))
        known = set(self.alphabet)
        for i, rule in enumerate(self.merges):
            if rule.rank != i:
                raise ModelFormatError(
                    f"merge ranks must be unique and contiguous from 0; got rank {rule.rank} at position {i}"
                )
            if rule.left not in known or rule.right not in known:
                raise ModelFormatError(
                    f"merge {rule.rank} ({rule.left!r}, {rule.right!r}) uses an unknown subword"
                )
            known.add(rule.merged)
        object.__setattr__(self, "_table", None)

    @property
    def num_merges(self) -> int:
        return len(self.merges)

    @property
    def stopped_early(self) -> bool:
        return self.requested_merges is not None and self.num_merges < self.requested_merges

    def vocabulary(self) -> set[str]:
        return set(self.alphabet) | {m.merged for m in self.merges}

    def truncated(self, k: int) -> "BpeModel":
        return BpeModel(self.alphabet, self.merges[:k])

    def _rank_table(self):
        # pair -> rank of its first occurrence; later duplicates are reachable
        # through _later_ranks
        if self._table is None:
            first: dict = {}
            later: dict = {}
            for rule in self.merges:
                key = (rule.left, rule.right)
                if key in first:
                    later.setdefault(key, []).append(rule.rank)
                else:
                    first[key] = rule.rank
            object.__setattr__(self, "_table", (first, later))
        return self._table

    def apply(self, word: str) -> list[str]:
        return apply_bpe(self, word)


def _next_rank(symbols, first, later, after):
    best = None
    for pair in zip(symbols, symbols[1:]):
        r = first.get(pair)
        if r is None:
            continue
        if r <= after:
            r = next((x for x in later.get(pair, ()) if x > after), None)
            if r is None:
                continue
        if best is None or r < best:
            best = r
    return best


def apply_bpe(model: BpeModel, word: str) -> list[str]:
    """Segment one word with the model's merges.

    Each rule is applied once, in rank order, to every non-overlapping
    occurrence scanning left to right. This mirrors what the learner did to
    the training words, so a training word comes out exactly as the learner
    left it. Characters outside the alphabet stay as single symbols.
    """
    symbols = list(word)
    if len(symbols) < 2 or not model.merges:
        return symbols
    first, later = model._rank_table()
    last = -1
    while len(symbols) > 1:
        r = _next_rank(symbols, first, later, last)
        if r is None:
            break
        rule = model.merges[r]
        out = []
        i = 0
        n = len(symbols)
        while i < n:
            if i + 1 < n and symbols[i] == rule.left and symbols[i + 1] == rule.right:
                out.append(rule.merged)
                i += 2
            else:
                out.append(symbols[i])
                i += 1
        symbols = out
        last = r
    return symbols


class BpeSegmenter:
    """Callable word segmenter with a per-type cache."""

    def __init__(self, model: BpeModel):
        self.model = model
        self._cache: dict[str, list[str]] = {}

    def __call__(self, word: str) -> list[str]:
        seg = self._cache.get(word)
        if seg is None:
            seg = self._cache[word] = apply_bpe(self.model, word)
        return list(seg)


class _Learner:
    """Incremental greedy learner.

    Keeps pair counts and a pair -> word-type index up to date after each
    merge, with a lazy max-heap for selection. ``distinct`` tracks how many
    different subwords the segmented training corpus currently uses.
    """

    def __init__(self, word_freqs: Counter):
        if not word_freqs:
            raise CorpusError("cannot learn BPE from an empty corpus")
        self.str_of: list[str] = []
        self.id_of: dict[str, int] = {}
        types = sorted(word_freqs)
        self.words = [[self._intern(ch) for ch in w] for w in types]
        self.freqs = [word_freqs[w] for w in types]
        self.alphabet = frozenset(self.str_of)

        self.pair_counts: dict = Counter()
        self.index: dict = {}
        self.sym_counts: Counter = Counter()
        for wi, (word, f) in enumerate(zip(self.words, self.freqs)):
            for s in word:
                self.sym_counts[s] += f
            for pair in zip(word, word[1:]):
                self.pair_counts[pair] += f
                self.index.setdefault(pair, set()).add(wi)
        self.distinct = len(self.sym_counts)
        self.heap = [self._entry(p, c) for p, c in self.pair_counts.items()]
        heapq.heapify(self.heap)
        self.merges: list[MergeRule] = []

    def _intern(self, s: str) -> int:
        i = self.id_of.get(s)
        if i is None:
            i = self.id_of[s] = len(self.str_of)
            self.str_of.append(s)
        return i

    def _entry(self, pair, count):
        return (-count, self.str_of[pair[0]], self.str_of[pair[1]], pair)

    def _best(self):
        heap = self.heap
        while heap:
            neg, _, _, pair = heap[0]
            if self.pair_counts.get(pair, 0) == -neg:
                return pair, -neg
            heapq.heappop(heap)
        return None, 0

    def step(self) -> MergeRule | None:
        pair, count = self._best()
        if pair is None or count < MIN_PAIR_FREQ:
            return None
        heapq.heappop(self.heap)
        left, right = pair
        rule = MergeRule(self.str_of[left], self.str_of[right], len(self.merges))
        new = self._intern(rule.merged)

        touched: Counter = Counter()
        sym = self.sym_counts
        merge = _kernels.merge_pair
        for wi in sorted(self.index.pop(pair, ())):
            word = self.words[wi]
            merged, hits = merge(word, left, right, new)
            if not hits:
                continue
            f = self.freqs[wi]
            self.words[wi] = merged
            for p in zip(word, word[1:]):
                touched[p] -= f
            for p in zip(merged, merged[1:]):
                touched[p] += f
                if p != pair:
                    self.index.setdefault(p, set()).add(wi)
            sym[left] -= hits * f
            sym[right] -= hits * f
            sym[new] += hits * f

        for p, delta in touched.items():
            if delta:
                c = self.pair_counts[p] + delta
                if c > 0:
                    self.pair_counts[p] = c
                    heapq.heappush(self.heap, self._entry(p, c))
                else:
                    del self.pair_counts[p]
        self.pair_counts.pop(pair, None)
        for s in {left, right}:
            if s in sym and sym[s] == 0:
                del sym[s]
        self.distinct = len(sym)
        self.merges.append(rule)
        return rule

    def segmentation(self) -> dict[str, list[str]]:
        return {
            "".join(self.str_of[s] for s in word): [self.str_of[s] for s in word]
            for word in self.words
        }

    def model(self, requested=None) -> BpeModel:
        return BpeModel(self.alphabet, tuple(self.merges), requested_merges=requested)


def _word_freqs(corpus: Corpus) -> Counter:
    return vocabulary(corpus, "word")


def learn_bpe(corpus: Corpus, num_merges: int) -> BpeModel:
    """Learn up to ``num_merges`` merge rules.

    Stops early once no pair occurs at least twice; the returned model's
    ``stopped_early`` flag reports that.
    """
    if num_merges < 0:
        raise ValueError("num_merges must be non-negative")
    learner = _Learner(_word_freqs(corpus))
    while len(learner.merges) < num_merges:
        if learner.step() is None:
            log.warning(
                "stopped after %d of %d merges: no pair occurs %d or more times",
                len(learner.merges), num_merges, MIN_PAIR_FREQ,
            )
            break
    return learner.model(requested=num_merges)


@dataclass(frozen=True)
class MatchResult:
    model: BpeModel
    target_vocab: int
    achieved_vocab: int
    # False when merges ran out before the target was met
    reached: bool
    below_alphabet: bool = False


def match_merges(corpus: Corpus, target_vocab_size: int) -> MatchResult:
    """Learn merges until the segmented corpus uses ``target_vocab_size`` subwords.

    The distinct-subword count is checked after every merge and learning
    stops at the first step where it reaches or passes the target.
    """
    if target_vocab_size < 1:
        raise ValueError("target_vocab_size must be positive")
    learner = _Learner(_word_freqs(corpus))
    if target_vocab_size < len(learner.alphabet):
        log.warning(
            "target vocabulary %d is below the alphabet size %d; returning zero merges",
            target_vocab_size, len(learner.alphabet),
        )
        return MatchResult(learner.model(), target_vocab_size, learner.distinct, True, True)
    while learner.distinct < target_vocab_size:
        if learner.step() is None:
            log.warning(
                "merges exhausted at vocabulary %d (target %d)", learner.distinct, target_vocab_size
            )
            return MatchResult(learner.model(), target_vocab_size, learner.distinct, False)
    return MatchResult(learner.model(), target_vocab_size, learner.distinct, True)


def target_overlap(src: Corpus, tgt: Corpus) -> float:
    """Share of target character tokens that also occur in the source alphabet."""
    src_chars = vocabulary(src, "char")
    tgt_chars = vocabulary(tgt, "char")
    total = sum(tgt_chars.values())
    if not total:
        return 1.0
    return sum(c for ch, c in tgt_chars.items() if ch in src_chars) / total


def learn_joint(
    src: Corpus,
    tgt: Corpus,
    num_merges: int,
    mapping=None,
    min_overlap: float = 0.5,
) -> BpeModel:
    """Learn one model over both sides of a parallel corpus.

    With ``mapping`` (a ``TransliterationTable`` from the target script into
    the source script) the target side is transliterated first. Without it,
    the two sides must share enough characters; otherwise
    ``ScriptMismatchError`` is raised.
    """
    if mapping is not None:
        from subwordkit.translit import transliterate_corpus

        tgt = transliterate_corpus(tgt, mapping)
    else:
        overlap = target_overlap(src, tgt)
        if overlap < min_overlap:
            raise ScriptMismatchError(
                f"only {overlap:.1%} of target characters occur in the source alphabet "
                f"(threshold {min_overlap:.0%}); supply a transliteration map"
            )
    return learn_bpe(Corpus(src.sentences + tgt.sentences), num_merges)


def save_model(model: BpeModel, path) -> None:
    lines = [
        f"#subwordkit-bpe version={FORMAT_VERSION} num_merges={model.num_merges}",
        "#alphabet\t" + "\t".join(sorted(model.alphabet)),
    ]
    lines += [f"{m.left}\t{m.right}" for m in model.merges]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path) -> BpeModel:
    """Read a model file written by :func:`save_model`.

    Merge lines are ``left<TAB>right``; an optional third column gives the
    rank explicitly, which must then match the line order.
    """
    try:
        lines = Path(path).read_text(encoding="utf-8").split("\n")
    except (OSError, UnicodeDecodeError) as exc:
        raise ModelFormatError(f"cannot read model {path}: {exc}") from exc
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith("#subwordkit-bpe "):
        raise ModelFormatError(f"{path}:1: missing model header")
    header = dict(kv.split("=", 1) for kv in lines[0].split()[1:] if "=" in kv)
    if header.get("version") != str(FORMAT_VERSION):
        raise ModelFormatError(
            f"{path}:1: unsupported model version {header.get('version')!r} (expected {FORMAT_VERSION})"
        )
    try:
        declared = int(header["num_merges"])
    except (KeyError, ValueError):
        raise ModelFormatError(f"{path}:1: header lacks num_merges") from None
    if len(lines) < 2 or not lines[1].startswith("#alphabet"):
        raise ModelFormatError(f"{path}:2: missing alphabet line")
    alphabet = [c for c in lines[1].split("\t")[1:] if c]
    if any(len(c) != 1 for c in alphabet):
        raise ModelFormatError(f"{path}:2: alphabet entries must be single characters")

    merges = []
    seen_ranks = set()
    for lineno, line in enumerate(lines[2:], 3):
        cols = line.split("\t")
        if len(cols) not in (2, 3) or not cols[0] or not cols[1]:
            raise ModelFormatError(f"{path}:{lineno}: malformed merge line {line!r}")
        rank = len(merges)
        if len(cols) == 3:
            try:
                explicit = int(cols[2])
            except ValueError:
                raise ModelFormatError(f"{path}:{lineno}: bad rank {cols[2]!r}") from None
            if explicit in seen_ranks:
                raise ModelFormatError(f"{path}:{lineno}: duplicate rank {explicit}")
            if explicit != rank:
                raise ModelFormatError(f"{path}:{lineno}: rank {explicit} out of order (expected {rank})")
        seen_ranks.add(rank)
        merges.append(MergeRule(cols[0], cols[1], rank))
    if len(merges) != declared:
        raise ModelFormatError(f"{path}: header declares {declared} merges, found {len(merges)}")
    return BpeModel(frozenset(alphabet), tuple(merges))
