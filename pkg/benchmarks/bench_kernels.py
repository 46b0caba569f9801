"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Kernel timings call both backends in-process; the end-to-end rows run the
BPE learner and corpus LCSR in a subprocess per backend, with
SUBWORDKIT_PURE selecting the fallback.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from subwordkit import _kernels

END_TO_END = r"""
import time, random
from importlib import resources
from subwordkit import _kernels
from subwordkit.bpe import learn_bpe
from subwordkit.corpus import load_corpus, Corpus, ParallelCorpus
from subwordkit.simil import corpus_lcsr
c = load_corpus(resources.files("subwordkit") / "data" / "sample_10k.txt")
t = time.perf_counter(); learn_bpe(c, 2000); bpe = time.perf_counter() - t
half = Corpus(c.sentences[:1000]); other = Corpus(c.sentences[1000:2000])
t = time.perf_counter(); corpus_lcsr(ParallelCorpus(half, other)); lcsr = time.perf_counter() - t
print(_kernels.BACKEND, bpe, lcsr)
"""


def kernel_rows(repeat):
    rng = random.Random(0)
    pairs = [("".join(rng.choice("abcdefgh ") for _ in range(80)),
              "".join(rng.choice("abcdefgh ") for _ in range(80))) for _ in range(50)]
    words = [[rng.randint(0, 5) for _ in range(12)] for _ in range(2000)]
    rows = []
    for name, mod in sorted(_kernels.backends().items()):
        lcs = min(timeit.repeat(lambda: [mod.lcs_length(a, b) for a, b in pairs], number=1, repeat=repeat))
        lev = min(timeit.repeat(lambda: [mod.levenshtein(a, b) for a, b in pairs], number=1, repeat=repeat))
        mrg = min(timeit.repeat(lambda: [mod.merge_pair(w, 1, 2, 9) for w in words], number=1, repeat=repeat))
        rows.append((name, lcs, lev, mrg))
    return rows


def end_to_end(pure):
    env = dict(os.environ, SUBWORDKIT_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    name, bpe, lcsr = out.stdout.split()
    return name, float(bpe), float(lcsr)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print("kernel timings (best of %d, seconds)" % args.repeat)
    print(f"{'backend':<8} {'lcs 50x80²':>12} {'lev 50x80²':>12} {'merge 2000':>12}")
    for name, lcs, lev, mrg in kernel_rows(args.repeat):
        print(f"{name:<8} {lcs:>12.5f} {lev:>12.5f} {mrg:>12.5f}")
    print("\nend to end (seconds)")
    print(f"{'backend':<8} {'learn 2k merges':>16} {'LCSR 1k pairs':>14}")
    for pure in (False, True):
        name, bpe, lcsr = end_to_end(pure)
        print(f"{name:<8} {bpe:>16.3f} {lcsr:>14.3f}")


if __name__ == "__main__":
    main()
