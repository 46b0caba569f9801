"""Regenerate src/subwordkit/data/sample_10k.txt.

A synthetic Latin-script corpus: words are built from CV syllables plus a
small set of suffixes and drawn with Zipfian frequencies, which gives BPE
something realistic to find (frequent stems, shared endings).
"""

import random
from pathlib import Path

ONSETS = ["", "b", "d", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "st", "kr", "pl", "sk", "tr"]
VOWELS = ["a", "e", "i", "o", "u", "aa", "ei", "ou"]
SUFFIXES = ["", "", "", "en", "er", "ene", "ing", "ske", "lig", "het", "s", "t"]


def main(lines=10_000, seed=2017):
    rng = random.Random(seed)
    stems = set()
    while len(stems) < 3000:
        stems.add("".join(rng.choice(ONSETS) + rng.choice(VOWELS) for _ in range(rng.randint(1, 3))) + rng.choice(["", "n", "r", "k", "d", "l"]))
    stems = sorted(stems)
    rng.shuffle(stems)
    weights = [1 / (r + 1) for r in range(len(stems))]
    out = []
    for _ in range(lines):
        words = [w + rng.choice(SUFFIXES) for w in rng.choices(stems, weights, k=rng.randint(4, 16))]
        words.append(rng.choice([".", ".", ".", "?", "!"]))
        out.append(" ".join(words))
    path = Path(__file__).resolve().parents[1] / "src" / "subwordkit" / "data" / "sample_10k.txt"
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    print(path, len(out))


if __name__ == "__main__":
    main()
