"""Pure-Python versions of the hot kernels.

Used when the compiled ``_core`` extension is unavailable, or when
``SUBWORDKIT_PURE=1`` is set in the environment.
"""


def lcs_length(a, b):
    """Length of the longest common subsequence of two strings."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0]
        for j, cb in enumerate(b):
            if ca == cb:
                cur.append(prev[j] + 1)
            else:
                cur.append(cur[j] if cur[j] > prev[j + 1] else prev[j + 1])
        prev = cur
    return prev[-1]


def levenshtein(a, b):
    """Unit-cost edit distance (insert, delete, substitute)."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cost = prev[j - 1] + (ca != cb)
            ins = cur[j - 1] + 1
            dele = prev[j] + 1
            if ins < cost:
                cost = ins
            if dele < cost:
                cost = dele
            cur.append(cost)
        prev = cur
    return prev[-1]


def merge_pair(word, left, right, new):
    """Replace non-overlapping ``(left, right)`` occurrences, scanning left to right.

    ``word`` is a list of integer symbol ids. Returns the merged list and the
    number of replacements; the input list is returned unchanged when the
    pair does not occur.
    """
    n = len(word)
    out = []
    hits = 0
    i = 0
    while i < n:
        if i + 1 < n and word[i] == left and word[i + 1] == right:
            out.append(new)
            hits += 1
            i += 2
        else:
            out.append(word[i])
            i += 1
    if not hits:
        return word, 0
    return out, hits
