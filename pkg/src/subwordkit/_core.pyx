# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels: LCS, edit distance and in-word pair merging."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef Py_UCS4* _to_ucs4(str s, Py_ssize_t n) except NULL:
    cdef Py_UCS4* buf = <Py_UCS4*> PyMem_Malloc((n + 1) * sizeof(Py_UCS4))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = s[i]
    return buf


def lcs_length(str a, str b):
    """Length of the longest common subsequence of two strings."""
    if len(a) < len(b):
        a, b = b, a
    cdef Py_ssize_t n = len(a), m = len(b), i, j
    if m == 0:
        return 0
    cdef Py_UCS4* sa = _to_ucs4(a, n)
    cdef Py_UCS4* sb = _to_ucs4(b, m)
    cdef Py_ssize_t* prev = <Py_ssize_t*> PyMem_Malloc((m + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* cur = <Py_ssize_t*> PyMem_Malloc((m + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* tmp
    cdef Py_ssize_t result
    if prev == NULL or cur == NULL:
        PyMem_Free(sa); PyMem_Free(sb); PyMem_Free(prev); PyMem_Free(cur)
        raise MemoryError()
    try:
        for j in range(m + 1):
            prev[j] = 0
        for i in range(n):
            cur[0] = 0
            for j in range(m):
                if sa[i] == sb[j]:
                    cur[j + 1] = prev[j] + 1
                elif cur[j] > prev[j + 1]:
                    cur[j + 1] = cur[j]
                else:
                    cur[j + 1] = prev[j + 1]
            tmp = prev
            prev = cur
            cur = tmp
        result = prev[m]
    finally:
        PyMem_Free(sa); PyMem_Free(sb); PyMem_Free(prev); PyMem_Free(cur)
    return result


def levenshtein(str a, str b):
    """Unit-cost edit distance (insert, delete, substitute)."""
    if len(a) < len(b):
        a, b = b, a
    cdef Py_ssize_t n = len(a), m = len(b), i, j, cost, alt
    if m == 0:
        return n
    cdef Py_UCS4* sa = _to_ucs4(a, n)
    cdef Py_UCS4* sb = _to_ucs4(b, m)
    cdef Py_ssize_t* prev = <Py_ssize_t*> PyMem_Malloc((m + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* cur = <Py_ssize_t*> PyMem_Malloc((m + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* tmp
    cdef Py_ssize_t result
    if prev == NULL or cur == NULL:
        PyMem_Free(sa); PyMem_Free(sb); PyMem_Free(prev); PyMem_Free(cur)
        raise MemoryError()
    try:
        for j in range(m + 1):
            prev[j] = j
        for i in range(n):
            cur[0] = i + 1
            for j in range(m):
                cost = prev[j] + (0 if sa[i] == sb[j] else 1)
                alt = cur[j] + 1
                if alt < cost:
                    cost = alt
                alt = prev[j + 1] + 1
                if alt < cost:
                    cost = alt
                cur[j + 1] = cost
            tmp = prev
            prev = cur
            cur = tmp
        result = prev[m]
    finally:
        PyMem_Free(sa); PyMem_Free(sb); PyMem_Free(prev); PyMem_Free(cur)
    return result


def merge_pair(list word, long left, long right, long new):
    """Replace non-overlapping ``(left, right)`` occurrences, scanning left to right.

    Returns ``(merged, hits)``; ``word`` itself comes back when ``hits == 0``.
    """
    cdef Py_ssize_t n = len(word), i = 0
    cdef long hits = 0
    cdef long x
    # cheap scan first: most words in the index do not need rewriting
    for i in range(n - 1):
        if <long> word[i] == left and <long> word[i + 1] == right:
            break
    else:
        return word, 0
    cdef list out = word[:i]
    while i < n:
        x = word[i]
        if i + 1 < n and x == left and <long> word[i + 1] == right:
            out.append(new)
            hits += 1
            i += 2
        else:
            out.append(x)
            i += 1
    return out, hits
