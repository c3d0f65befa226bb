# cython: boundscheck=False, wraparound=False
"""Compiled Levenshtein kernel over integer id sequences."""

from libc.stdlib cimport free, malloc


def levenshtein_ids(a, b):
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la

    cdef long *ia = <long *> malloc(la * sizeof(long))
    cdef long *ib = <long *> malloc(lb * sizeof(long))
    cdef long *prev = <long *> malloc((lb + 1) * sizeof(long))
    cdef long *curr = <long *> malloc((lb + 1) * sizeof(long))
    if ia == NULL or ib == NULL or prev == NULL or curr == NULL:
        free(ia); free(ib); free(prev); free(curr)
        raise MemoryError()

    cdef Py_ssize_t i, j
    cdef long cost, best, cand
    try:
        for i in range(la):
            ia[i] = a[i]
        for j in range(lb):
            ib[j] = b[j]
        for j in range(lb + 1):
            prev[j] = j
        for i in range(la):
            curr[0] = i + 1
            for j in range(lb):
                cost = 0 if ia[i] == ib[j] else 1
                best = curr[j] + 1
                cand = prev[j + 1] + 1
                if cand < best:
                    best = cand
                cand = prev[j] + cost
                if cand < best:
                    best = cand
                curr[j + 1] = best
            for j in range(lb + 1):
                prev[j] = curr[j]
        return prev[lb]
    finally:
        free(ia)
        free(ib)
        free(prev)
        free(curr)
