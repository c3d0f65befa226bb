"""Pure Python Levenshtein kernel over integer id sequences.

Two-row dynamic program; used when the compiled extension is unavailable.
"""

from __future__ import annotations


def levenshtein_ids(a: list[int], b: list[int]) -> int:
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    curr = [0] * (len(b) + 1)
    for i, ai in enumerate(a):
        curr[0] = i + 1
        for j, bj in enumerate(b):
            cost = 0 if ai == bj else 1
            curr[j + 1] = min(curr[j] + 1, prev[j + 1] + 1, prev[j] + cost)
        prev, curr = curr, prev
    return prev[len(b)]
