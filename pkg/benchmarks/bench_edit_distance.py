"""Benchmark the compiled edit-distance kernel against the pure Python
fallback on random token sequences.

Usage: python3 benchmarks/bench_edit_distance.py [--sizes 50,200,800]
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from factattr.metrics import KERNEL, edit_distance, edit_distance_pure


def make_pair(rng: random.Random, n: int) -> tuple[list[str], list[str]]:
    vocab = [f"w{i}" for i in range(max(8, n // 4))]
    a = [rng.choice(vocab) for _ in range(n)]
    # revision: ~10% substitutions over a copy
    b = [rng.choice(vocab) if rng.random() < 0.1 else t for t in a]
    return a, b


def bench(fn, pairs, repeats: int = 3) -> float:
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        for a, b in pairs:
            fn(a, b)
        timings.append(time.perf_counter() - start)
    return min(timings)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="50,200,800")
    parser.add_argument("--pairs", type=int, default=20)
    args = parser.parse_args()

    rng = random.Random(0)
    print(f"active kernel: {KERNEL}")
    print(f"{'tokens':>8} {'compiled (s)':>14} {'pure (s)':>12} {'speedup':>9}")
    for size in (int(s) for s in args.sizes.split(",")):
        pairs = [make_pair(rng, size) for _ in range(args.pairs)]
        for a, b in pairs[:3]:  # sanity: kernels agree
            assert edit_distance(a, b) == edit_distance_pure(a, b)
        t_active = bench(edit_distance, pairs)
        t_pure = bench(edit_distance_pure, pairs)
        speedup = t_pure / t_active if t_active else float("inf")
        print(f"{size:>8} {t_active:>14.4f} {t_pure:>12.4f} {speedup:>8.1f}x")


if __name__ == "__main__":
    main()
