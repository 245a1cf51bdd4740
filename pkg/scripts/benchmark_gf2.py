"""Benchmark the pure-Python and compiled GF(2) rank kernels.

Times random dense and sparse eliminations at a range of matrix sizes and
prints a table with the speedup of the compiled kernel.  The crossover row
count informs _COMPILED_MIN_ROWS in khobs.gf2.

Usage: python3 scripts/benchmark_gf2.py [--sizes 32,64,128,256,512]
"""

from __future__ import annotations

import argparse
import random
import time

from khobs.gf2 import HAVE_COMPILED, gf2_rank_compiled, gf2_rank_pure


def random_rows(n: int, cols: int, density: float, rng: random.Random):
    rows = []
    for _ in range(n):
        v = 0
        for c in range(cols):
            if rng.random() < density:
                v |= 1 << c
        rows.append(v)
    return rows


def time_call(fn, *args, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="32,64,128,256,512")
    ap.add_argument("--density", type=float, default=0.5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"compiled kernel available: {HAVE_COMPILED}")
    header = f"{'n x n':>10} {'density':>8} {'pure (ms)':>10} {'compiled (ms)':>14} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    rng = random.Random(0)
    for n in sizes:
        for density in (args.density, 0.05):
            rows = random_rows(n, n, density, rng)
            r_pure = gf2_rank_pure(rows)
            t_pure = time_call(gf2_rank_pure, rows)
            if HAVE_COMPILED:
                r_comp = gf2_rank_compiled(rows, n)
                assert r_pure == r_comp, (n, density, r_pure, r_comp)
                t_comp = time_call(gf2_rank_compiled, rows, n)
                speed = f"{t_pure / t_comp:7.2f}x"
                comp_ms = f"{t_comp * 1e3:14.3f}"
            else:
                comp_ms = f"{'-':>14}"
                speed = f"{'-':>8}"
            print(
                f"{n:>7}x{n:<3} {density:>8.2f} {t_pure * 1e3:>10.3f} {comp_ms} {speed}"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
