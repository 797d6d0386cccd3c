"""Compare the numba kernels against the pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Timings exclude the first (compiling) call. When numba is missing or
TOURFIX_DISABLE_NUMBA is set, the "numba" column runs the undecorated Python
loops instead, which is expected to be slow.
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from tourfix._accel import HAVE_NUMBA
from tourfix.kernels import bracket_winners_numba, bracket_winners_numpy, fas_table_numba, fas_table_numpy
from tourfix.oracle import all_seedings


def random_beats(rng, m, n):
    beats = np.zeros((m, n, n), dtype=bool)
    for i in range(m):
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.5:
                    beats[i, u, v] = True
                else:
                    beats[i, v, u] = True
    return beats


def best_of(fn, args, repeat):
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    print(f"numba enabled: {HAVE_NUMBA}")
    print(f"{'kernel':<34}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")

    cases = [
        ("bracket_winners n=8 all perms m=3", all_seedings(8, symmetry=False), random_beats(rng, 3, 8)),
        ("bracket_winners n=16 20k rand m=2",
         np.array([rng.sample(range(16), 16) for _ in range(20000)], dtype=np.int64), random_beats(rng, 2, 16)),
    ]
    for name, seeds, beats in cases:
        ta, a = best_of(bracket_winners_numba, (seeds, beats), args.repeat)
        tb, b = best_of(bracket_winners_numpy, (seeds, beats), args.repeat)
        assert np.array_equal(a, b)
        print(f"{name:<34}{ta:>12.4f}{tb:>12.4f}{tb / ta:>10.1f}")

    for n in (12, 16, 18):
        beats = random_beats(rng, 1, n)[0]
        masks = np.array([sum(1 << v for v in range(n) if beats[u, v]) for u in range(n)], dtype=np.int64)
        ta, a = best_of(fas_table_numba, (masks,), args.repeat)
        tb, b = best_of(fas_table_numpy, (masks,), args.repeat)
        assert np.array_equal(a, b)
        print(f"{'fas_table n=' + str(n):<34}{ta:>12.4f}{tb:>12.4f}{tb / ta:>10.1f}")


if __name__ == "__main__":
    main()
