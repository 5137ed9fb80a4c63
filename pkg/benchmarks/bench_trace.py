"""Compare the compiled and numpy trace kernels, alone and inside a full solve.

Run with ``python benchmarks/bench_trace.py [--repeat R]``.
"""

import argparse
import timeit

from tpal import available_backends, dickson_transform, gen_random, solve, trace_correction

SHAPES = [(1, 1), (2, 4), (3, 7), (5, 20), (2, 50)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the numpy kernel is timed")

    print(f"{'n':>3} {'k':>4} " + " ".join(f"{b + ' us':>12}" for b in backends) + "   speedup")
    for n, k in SHAPES:
        D = dickson_transform(gen_random(n, k, 0))
        y = 0.3 + 0.4j
        us = {}
        for b in backends:
            t = min(timeit.repeat(lambda: trace_correction(D, y, b), number=args.repeat, repeat=3))
            us[b] = 1e6 * t / args.repeat
        speed = f"{us['python'] / us['cython']:8.1f}x" if "cython" in us else ""
        print(f"{n:>3} {k:>4} " + " ".join(f"{us[b]:12.1f}" for b in backends) + "  " + speed)

    print("\nfull solve, n=2 k=8, 10 seeds")
    for b in backends:
        t = timeit.timeit(lambda: [solve(gen_random(2, 8, s), backend=b) for s in range(10)], number=1)
        print(f"  {b:>7}: {1e3 * t:8.1f} ms")


if __name__ == "__main__":
    main()
