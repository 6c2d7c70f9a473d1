"""Compare the compiled and numpy enumeration kernels on desk-scale counts.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

from circlelab import kernels
from circlelab.hypersurface import HypersurfaceSpec
from circlelab.kernels import histogram, identity_projection, width

CASES = [
    ("quadric p=3 n=3, Poly_<3", HypersurfaceSpec.diagonal(3, 2, [1, 1, 1]), 3),
    ("cubic p=5 n=2, Poly_<3", HypersurfaceSpec.diagonal(5, 3, [1, 1]), 3),
    ("quadric p=3 n=2, Poly_<5", HypersurfaceSpec.diagonal(3, 2, [1, 1]), 5),
]


def time_case(f, length, repeat):
    proj = identity_projection(width(f, length))
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = histogram(f, length, proj)
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = sorted(kernels.BACKENDS)
    print(f"{'case':32s} " + " ".join(f"{b:>10s}" for b in backends))
    for label, f, length in CASES:
        times, results = [], []
        for b in backends:
            kernels.set_backend(b)
            t, r = time_case(f, length, args.repeat)
            times.append(t)
            results.append(r)
        agree = all((r == results[0]).all() for r in results)
        print(f"{label:32s} " + " ".join(f"{t:10.4f}" for t in times) + ("" if agree else "  MISMATCH"))


if __name__ == "__main__":
    main()
