"""Time the pure-Python and compiled kernels on the hot paths.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import timeit

import numpy as np

from so21sr import kernels


def cases(mod):
    ts = np.linspace(0.0, 6.0, 2000)
    betas = np.linspace(-2.0, 2.0, 2000)
    g = np.reshape(mod.geodesic_entries(0.7, 0.4, 2.5), (3, 3))
    n = g[0, 0] - 1.0
    # times matching the projection for each beta (|beta| < 1 branch)
    k = np.sqrt(1.0 - np.clip(betas, -0.999, 0.999) ** 2)
    scan_t = 2.0 * np.arcsinh(k * math.sqrt(0.5 * n)) / k
    scan_b = np.clip(betas, -0.999, 0.999)
    return {
        "geodesic_entries x2000": lambda: [mod.geodesic_entries(0.3, 0.8, t) for t in ts],
        "geodesic_batch 2000": lambda: mod.geodesic_batch(0.3, 0.8, ts),
        "fiber_scan 2000": lambda: mod.fiber_scan(g, scan_b, scan_t),
        "cut time bisection x50": lambda: [
            mod.bisect_area(b, math.pi / b, 2 * math.pi / b, math.pi, 1e-12, 200)
            for b in np.linspace(0.1, 1.0, 50)
        ],
    }


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = kernels.available_backends()
    results = {}
    for name, mod in backends.items():
        for label, fn in cases(mod).items():
            best = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            results.setdefault(label, {})[name] = best
    names = list(backends)
    print(f"{'kernel':<26}" + "".join(f"{n:>12}" for n in names) + ("   speedup" if len(names) > 1 else ""))
    for label, row in results.items():
        line = f"{label:<26}" + "".join(f"{row[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) > 1:
            line += f"   {row['python'] / row['cython']:>6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
