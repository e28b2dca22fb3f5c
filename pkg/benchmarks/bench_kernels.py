"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from bohrlab import _kernels_py

try:
    from bohrlab import _kernels
except ImportError:
    _kernels = None


def cases():
    rng = np.random.default_rng(0)
    coeffs = rng.normal(size=400) + 1j * rng.normal(size=400)
    values = rng.random(400)
    zeros = 0.9 * np.exp(2j * np.pi * rng.random(4))
    return {
        "taylor_at(N=400, k=4)": lambda m: m.taylor_at(coeffs, 0.3 + 0.2j, 4),
        "power_sum(N=400)": lambda m: m.power_sum(values, 0.7, 2, 2),
        "blaschke_expand(deg=4, N=400)": lambda m: m.blaschke_expand(zeros, 1.0, 400),
        "weighted_phi_sum(N=10000)": lambda m: m.weighted_phi_sum(0.9, 1.0, 3.0, 10_000, False),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'kernel':32s} {'python us':>12s} {'cython us':>12s} {'speedup':>8s}")
    for name, fn in cases().items():
        number = 200
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=number, repeat=args.repeat)) / number
        if _kernels is None:
            print(f"{name:32s} {t_py * 1e6:12.2f}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(_kernels), number=number, repeat=args.repeat)) / number
        print(f"{name:32s} {t_py * 1e6:12.2f} {t_cy * 1e6:12.2f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
