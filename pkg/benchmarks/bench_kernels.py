"""Time the compiled and numpy potential kernels on the same point sets.

    python3 benchmarks/bench_kernels.py [--n 200000] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from elastocap import kernels


def point_sets(n, rng):
    x = rng.uniform(1e-4, 3.0, n)
    y = rng.uniform(-3.0, 3.0, n)
    bulk = x + 1j * y
    t = rng.uniform(0, 2 * np.pi, n)
    guard = 1j + 0.04 * np.sqrt(rng.uniform(0, 1, n)) * np.exp(1j * t)
    guard.real = np.abs(guard.real)
    return {"half-plane": bulk, "guard disc": guard}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    backends = {"numpy": kernels.kpi_derivatives_python}
    if kernels.kpi_derivatives_cython is not None:
        backends["cython"] = kernels.kpi_derivatives_cython
    else:
        print("compiled extension not built; timing numpy only")
    print(f"{'points':<12}{'backend':<9}{'best ms':>10}{'Mpts/s':>9}{'max rel diff':>14}")
    for label, z in point_sets(args.n, rng).items():
        ref = kernels.kpi_derivatives_python(z)
        for name, fn in backends.items():
            best = min(timeit.repeat(lambda: fn(z), number=1, repeat=args.repeat))
            diff = float(np.max(np.abs(fn(z) - ref) / np.maximum(np.abs(ref), 1e-300)))
            print(f"{label:<12}{name:<9}{1e3 * best:>10.2f}{args.n / best / 1e6:>9.2f}{diff:>14.2e}")


if __name__ == "__main__":
    main()
