"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--sizes 1000 10000 100000] [--repeats 7]

Prints best-of-repeats wall time per call and the speedup of the compiled
backend.  Without a built extension only the numpy timings are shown.
"""

import argparse
import timeit

import numpy as np

from rydcp import kernels


def _cases(size, rng):
    times = np.r_[0.0, np.cumsum(rng.uniform(0.5, 1.5, size))] * 1e-12
    values = rng.uniform(-1, 1, size + 1)
    omegas = np.linspace(-4e11, 4e11, size | 1)
    g = rng.normal(size=omegas.size) + 1j * rng.normal(size=omegas.size)
    return {
        "linear_phase_integral": lambda k: k.linear_phase_integral(times, values, 1.88e11, times[-1]),
        "spectral_kernel_sum": lambda k: k.spectral_kernel_sum(omegas, g, 1.88e11, times[-1]),
    }


def best_seconds(func, repeats):
    timer = timeit.Timer(func)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeats, number=number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000, 1_000_000])
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(0)
    names = sorted(kernels.BACKENDS, reverse=True)  # python first
    print(f"{'kernel':<24}{'size':>10}" + "".join(f"{n + ' [ms]':>16}" for n in names) + f"{'speedup':>10}")
    for size in args.sizes:
        for kernel, call in _cases(size, rng).items():
            results = {n: call(kernels.BACKENDS[n]) for n in names}
            ref = results["python"]
            for n, r in results.items():
                if abs(r - ref) > 1e-9 * max(abs(ref), 1e-300):
                    raise SystemExit(f"{kernel}: backend {n} disagrees ({r} vs {ref})")
            times = {n: best_seconds(lambda n=n: call(kernels.BACKENDS[n]), args.repeats) for n in names}
            speed = f"{times['python'] / times['compiled']:>9.1f}x" if "compiled" in times else f"{'-':>10}"
            print(f"{kernel:<24}{size:>10}" + "".join(f"{times[n] * 1e3:>16.4f}" for n in names) + speed)


if __name__ == "__main__":
    main()
