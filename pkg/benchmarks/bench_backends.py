"""Compare the compiled and pure-NumPy backends.

Times the two hot paths (per-dyad kernel evaluation and the row-moment
reduction behind the node-level variance component) plus a full fit at
several network sizes, printing a table of per-call times and speedups.

Run:  python benchmarks/bench_backends.py [--sizes 100,400,1600] [--repeat 5]
"""
import argparse
import time

import numpy as np

from dyadkde import DyadicSample, fit, gaussian
from dyadkde._backend import (
    _kernel_values_numpy,
    _row_moments_numpy,
    triu_indices,
)

try:
    from dyadkde import _speedups
except ImportError:
    _speedups = None


def best_of(func, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="100,400,1600")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _speedups is None:
        print("compiled extension not available; timing the NumPy backend only")

    rng = np.random.default_rng(0)
    header = f"{'task':<22}{'N':>6}{'numpy':>12}{'compiled':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n_nodes in sizes:
        n = n_nodes * (n_nodes - 1) // 2
        weights = rng.normal(size=n)
        w, h = 1.645, 0.25
        kvals = _kernel_values_numpy(weights, w, h, 0)
        center = float(kvals.mean())
        triu_indices(n_nodes)  # warm the index cache for both backends

        rows = [
            (
                "kernel_values",
                lambda: _kernel_values_numpy(weights, w, h, 0),
                (lambda: _speedups.kernel_values(weights, w, h, 0))
                if _speedups
                else None,
            ),
            (
                "row_moments",
                lambda: _row_moments_numpy(kvals, n_nodes, center),
                (lambda: _speedups.row_moments(kvals, n_nodes, center))
                if _speedups
                else None,
            ),
        ]
        sample = DyadicSample(n_nodes, weights)
        rows.append(
            (
                "full fit",
                lambda: fit(sample, w, h, gaussian()),
                None,  # fit always uses the active backend; shown once
            )
        )
        for name, numpy_fn, compiled_fn in rows:
            t_np = best_of(numpy_fn, args.repeat)
            if compiled_fn is not None:
                t_c = best_of(compiled_fn, args.repeat)
                print(
                    f"{name:<22}{n_nodes:>6}{t_np * 1e3:>10.3f}ms"
                    f"{t_c * 1e3:>10.3f}ms{t_np / t_c:>8.1f}x"
                )
            else:
                print(f"{name:<22}{n_nodes:>6}{t_np * 1e3:>10.3f}ms{'—':>12}{'—':>9}")


if __name__ == "__main__":
    main()
