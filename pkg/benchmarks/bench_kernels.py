"""Time the numba loops against the numpy fallback on the same inputs.

    python3 benchmarks/bench_kernels.py [--side 12] [--cols 64] [--repeat 5]

Both variants are imported directly from ``lattice_ineq._kernels`` so the
environment flag does not matter here.  The first numba call (compilation
or cache load) is excluded from the timings.
"""

import argparse
import statistics
import time

import numpy as np

from lattice_ineq import _kernels
from lattice_ineq._accel import HAVE_NUMBA
from lattice_ineq.lattice import make_box


def _time(fn, repeat):
    fn()
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--side", type=int, default=12, help="box side length in Z^3")
    ap.add_argument("--cols", type=int, default=64, help="number of function columns")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    domain = make_box(3, (args.side,) * 3)
    n = domain.dimension
    nbr = domain.neighbor_table
    rng = np.random.default_rng(0)
    U = rng.standard_normal((nbr.shape[0], args.cols))
    U[domain.size:] = 0.0

    kernels = {
        "laplacian_columns": lambda impl: impl(nbr, U, n),
        "energy_terms": lambda impl: impl(nbr, U, n),
        "coord_gamma_columns": lambda impl: impl(nbr, U, 0, n, domain.size),
    }
    print(f"box {args.side}^3 (N={domain.size}, extended M={nbr.shape[0]}), {args.cols} columns")
    if not HAVE_NUMBA:
        print("numba not installed: the loop variants run as plain Python")
    print(f"{'kernel':<22}{'numpy [ms]':>12}{'loop [ms]':>12}{'speedup':>10}")
    for name, call in kernels.items():
        t_np = _time(lambda: call(getattr(_kernels, f"{name}_numpy")), args.repeat)
        t_nb = _time(lambda: call(getattr(_kernels, f"{name}_loop")), args.repeat)
        print(f"{name:<22}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
