"""Benchmark the numba and pure-numpy builds of the hot kernels head to head.

Run:  python benchmarks/bench_kernels.py [--repeat N]

Uses representative desk-scale workloads: the commuting-pair count on a
large Cayley table, dense product-table construction, circle-table
construction at an order where no product table fits, and the pair count
for a*xy + b*yx = 0.
"""

import argparse
import time

import numpy as np

from spectra import kernels
from spectra.constructions import dihedral_group, nring, zn_ring


def bench(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def ring_args(ring):
    nzi, nzj, nzv = ring.nonzero_sc()
    return ring.coords, ring.dmods, ring.strides, ring.sc, nzi, nzj, nzv


def workloads():
    from spectra.config import Caps
    from spectra.constructions import matrix_ring

    group = dihedral_group(1024)                       # order 2048 Cayley table
    medium = zn_ring(2025)                             # order 2025, k = 1
    big = nring(matrix_ring(2, 3), Caps(order_cap=8192))  # order 6561, k = 8
    med_table = medium.product_table(4096)

    n_big = big.order
    out = np.empty((n_big, n_big), dtype=np.int32)
    neg_a = ((-1 * medium.coords) % medium.dmods @ medium.strides).astype(np.int32)
    b_map = ((1 * medium.coords) % medium.dmods @ medium.strides).astype(np.int32)

    n_med = medium.order
    med_out = np.empty((n_med, n_med), dtype=np.int32)

    return [
        ("commuting_count (group n=2048)", "commuting_count",
         (group.table, 0, group.n)),
        ("mul_table (ring n=2025)", "mul_table_block",
         (med_out, *ring_args(medium), 0, n_med)),
        ("circle_table (ring n=6561, k=8)", "circle_table_block",
         (out, *ring_args(big), 0, n_big)),
        ("pairs_f_zero_direct (ring n=2025)", "pairs_f_zero_direct",
         (medium.coords, medium.dmods, medium.sc, *medium.nonzero_sc(),
          1, -1, 0, n_med)),
        ("pairs_f_zero_table (ring n=2025)", "pairs_f_zero_table",
         (med_table, neg_a, b_map, 0, n_med)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    names = sorted(kernels.BACKENDS)
    print(f"available backends: {', '.join(names)} (active: {kernels.ACTIVE_BACKEND})")
    if "numba" in kernels.BACKENDS:
        # trigger compilation outside the timed region
        for label, kernel, call_args in workloads():
            kernels.BACKENDS["numba"][kernel](*call_args)

    header = f"{'kernel':<38}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, kernel, call_args in workloads():
        times = {}
        for name in names:
            times[name] = bench(kernels.BACKENDS[name][kernel], *call_args,
                                repeat=args.repeat)
        row = f"{label:<38}" + "".join(f"{times[n]:>11.4f}s" for n in names)
        if len(names) == 2:
            row += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
