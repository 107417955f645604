#!/usr/bin/env python3
"""Compare the numba and pure-numpy orbit kernels on a few shapes.

Usage: python benchmarks/bench_kernels.py [--large]

--large adds the 43-million-state sweep (all parts 1, sizes 4 x 4, over
GF(3)); expect a couple of minutes for the numpy path.
"""

import argparse
import os
import time

from paraclasses.gf import ff_order
from paraclasses import matrix_problem
from paraclasses.matrix_problem import enumerate_orbits

CASES = [
    ((2, 1), (2, 1), 3),
    ((4, 2), (4, 2), 2),
    ((4, 2), (4, 2), 3),
    ((1, 1, 1, 1), (1, 1, 1, 1), 2),
    ((1, 1, 1, 1), (2, 1, 1), 3),
]

LARGE = [((1, 1, 1, 1), (1, 1, 1, 1), 3)]


def run(mu, nu, q, kernel):
    os.environ["PARACLASSES_KERNEL"] = kernel
    matrix_problem._packed_cache.clear()
    field = ff_order(q)
    t0 = time.time()
    orbits = enumerate_orbits(mu, nu, field, budget=1 << 27)
    dt = time.time() - t0
    return orbits.count, field.order ** orbits.shape.dim, dt


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--large", action="store_true")
    args = ap.parse_args()
    cases = CASES + (LARGE if args.large else [])
    print(f"{'mu':>12} {'nu':>12} {'q':>2} {'states':>10} {'orbits':>7} "
          f"{'numba[s]':>9} {'numpy[s]':>9} {'speedup':>8}")
    for mu, nu, q in cases:
        # warm the jit cache before timing
        run(mu, nu, q, "numba")
        count, states, t_nb = run(mu, nu, q, "numba")
        count2, _, t_np = run(mu, nu, q, "numpy")
        assert count == count2
        print(f"{str(mu):>12} {str(nu):>12} {q:>2} {states:>10} {count:>7} "
              f"{t_nb:>9.3f} {t_np:>9.3f} {t_np / max(t_nb, 1e-9):>8.1f}x")
    os.environ.pop("PARACLASSES_KERNEL", None)


if __name__ == "__main__":
    main()
