#!/usr/bin/env python3
"""Time the numba kernels against the numpy fallback.

Three timings per backend:
  1. the packed pi_i loop alone (keys and coefficients stay int64 arrays)
  2. pi_w applied to x^lambda end to end, including conversion to a dict
  3. block straightening of every term of a large key polynomial

Usage:
    python benchmarks/bench_kernels.py [--n 9] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from levisphere import _kernels
from levisphere.compositions import BlockStructure
from levisphere.keypoly import pi_along, sorting_permutation
from levisphere.poly import SparsePoly
from levisphere.splitschur import straighten_many
from levisphere.symgroup import canonical_reduced_word


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def packed_loop(mono, word):
    n = mono.n
    base = mono.total_degree() + 1
    exps, coeffs = mono.to_arrays()
    keys = _kernels.pack(exps, base)
    for i in reversed(word):
        keys, coeffs = _kernels.pi_packed(keys, coeffs, i, n, base)
    return keys, coeffs


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=9, help="number of variables")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    n = args.n
    # a staircase pushed to the right gives a large key polynomial
    alpha = tuple(range(2, n + 1)) + (1,)
    lam, w = sorting_permutation(alpha)
    word = canonical_reduced_word(w)
    mono = SparsePoly.monomial(lam)
    blocks = BlockStructure.from_D((1, n - 2, n - 1), n)

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    results = {}
    for be in backends:
        _kernels.set_backend(be)
        pi_along(mono, word)  # warm-up, includes JIT compilation for numba
        t_loop, _ = best_of(lambda: packed_loop(mono, word), args.repeat)
        t_pi, kappa = best_of(lambda: pi_along(mono, word), args.repeat)
        exps, _ = kappa.to_arrays()
        straighten_many(exps[:8], blocks)
        t_st, (signs, gammas) = best_of(lambda: straighten_many(exps, blocks), args.repeat)
        results[be] = (t_pi, t_st, kappa, signs, gammas, t_loop)
        print(
            f"{be:>6}: packed loop {t_loop * 1e3:9.2f} ms   pi_w end to end {t_pi * 1e3:9.2f} ms"
            f"   straighten {t_st * 1e3:9.2f} ms   ({len(kappa)} terms)"
        )

    if len(results) == 2:
        a, b = results["numpy"], results["numba"]
        same = a[2] == b[2] and np.array_equal(a[3], b[3]) and np.array_equal(a[4][a[3] != 0], b[4][b[3] != 0])
        print(
            f"speedup: packed loop x{a[5] / b[5]:.1f}, pi_w end to end x{a[0] / b[0]:.1f},"
            f" straighten x{a[1] / b[1]:.1f}; outputs identical: {same}"
        )
    else:
        print("numba unavailable or disabled; only the numpy backend was timed")


if __name__ == "__main__":
    main()
