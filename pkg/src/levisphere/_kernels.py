"""Hot loops over packed polynomials, in numba and in plain numpy.

A polynomial in n variables whose total degree is below ``base`` is packed
as a sorted int64 array of mixed-radix keys (variable k is the digit with
place value ``base ** (n - k)``) plus an int64 coefficient array.  Key order
is lexicographic order on exponent vectors.

The numba kernels are used when numba imports and ``LEVISPHERE_NO_NUMBA`` is
unset (or "0"); otherwise the numpy versions run.  Both give identical
results; ``benchmarks/bench_kernels.py`` times one against the other.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("LEVISPHERE_NO_NUMBA", "0") not in ("", "0", "false", "False")

try:
    if _DISABLED:
        raise ImportError("disabled by LEVISPHERE_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

# Keys must stay below 2**63; coefficient sums below this bound cannot wrap.
KEY_LIMIT = 2**62
COEFF_LIMIT = 2**61

__all__ = [
    "HAVE_NUMBA",
    "backend",
    "set_backend",
    "packable",
    "pack",
    "unpack",
    "pi_packed",
    "straighten_packed",
]


# -- numpy -------------------------------------------------------------------


def _pi_expand_np(keys, coeffs, pa, pb, base):
    a = (keys // pa) % base
    b = (keys // pb) % base
    up = a >= b
    down = b > a + 1
    cnt = np.where(up, a - b + 1, np.where(down, b - a - 1, 0))
    lo = np.where(up, b, a + 1)
    sgn = np.where(up, 1, -1).astype(np.int64)
    total = int(cnt.sum())
    idx = np.repeat(np.arange(keys.shape[0]), cnt)
    starts = np.cumsum(cnt) - cnt
    offs = np.arange(total, dtype=np.int64) - np.repeat(starts, cnt)
    k = lo[idx] + offs
    s = (a + b)[idx]
    rest = (keys - a * pa - b * pb)[idx]
    return rest + k * pa + (s - k) * pb, sgn[idx] * coeffs[idx]


def _consolidate_np(keys, coeffs):
    if keys.shape[0] == 0:
        return keys, coeffs
    uniq, inv = np.unique(keys, return_inverse=True)
    sums = np.zeros(uniq.shape[0], dtype=np.int64)
    np.add.at(sums, inv, coeffs)
    keep = sums != 0
    return uniq[keep], sums[keep]


def _straighten_np(exps, starts, stops):
    m, n = exps.shape
    signs = np.ones(m, dtype=np.int64)
    out = exps.copy()
    for s, e in zip(starts, stops):
        size = e - s
        if size < 2:
            continue
        stair = np.arange(size - 1, -1, -1, dtype=np.int64)
        v = exps[:, s:e] + stair
        # an inversion here is a pair p < q with v_p < v_q
        inv = (v[:, :, None] < v[:, None, :])
        inv = np.triu(np.ones((size, size), dtype=bool), 1)[None] & inv
        par = inv.sum(axis=(1, 2)) % 2
        srt = -np.sort(-v, axis=1)
        clash = (srt[:, :-1] == srt[:, 1:]).any(axis=1)
        signs = np.where(par == 1, -signs, signs)
        signs = np.where(clash, 0, signs)
        out[:, s:e] = srt - stair
    return signs, out


# -- numba -------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _pi_expand_nb(keys, coeffs, pa, pb, base):
        m = keys.shape[0]
        total = 0
        for t in range(m):
            a = (keys[t] // pa) % base
            b = (keys[t] // pb) % base
            if a >= b:
                total += a - b + 1
            elif b > a + 1:
                total += b - a - 1
        out_k = np.empty(total, dtype=np.int64)
        out_c = np.empty(total, dtype=np.int64)
        pos = 0
        for t in range(m):
            a = (keys[t] // pa) % base
            b = (keys[t] // pb) % base
            if a >= b:
                lo, hi, sg = b, a, 1
            elif b > a + 1:
                lo, hi, sg = a + 1, b - 1, -1
            else:
                continue
            rest = keys[t] - a * pa - b * pb
            s = a + b
            for k in range(lo, hi + 1):
                out_k[pos] = rest + k * pa + (s - k) * pb
                out_c[pos] = sg * coeffs[t]
                pos += 1
        return out_k, out_c

    @njit(cache=True)
    def _consolidate_nb(keys, coeffs):
        # open addressing with linear probing; keys are nonnegative so -1 marks
        # an empty slot.  Output order follows the table, not the key order.
        m = keys.shape[0]
        size = 1
        while size < 2 * m:
            size <<= 1
        mask = size - 1
        slot_k = np.full(size, -1, dtype=np.int64)
        slot_c = np.zeros(size, dtype=np.int64)
        for t in range(m):
            key = keys[t]
            p = ((key * np.int64(-7046029254386353131)) >> 20) & mask
            while True:
                sk = slot_k[p]
                if sk == key:
                    slot_c[p] += coeffs[t]
                    break
                if sk == -1:
                    slot_k[p] = key
                    slot_c[p] = coeffs[t]
                    break
                p = (p + 1) & mask
        out_k = np.empty(m, dtype=np.int64)
        out_c = np.empty(m, dtype=np.int64)
        w = 0
        for p in range(size):
            if slot_k[p] != -1 and slot_c[p] != 0:
                out_k[w] = slot_k[p]
                out_c[w] = slot_c[p]
                w += 1
        return out_k[:w], out_c[:w]

    @njit(cache=True)
    def _straighten_nb(exps, starts, stops):
        m, n = exps.shape
        signs = np.ones(m, dtype=np.int64)
        out = exps.copy()
        buf = np.empty(n, dtype=np.int64)
        for r in range(m):
            sg = 1
            for b in range(starts.shape[0]):
                s = starts[b]
                e = stops[b]
                size = e - s
                for p in range(size):
                    buf[p] = exps[r, s + p] + (size - 1 - p)
                # insertion sort into decreasing order, counting swaps
                for p in range(1, size):
                    x = buf[p]
                    q = p - 1
                    while q >= 0 and buf[q] < x:
                        buf[q + 1] = buf[q]
                        q -= 1
                        sg = -sg
                    buf[q + 1] = x
                for p in range(size - 1):
                    if buf[p] == buf[p + 1]:
                        sg = 0
                for p in range(size):
                    out[r, s + p] = buf[p] - (size - 1 - p)
                if sg == 0:
                    break
            signs[r] = sg
        return signs, out


_backend = "numba" if HAVE_NUMBA else "numpy"


def backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Switch kernels at runtime; returns the previous backend name."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is unavailable or disabled")
    prev, _backend = _backend, name
    return prev


# -- packing -----------------------------------------------------------------


def packable(n: int, degree: int, max_coeff_abs_sum: int) -> bool:
    """Whether a polynomial fits the int64 packed form without any risk of wrapping."""
    base = degree + 1
    return base**n < KEY_LIMIT and max_coeff_abs_sum < COEFF_LIMIT


def _places(n: int, base: int) -> np.ndarray:
    return np.array([base ** (n - 1 - k) for k in range(n)], dtype=np.int64)


def pack(exps: np.ndarray, base: int) -> np.ndarray:
    n = exps.shape[1]
    return exps @ _places(n, base) if exps.shape[0] else np.zeros(0, dtype=np.int64)


def unpack(keys: np.ndarray, n: int, base: int) -> np.ndarray:
    places = _places(n, base)
    return (keys[:, None] // places[None, :]) % base


def pi_packed(keys: np.ndarray, coeffs: np.ndarray, i: int, n: int, base: int):
    """Apply pi_i (1-indexed) to a packed polynomial.

    Returns arrays with distinct keys and nonzero coefficients.  The numpy
    backend returns keys sorted; the numba backend does not promise an order.
    """
    pa = base ** (n - i)
    pb = base ** (n - i - 1)
    if _backend == "numba":
        k, c = _pi_expand_nb(keys, coeffs, pa, pb, base)
        return _consolidate_nb(k, c)
    k, c = _pi_expand_np(keys, coeffs, pa, pb, base)
    return _consolidate_np(k, c)


def straighten_packed(exps: np.ndarray, starts: np.ndarray, stops: np.ndarray):
    """Row-wise block straightening: (signs in {-1,0,1}, straightened rows)."""
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    if exps.shape[0] == 0:
        return np.zeros(0, dtype=np.int64), exps
    if _backend == "numba":
        return _straighten_nb(exps, starts, stops)
    return _straighten_np(exps, starts, stops)
