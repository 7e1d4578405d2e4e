"""Isobaric divided differences and key polynomials.

Three independent routes to the key polynomial of a weak composition:

* :func:`key_demazure` applies pi_w to x^lambda,
* :func:`key_kohnert` sums Kohnert diagram weights,
* :func:`tab_support` lists the contents of flagged row-distinct fillings
  (support only, no coefficients).
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import deque
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .compositions import Composition
from .poly import Exponent, SparsePoly
from .symgroup import Permutation, canonical_reduced_word

__all__ = [
    "demazure_pi",
    "pi_along",
    "sorting_permutation",
    "key_demazure",
    "key_kohnert",
    "kohnert_diagrams",
    "tab_support",
    "support_nonzero",
    "key_polynomial",
    "clear_caches",
]


# -- pi_i ----------------------------------------------------------------------


def _pi_python(f: SparsePoly, i: int) -> SparsePoly:
    out: dict[Exponent, int] = {}
    for e, c in f.items():
        a, b = e[i - 1], e[i]
        if a >= b:
            lo, hi, sg = b, a, 1
        elif b > a + 1:
            lo, hi, sg = a + 1, b - 1, -1
        else:
            continue
        s = a + b
        l = list(e)
        for k in range(lo, hi + 1):
            l[i - 1], l[i] = k, s - k
            t = tuple(l)
            v = out.get(t, 0) + sg * c
            if v:
                out[t] = v
            else:
                del out[t]
    return SparsePoly._raw(f.n, out)


def _check_index(i: int, n: int):
    if not 1 <= i <= n - 1:
        raise ValueError(f"pi_{i} undefined in {n} variables")


def _abs_sum_small(coeffs: np.ndarray) -> bool:
    # float sum avoids int64 overflow in the check itself
    return float(np.abs(coeffs.astype(np.float64)).sum()) < _kernels.COEFF_LIMIT / 2


def pi_along(f: SparsePoly, word: Sequence[int], use_kernels: bool = True) -> SparsePoly:
    """pi_{i1} pi_{i2} ... pi_{il} f, so the last letter acts first."""
    n = f.n
    for i in word:
        _check_index(i, n)
    if not word or f.is_zero():
        return f
    deg = f.total_degree()
    abs_sum = sum(abs(c) for _, c in f.items())
    if not use_kernels or not _kernels.packable(n, deg, 2 * abs_sum):
        return _pi_along_python(f, word)
    base = deg + 1
    exps, coeffs = f.to_arrays()
    keys = _kernels.pack(exps, base)
    rest = list(reversed(word))
    while rest:
        if not _abs_sum_small(coeffs):
            # finish exactly in Python ints
            g = SparsePoly.from_arrays(_kernels.unpack(keys, n, base), coeffs)
            return _pi_along_python(g, list(reversed(rest)))
        i = rest.pop(0)
        keys, coeffs = _kernels.pi_packed(keys, coeffs, i, n, base)
        if keys.shape[0] == 0:
            return SparsePoly.zero(n)
    return SparsePoly.from_arrays(_kernels.unpack(keys, n, base), coeffs)


def _pi_along_python(f: SparsePoly, word: Sequence[int]) -> SparsePoly:
    for i in reversed(word):
        f = _pi_python(f, i)
        if f.is_zero():
            break
    return f


def demazure_pi(f: SparsePoly, i: int) -> SparsePoly:
    """(x_i f - x_{i+1} s_i f) / (x_i - x_{i+1}), computed term by term."""
    _check_index(i, f.n)
    return _pi_python(f, i)


# -- key polynomials -----------------------------------------------------------


def sorting_permutation(alpha: Sequence[int]) -> tuple[Composition, Permutation]:
    """(lambda, w) with w lambda = alpha and w of minimal length.

    Equal parts of alpha are matched to positions of lambda left to right.
    """
    n = len(alpha)
    order = sorted(range(n), key=lambda k: (-alpha[k], k))
    lam = tuple(alpha[k] for k in order)
    # w^{-1}(i) is the slot of lambda that alpha_i came from
    winv = [0] * n
    for slot, k in enumerate(order, 1):
        winv[k] = slot
    return lam, Permutation(tuple(winv)).inverse()


def key_demazure(alpha: Sequence[int]) -> SparsePoly:
    alpha = tuple(int(a) for a in alpha)
    lam, w = sorting_permutation(alpha)
    return pi_along(SparsePoly.monomial(lam), canonical_reduced_word(w))


def kohnert_diagrams(alpha: Sequence[int]) -> set[tuple[int, ...]]:
    """Koh(alpha) as tuples of row bitmasks (bit c-1 set when column c is filled)."""
    alpha = tuple(alpha)
    height = max(alpha, default=0)
    start = tuple(
        sum(1 << (c - 1) for c, a in enumerate(alpha, 1) if a >= r) for r in range(1, height + 1)
    )
    seen = {start}
    queue = deque([start])
    n = len(alpha)
    while queue:
        d = queue.popleft()
        for c in range(2, n + 1):
            bit = 1 << (c - 1)
            top = -1
            for r in range(len(d) - 1, -1, -1):
                if d[r] & bit:
                    top = r
                    break
            if top < 0:
                continue
            row = d[top]
            dest = c - 1
            while dest >= 1 and row & (1 << (dest - 1)):
                dest -= 1
            if dest == 0:
                continue
            nd = list(d)
            nd[top] = (row & ~bit) | (1 << (dest - 1))
            nd = tuple(nd)
            if nd not in seen:
                seen.add(nd)
                queue.append(nd)
    return seen


def _diagram_weight(d: tuple[int, ...], n: int) -> Exponent:
    return tuple(sum((row >> c) & 1 for row in d) for c in range(n))


def key_kohnert(alpha: Sequence[int]) -> SparsePoly:
    alpha = tuple(int(a) for a in alpha)
    n = len(alpha)
    terms: dict[Exponent, int] = {}
    for d in kohnert_diagrams(alpha):
        e = _diagram_weight(d, n)
        terms[e] = terms.get(e, 0) + 1
    return SparsePoly._raw(n, terms)


# -- flagged fillings ------------------------------------------------------------


def _row_columns(alpha: Sequence[int]) -> list[tuple[int, ...]]:
    return [
        tuple(c for c, a in enumerate(alpha, 1) if a >= r) for r in range(1, max(alpha, default=0) + 1)
    ]


def _row_label_sets(cols: tuple[int, ...]) -> list[tuple[int, ...]]:
    # a label set fits a row iff, both sorted, label k <= column k for every k
    k = len(cols)
    return [S for S in combinations(range(1, cols[-1] + 1), k) if all(s <= c for s, c in zip(S, cols))]


def tab_support(alpha: Sequence[int]) -> set[Composition]:
    """Contents of all T in Tab(alpha); rows are filled independently."""
    n = len(alpha)
    current: set[Composition] = {(0,) * n}
    for cols in _row_columns(alpha):
        options = _row_label_sets(cols)
        nxt = set()
        for beta in current:
            for S in options:
                b = list(beta)
                for s in S:
                    b[s - 1] += 1
                nxt.add(tuple(b))
        current = nxt
    return current


def support_nonzero(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """Whether some T in Tab(alpha) has content beta, by depth-first search over rows."""
    alpha = tuple(alpha)
    beta = tuple(beta)
    if len(alpha) != len(beta) or sum(alpha) != sum(beta) or any(b < 0 for b in beta):
        return False
    rows = _row_columns(alpha)
    if not rows:
        return True
    options = [_row_label_sets(c) for c in rows]
    dead: set[tuple[int, tuple[int, ...]]] = set()

    def rec(r: int, need: tuple[int, ...]) -> bool:
        if r == len(rows):
            return not any(need)
        if (r, need) in dead:
            return False
        # every remaining label value must still fit: label v appears at most once per row
        remaining = len(rows) - r
        if any(v > remaining for v in need):
            dead.add((r, need))
            return False
        for S in options[r]:
            if all(need[s - 1] > 0 for s in S):
                l = list(need)
                for s in S:
                    l[s - 1] -= 1
                if rec(r + 1, tuple(l)):
                    return True
        dead.add((r, need))
        return False

    return rec(0, beta)


# -- cached entry point ----------------------------------------------------------

_ENGINES = {"demazure": key_demazure, "kohnert": key_kohnert}


def _disk_path(alpha: Composition) -> Path | None:
    root = os.environ.get("SPHERICAL_CACHE_DIR")
    if not root:
        return None
    text = ",".join(map(str, alpha))
    h = hashlib.sha256(("kappa:" + text).encode()).hexdigest()
    return Path(root) / f"{h}.json"


@lru_cache(maxsize=4096)
def _key_cached(alpha: Composition, engine: str) -> SparsePoly:
    path = _disk_path(alpha)
    if path is not None and path.exists():
        try:
            obj = json.loads(path.read_text())
            if obj.get("alpha") == list(alpha):
                return SparsePoly.from_json_obj(obj["terms"], len(alpha))
        except (OSError, ValueError, KeyError):
            pass
    f = _ENGINES[engine](alpha)
    if path is not None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".{os.getpid()}.tmp")
            tmp.write_text(json.dumps({"alpha": list(alpha), "terms": f.to_json_obj()}))
            os.replace(tmp, path)
        except OSError:
            pass
    return f


def key_polynomial(alpha: Iterable[int], engine: str = "demazure") -> SparsePoly:
    """kappa_alpha by the chosen engine, memoized in-process and optionally on disk."""
    if engine not in _ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {sorted(_ENGINES)}")
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative entry in {alpha}")
    return _key_cached(alpha, engine)


def clear_caches():
    _key_cached.cache_clear()
