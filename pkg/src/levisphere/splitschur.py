"""D-Schur polynomials and term-wise expansion of split-symmetric polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .compositions import (
    BlockStructure,
    Composition,
    format_split_partition,
    is_split_partition,
    parse_split_partition,
)
from .poly import Exponent, SparsePoly

__all__ = [
    "straighten",
    "straighten_many",
    "alternant",
    "schur_poly",
    "dschur_poly",
    "DSchurExpansion",
    "dschur_expand",
    "is_split_symmetric",
    "is_multiplicity_free",
]


def straighten(beta: Sequence[int], blocks: BlockStructure) -> tuple[int, Composition] | None:
    """pi_{w0(I)} x^beta as (sign, gamma) meaning sign * s_gamma, or None when it vanishes."""
    if len(beta) != blocks.n:
        raise ValueError("length mismatch")
    sign = 1
    out: list[int] = []
    for part in blocks.split(beta):
        m = len(part)
        v = [x + (m - 1 - k) for k, x in enumerate(part)]
        # insertion sort into decreasing order, one sign flip per adjacent swap
        for p in range(1, m):
            x = v[p]
            q = p - 1
            while q >= 0 and v[q] < x:
                v[q + 1] = v[q]
                q -= 1
                sign = -sign
            v[q + 1] = x
        if any(v[k] == v[k + 1] for k in range(m - 1)):
            return None
        out.extend(v[k] - (m - 1 - k) for k in range(m))
    return sign, tuple(out)


def _bounds(blocks: BlockStructure) -> tuple[np.ndarray, np.ndarray]:
    c = blocks.cuts
    return np.array(c[:-1], dtype=np.int64), np.array(c[1:], dtype=np.int64)


def straighten_many(exps: np.ndarray, blocks: BlockStructure) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`straighten` over the rows of an (m, n) exponent array.

    Returns (signs, gammas); rows with sign 0 vanish and their gamma is junk.
    """
    starts, stops = _bounds(blocks)
    return _kernels.straighten_packed(exps, starts, stops)


# -- Schur polynomials via alternants ---------------------------------------------


def _perm_sign(p: Sequence[int]) -> int:
    s = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, L = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            L += 1
        if L % 2 == 0:
            s = -s
    return s


def alternant(exps: Sequence[int]) -> SparsePoly:
    """a_e(y_1..y_m) = sum over sigma of sgn(sigma) * prod_k y_{sigma(k)}^{e_k}."""
    m = len(exps)
    terms: dict[Exponent, int] = {}
    for p in permutations(range(m)):
        e = [0] * m
        for k, tgt in enumerate(p):
            e[tgt] = exps[k]
        t = tuple(e)
        terms[t] = terms.get(t, 0) + _perm_sign(p)
    return SparsePoly(m, terms)


def _divide_difference(f: SparsePoly, j: int, k: int) -> SparsePoly:
    """Exact quotient f / (y_j - y_k); raises ArithmeticError on a remainder."""
    n = f.n
    by_deg: dict[int, dict[Exponent, int]] = {}
    for e, c in f.items():
        d = e[j - 1]
        rest = e[: j - 1] + (0,) + e[j:]
        by_deg.setdefault(d, {})[rest] = c
    if not by_deg:
        return f
    top = max(by_deg)
    q: dict[int, SparsePoly] = {}
    # f_d = q_{d-1} - y_k q_d, solved downward from the top degree
    carry = SparsePoly.zero(n)
    for d in range(top, 0, -1):
        fd = SparsePoly._raw(n, by_deg.get(d, {}))
        qd1 = fd + carry.times_variable(k)
        q[d - 1] = qd1
        carry = qd1
    f0 = SparsePoly._raw(n, by_deg.get(0, {}))
    if not (f0 + carry.times_variable(k)).is_zero():
        raise ArithmeticError(f"remainder dividing by (y{j} - y{k})")
    out: dict[Exponent, int] = {}
    for d, qd in q.items():
        for e, c in qd.items():
            l = list(e)
            l[j - 1] += d
            out[tuple(l)] = c
    return SparsePoly._raw(n, out)


def schur_poly(mu: Sequence[int]) -> SparsePoly:
    """s_mu(y_1..y_m) as a_{mu+delta} / a_delta, divided out one factor at a time."""
    m = len(mu)
    if m == 0:
        return SparsePoly.one(0)
    if any(mu[k] < mu[k + 1] for k in range(m - 1)) or (m and mu[-1] < 0):
        raise ValueError(f"{tuple(mu)} is not a partition")
    f = alternant([mu[k] + m - 1 - k for k in range(m)])
    for j in range(1, m + 1):
        for k in range(j + 1, m + 1):
            f = _divide_difference(f, j, k)
    return f


def _embed(f: SparsePoly, offset: int, n: int) -> SparsePoly:
    m = f.n
    return SparsePoly._raw(n, {(0,) * offset + e + (0,) * (n - offset - m): c for e, c in f.items()})


def dschur_poly(gamma: Sequence[int], blocks: BlockStructure) -> SparsePoly:
    """Product over blocks of the Schur polynomial in that block's variables."""
    gamma = tuple(gamma)
    if len(gamma) != blocks.n or not is_split_partition(gamma, blocks):
        raise ValueError(f"{gamma} is not a split partition for D = {blocks.D}")
    out = SparsePoly.one(blocks.n)
    for part, off in zip(blocks.split(gamma), blocks.cuts):
        out = out * _embed(schur_poly(part), off, blocks.n)
    return out


# -- expansions ---------------------------------------------------------------------


@dataclass
class DSchurExpansion:
    blocks: BlockStructure
    coeffs: dict[Composition, int] = field(default_factory=dict)

    def coeff(self, gamma: Sequence[int] | str) -> int:
        if isinstance(gamma, str):
            gamma = parse_split_partition(gamma, self.blocks)
        return self.coeffs.get(tuple(gamma), 0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def max_coeff(self) -> int:
        return max(self.coeffs.values(), default=0)

    def reconstruct(self) -> SparsePoly:
        out = SparsePoly.zero(self.blocks.n)
        for g, c in self.coeffs.items():
            out = out + dschur_poly(g, self.blocks) * c
        return out

    def to_json_obj(self) -> list[dict]:
        return [
            {"gamma": format_split_partition(g, self.blocks), "coeff": c}
            for g, c in sorted(self.coeffs.items(), reverse=True)
        ]

    @classmethod
    def from_json_obj(cls, obj: list[dict], blocks: BlockStructure) -> "DSchurExpansion":
        coeffs: dict[Composition, int] = {}
        for item in obj:
            g = parse_split_partition(item["gamma"], blocks)
            coeffs[g] = coeffs.get(g, 0) + int(item["coeff"])
        return cls(blocks, {g: c for g, c in coeffs.items() if c})


def _expand_python(f: SparsePoly, blocks: BlockStructure) -> dict[Composition, int]:
    acc: dict[Composition, int] = {}
    for e, c in f.items():
        r = straighten(e, blocks)
        if r is not None:
            sg, g = r
            acc[g] = acc.get(g, 0) + sg * c
    return acc


def dschur_expand(f: SparsePoly, blocks: BlockStructure, use_kernels: bool = True) -> DSchurExpansion:
    """Expansion of pi_{w0(I)} f in D-Schur polynomials (equal to f when f is split-symmetric)."""
    if f.n != blocks.n:
        raise ValueError("polynomial and block structure disagree on n")
    if not use_kernels or len(f) < 64 or f.max_abs_coeff() >= _kernels.COEFF_LIMIT // max(len(f), 1):
        acc = _expand_python(f, blocks)
    else:
        exps, coeffs = f.to_arrays()
        signs, gammas = straighten_many(exps, blocks)
        keep = signs != 0
        acc = {}
        for row, v in zip(gammas[keep].tolist(), (signs[keep] * coeffs[keep]).tolist()):
            g = tuple(row)
            acc[g] = acc.get(g, 0) + v
    return DSchurExpansion(blocks, {g: c for g, c in acc.items() if c})


def is_split_symmetric(f: SparsePoly, blocks: BlockStructure) -> bool:
    return all(f.swap(i) == f for i in sorted(blocks.I))


def is_multiplicity_free(e: DSchurExpansion | Mapping[Composition, int]) -> bool:
    coeffs = e.coeffs if isinstance(e, DSchurExpansion) else e
    return all(c in (0, 1) for c in coeffs.values())
