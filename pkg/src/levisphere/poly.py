"""Sparse integer polynomials in x_1..x_n.

A :class:`SparsePoly` maps exponent tuples to nonzero Python ints, so
arithmetic is exact and never wraps.  The packed numpy form used by the
kernels is produced by :meth:`SparsePoly.to_arrays`.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]

__all__ = ["SparsePoly", "Exponent"]


class SparsePoly:
    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        self.n = int(n)
        acc: dict[Exponent, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != self.n:
                raise ValueError(f"exponent {e} has wrong length for n={self.n}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent {e}")
            acc[e] = acc.get(e, 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Exponent, int]) -> "SparsePoly":
        # trusted constructor: exponents valid, no zero coefficients
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, n: int) -> "SparsePoly":
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> "SparsePoly":
        return cls._raw(n, {(0,) * n: 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "SparsePoly":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def variable(cls, i: int, n: int) -> "SparsePoly":
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): 1})

    # -- container protocol -------------------------------------------------
    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self._terms.items())

    def items(self):
        return self._terms.items()

    def coeff(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def support(self) -> frozenset[Exponent]:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self._terms.values()), default=0)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "SparsePoly"):
        if self.n != other.n:
            raise ValueError(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other):
        if isinstance(other, int):
            other = SparsePoly.one(self.n) * other
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return SparsePoly.zero(self.n)
            return SparsePoly._raw(self.n, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly._raw(self.n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SparsePoly.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self == SparsePoly.one(self.n) * other
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- variable permutations ---------------------------------------------
    def swap(self, i: int) -> "SparsePoly":
        """f with x_i and x_{i+1} exchanged."""
        out = {}
        for e, c in self._terms.items():
            l = list(e)
            l[i - 1], l[i] = l[i], l[i - 1]
            out[tuple(l)] = c
        return SparsePoly._raw(self.n, out)

    def times_variable(self, i: int) -> "SparsePoly":
        out = {}
        for e, c in self._terms.items():
            l = list(e)
            l[i - 1] += 1
            out[tuple(l)] = c
        return SparsePoly._raw(self.n, out)

    # -- packed form ---------------------------------------------------------
    def to_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(exponents (m, n) int64, coefficients (m,) int64), lex-sorted."""
        keys = sorted(self._terms)
        exps = np.array(keys, dtype=np.int64).reshape(len(keys), self.n)
        coeffs = np.array([self._terms[k] for k in keys], dtype=np.int64)
        return exps, coeffs

    @classmethod
    def from_arrays(cls, exps: np.ndarray, coeffs: np.ndarray) -> "SparsePoly":
        n = exps.shape[1]
        coeffs = np.asarray(coeffs)
        if (coeffs == 0).any():
            keep = coeffs != 0
            exps, coeffs = exps[keep], coeffs[keep]
        # tolist() yields Python ints, so later arithmetic stays exact
        return cls._raw(n, dict(zip(map(tuple, exps.tolist()), coeffs.tolist())))

    # -- text ---------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self._terms.items())

    def to_json_obj(self) -> list[dict]:
        return [{"exp": list(e), "coeff": c} for e, c in self.sorted_terms()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: list[dict], n: int | None = None) -> "SparsePoly":
        if not obj:
            if n is None:
                raise ValueError("cannot infer n from an empty polynomial")
            return cls.zero(n)
        n = len(obj[0]["exp"]) if n is None else n
        return cls(n, ((tuple(t["exp"]), t["coeff"]) for t in obj))

    @classmethod
    def from_json(cls, text: str, n: int | None = None) -> "SparsePoly":
        return cls.from_json_obj(json.loads(text), n)

    def __repr__(self) -> str:
        if not self._terms:
            return f"SparsePoly(n={self.n}, 0)"
        shown = " + ".join(_fmt_term(e, c) for e, c in self.sorted_terms()[:8])
        more = "" if len(self._terms) <= 8 else f" + ... ({len(self._terms)} terms)"
        return f"SparsePoly(n={self.n}, {shown}{more})"


def _fmt_term(e: Exponent, c: int) -> str:
    mono = "*".join(f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e, 1) if a)
    if not mono:
        return str(c)
    return mono if c == 1 else f"{c}*{mono}"
