"""Permutations of [n] in one-line notation.

Everything is 1-indexed: ``w.oneline[i - 1] == w(i)``.  Products are
composition of functions, ``(u * v)(i) == u(v(i))``, so ``s_i * w`` swaps the
values ``i`` and ``i + 1`` in ``w`` while ``w * s_i`` swaps positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "length",
    "left_descents",
    "right_descents",
    "longest_element",
    "reduced_words",
    "canonical_reduced_word",
    "is_reduced",
    "word_to_permutation",
    "demazure_product",
    "contains_pattern",
    "is_standard_coxeter",
    "bruhat_leq",
    "all_permutations",
    "parse_word",
    "format_word",
]


@dataclass(frozen=True, order=True)
class Permutation:
    oneline: tuple[int, ...]

    def __post_init__(self):
        t = tuple(int(v) for v in self.oneline)
        if sorted(t) != list(range(1, len(t) + 1)):
            raise ValueError(f"not a permutation of [{len(t)}]: {t}")
        object.__setattr__(self, "oneline", t)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, i: int, n: int) -> "Permutation":
        """The simple transposition s_i = (i i+1) in S_n."""
        if not 1 <= i < n:
            raise ValueError(f"s_{i} is not a generator of S_{n}")
        t = list(range(1, n + 1))
        t[i - 1], t[i] = t[i], t[i - 1]
        return cls(tuple(t))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "Permutation":
        t = list(range(1, n + 1))
        t[i - 1], t[j - 1] = t[j - 1], t[i - 1]
        return cls(tuple(t))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"7,6,5,4,3,2,9,1,8"``; the compact ``"765432918"`` is accepted when n <= 9."""
        text = text.strip()
        if "," in text or " " in text:
            parts = [p for p in text.replace(" ", ",").split(",") if p]
        else:
            parts = list(text)
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad permutation {text!r}: {exc}") from None

    @property
    def n(self) -> int:
        return len(self.oneline)

    def __call__(self, i: int) -> int:
        return self.oneline[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("permutations of different sizes")
        return Permutation(tuple(self.oneline[v - 1] for v in other.oneline))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.oneline, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def length(self) -> int:
        return length(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.oneline, 1))

    def __str__(self) -> str:
        return ",".join(map(str, self.oneline))

    def compact(self) -> str:
        """Concatenated one-line notation, e.g. ``765432918``."""
        sep = "" if self.n <= 9 else ","
        return sep.join(map(str, self.oneline))


def all_permutations(n: int) -> Iterator[Permutation]:
    from itertools import permutations

    for p in permutations(range(1, n + 1)):
        yield Permutation(p)


def length(w: Permutation) -> int:
    """Number of inversions #{i<j : w(i)>w(j)}."""
    t = w.oneline
    return sum(1 for a, b in combinations(t, 2) if a > b)


def left_descents(w: Permutation) -> frozenset[int]:
    """J(w): the j with j+1 to the left of j in one-line notation."""
    pos = w.inverse().oneline
    return frozenset(j for j in range(1, w.n) if pos[j - 1] > pos[j])


def right_descents(w: Permutation) -> frozenset[int]:
    t = w.oneline
    return frozenset(i for i in range(1, w.n) if t[i - 1] > t[i])


def _runs(indices: Iterable[int]) -> list[list[int]]:
    runs: list[list[int]] = []
    for i in sorted(set(indices)):
        if runs and runs[-1][-1] == i - 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    return runs


def longest_element(I: Iterable[int], n: int) -> Permutation:
    """w0(I): reverse every maximal run of consecutive positions joined by I."""
    t = list(range(1, n + 1))
    for run in _runs(I):
        if run[0] < 1 or run[-1] > n - 1:
            raise ValueError(f"index set {sorted(I)} not inside [{n - 1}]")
        lo, hi = run[0] - 1, run[-1] + 1
        t[lo:hi] = reversed(t[lo:hi])
    return Permutation(tuple(t))


def _swap_values(t: tuple[int, ...], j: int) -> tuple[int, ...]:
    # s_j * w: exchange the values j and j+1
    return tuple(j + 1 if v == j else j if v == j + 1 else v for v in t)


def _left_desc(t: tuple[int, ...]) -> list[int]:
    pos = [0] * len(t)
    for i, v in enumerate(t):
        pos[v - 1] = i
    return [j for j in range(1, len(t)) if pos[j - 1] > pos[j]]


def canonical_reduced_word(w: Permutation) -> tuple[int, ...]:
    """One fixed reduced word: repeatedly strip the largest left descent."""
    t = w.oneline
    word = []
    while True:
        d = _left_desc(t)
        if not d:
            return tuple(word)
        j = d[-1]
        word.append(j)
        t = _swap_values(t, j)


def reduced_words(w: Permutation) -> Iterator[tuple[int, ...]]:
    """Lazily yield every reduced word of w exactly once.

    The first letter ranges over J(w) in decreasing order, so the first word
    yielded is :func:`canonical_reduced_word`.
    """

    def rec(t: tuple[int, ...], prefix: list[int]):
        d = _left_desc(t)
        if not d:
            yield tuple(prefix)
            return
        for j in reversed(d):
            prefix.append(j)
            yield from rec(_swap_values(t, j), prefix)
            prefix.pop()

    yield from rec(w.oneline, [])


@lru_cache(maxsize=None)
def _count_reduced(t: tuple[int, ...]) -> int:
    d = _left_desc(t)
    if not d:
        return 1
    return sum(_count_reduced(_swap_values(t, j)) for j in d)


def count_reduced_words(w: Permutation) -> int:
    return _count_reduced(w.oneline)


def word_to_permutation(word: Sequence[int], n: int) -> Permutation:
    """The product s_{i1} s_{i2} ... as an element of S_n (no reducedness check)."""
    t = list(range(1, n + 1))
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"letter {i} out of range for S_{n}")
        t[i - 1], t[i] = t[i], t[i - 1]
    return Permutation(tuple(t))


def is_reduced(word: Sequence[int], n: int) -> bool:
    return length(word_to_permutation(word, n)) == len(word)


def demazure_product(word: Sequence[int], n: int) -> Permutation:
    """Fold w * s_i, with w * s_i = w whenever the length would drop."""
    t = list(range(1, n + 1))
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"letter {i} out of range for S_{n}")
        if t[i - 1] < t[i]:
            t[i - 1], t[i] = t[i], t[i - 1]
    return Permutation(tuple(t))


def _pattern_of(values: Sequence[int]) -> tuple[int, ...]:
    order = sorted(range(len(values)), key=lambda k: values[k])
    out = [0] * len(values)
    for rank, k in enumerate(order, 1):
        out[k] = rank
    return tuple(out)


def contains_pattern(w: Permutation | Sequence[int], p: Permutation | Sequence[int]) -> bool:
    """True iff some subsequence of w is order-isomorphic to p."""
    wt = w.oneline if isinstance(w, Permutation) else tuple(w)
    pt = p.oneline if isinstance(p, Permutation) else tuple(p)
    k = len(pt)
    if k > len(wt):
        return False
    target = _pattern_of(pt)
    return any(_pattern_of([wt[i] for i in idx]) == target for idx in combinations(range(len(wt)), k))


_P321 = (3, 2, 1)
_P3412 = (3, 4, 1, 2)


def is_standard_coxeter(u: Permutation, method: str = "word") -> tuple[int, ...] | None:
    """A reduced word of u with pairwise distinct letters, or None.

    ``method="word"`` takes one reduced word and tests its letters for
    repeats (commutations keep the multiset, braid moves need a repeat).
    ``method="pattern"`` decides by avoidance of 321 and 3412.
    """
    word = canonical_reduced_word(u)
    if method == "word":
        return word if len(set(word)) == len(word) else None
    if method == "pattern":
        if contains_pattern(u, _P321) or contains_pattern(u, _P3412):
            return None
        return word
    raise ValueError(f"unknown method {method!r}")


def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    """Classical strong Bruhat order (identity minimal), tableau criterion."""
    if u.n != v.n:
        raise ValueError("permutations of different sizes")
    a, b = u.oneline, v.oneline
    for k in range(1, u.n):
        sa, sb = sorted(a[:k]), sorted(b[:k])
        if any(x > y for x, y in zip(sa, sb)):
            return False
    return True


def parse_word(text: str) -> tuple[int, ...]:
    """Parse ``"s8 s1 s2"`` or ``"8,1,2"``; the empty string is the empty word."""
    toks = text.replace(",", " ").split()
    out = []
    for tok in toks:
        tok = tok.strip()
        if tok[:1] in ("s", "S"):
            tok = tok[1:]
        try:
            out.append(int(tok))
        except ValueError:
            raise ValueError(f"bad generator token {tok!r}") from None
    return tuple(out)


def format_word(word: Sequence[int], style: str = "comma") -> str:
    if style == "s":
        return " ".join(f"s{i}" for i in word)
    return ",".join(map(str, word))
