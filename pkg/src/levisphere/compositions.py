"""Weak compositions, block structures and the t_{ij} moves.

Compositions are plain tuples of ints.  A :class:`BlockStructure` records the
cut points D = [n-1] - I and the blocks A_1, ..., A_{k+1} they induce.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .symgroup import Permutation

Composition = tuple[int, ...]

__all__ = [
    "Composition",
    "BlockStructure",
    "act",
    "t_transform",
    "t_transform_signed",
    "raises",
    "dominance_leq",
    "contains_comp_pattern",
    "parse_composition",
    "format_composition",
    "parse_split_partition",
    "format_split_partition",
    "is_split_partition",
    "partitions_in_box",
]


@dataclass(frozen=True)
class BlockStructure:
    n: int
    D: tuple[int, ...]

    def __post_init__(self):
        d = tuple(sorted(set(int(x) for x in self.D)))
        if d and d[-1] == self.n:
            d = d[:-1]  # a trailing n is the end of the last block, so it carries no information
        for x in d:
            if not 1 <= x <= self.n - 1:
                raise ValueError(f"D entry {x} outside [1, {self.n - 1}]")
        object.__setattr__(self, "D", d)

    @classmethod
    def from_I(cls, I: Iterable[int], n: int) -> "BlockStructure":
        I = set(I)
        for i in I:
            if not 1 <= i <= n - 1:
                raise ValueError(f"I entry {i} outside [1, {n - 1}]")
        return cls(n, tuple(d for d in range(1, n) if d not in I))

    @classmethod
    def from_D(cls, D: Iterable[int], n: int) -> "BlockStructure":
        return cls(n, tuple(D))

    @classmethod
    def single_block(cls, n: int) -> "BlockStructure":
        return cls(n, ())

    @cached_property
    def I(self) -> frozenset[int]:
        return frozenset(range(1, self.n)) - set(self.D)

    @cached_property
    def cuts(self) -> tuple[int, ...]:
        """d_0 = 0, d_1, ..., d_k, d_{k+1} = n."""
        return (0,) + self.D + (self.n,)

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        c = self.cuts
        return tuple(tuple(range(c[t] + 1, c[t + 1] + 1)) for t in range(len(c) - 1))

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @cached_property
    def _block_of(self) -> tuple[int, ...]:
        out = []
        for t, b in enumerate(self.blocks):
            out.extend([t] * len(b))
        return tuple(out)

    def block_of(self, i: int) -> int:
        return self._block_of[i - 1]

    def same_block(self, i: int, j: int) -> bool:
        return self._block_of[i - 1] == self._block_of[j - 1]

    def pairs(self) -> Iterable[tuple[int, int]]:
        """All i < j lying in a common block."""
        for b in self.blocks:
            yield from combinations(b, 2)

    def split(self, alpha: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(alpha[i - 1] for i in b) for b in self.blocks)

    def __str__(self) -> str:
        return ",".join(map(str, self.D + (self.n,)))


def act(w: Permutation, alpha: Sequence[int]) -> Composition:
    """(w alpha)_i = alpha_{w^{-1}(i)}."""
    if len(alpha) != w.n:
        raise ValueError("length mismatch")
    out = [0] * w.n
    for i, v in enumerate(w.oneline):
        out[v - 1] = alpha[i]
    return tuple(out)


def t_transform_signed(beta: Sequence[int], i: int, j: int) -> Composition:
    """t_{ij} without the sign check; used when walking the full orbit."""
    if not i < j:
        raise ValueError("t_{ij} needs i < j")
    b = list(beta)
    bi, bj = b[i - 1], b[j - 1]
    b[i - 1] = bj - (j - i)
    b[j - 1] = bi + (j - i)
    return tuple(b)


def t_transform(beta: Sequence[int], i: int, j: int) -> Composition:
    """t_{ij}: entries i, j become beta_j - (j-i), beta_i + (j-i)."""
    out = t_transform_signed(beta, i, j)
    if out[i - 1] < 0:
        raise ValueError(f"t_{{{i}{j}}} of {tuple(beta)} leaves Comp_n")
    return out


def raises(beta: Sequence[int], i: int, j: int) -> bool:
    """Whether t_{ij} beta lies strictly above beta."""
    if not i < j:
        raise ValueError("need i < j")
    a, b = beta[i - 1] - i, beta[j - 1] - j
    if a == b:
        raise ValueError(f"beta_{i} - {i} == beta_{j} - {j}: {tuple(beta)} is not an orbit element")
    return a > b


def dominance_leq(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    if len(alpha) != len(beta):
        raise ValueError("length mismatch")
    if sum(alpha) != sum(beta):
        raise ValueError("dominance needs equal total weight")
    sa = sb = 0
    for a, b in zip(alpha, beta):
        sa += a
        sb += b
        if sa > sb:
            return False
    return True


def contains_comp_pattern(alpha: Sequence[int], pat: Sequence[int]) -> bool:
    """Order-isomorphic occurrence whose pairwise gaps are at least the pattern's."""
    k = len(pat)
    n = len(alpha)
    if k > n:
        return False

    def ok(chosen: list[int], s: int, idx: int) -> bool:
        v = alpha[idx]
        for t, jt in enumerate(chosen):
            a = alpha[jt]
            if (a <= v) != (pat[t] <= pat[s]) or (v <= a) != (pat[s] <= pat[t]):
                return False
            if abs(a - v) < abs(pat[t] - pat[s]):
                return False
        return True

    def rec(chosen: list[int], start: int) -> bool:
        s = len(chosen)
        if s == k:
            return True
        for idx in range(start, n - (k - s) + 1):
            if ok(chosen, s, idx):
                chosen.append(idx)
                if rec(chosen, idx + 1):
                    return True
                chosen.pop()
        return False

    return rec([], 0)


def parse_composition(text: str, n: int | None = None) -> Composition:
    """``"2,9,8,7"``; a comma-free string of digits is read digit by digit."""
    text = text.strip()
    if not text:
        parts: list[str] = []
    elif "," in text or " " in text:
        parts = [p for p in text.replace(" ", ",").split(",") if p]
    else:
        parts = list(text)
    try:
        out = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"bad composition {text!r}") from None
    if any(v < 0 for v in out):
        raise ValueError(f"negative entry in {text!r}")
    if n is not None and len(out) != n:
        raise ValueError(f"composition {text!r} has {len(out)} entries, expected {n}")
    return out


def format_composition(alpha: Sequence[int]) -> str:
    return ",".join(map(str, alpha))


def is_split_partition(gamma: Sequence[int], blocks: BlockStructure) -> bool:
    return all(
        all(x >= y for x, y in zip(part, part[1:])) and all(x >= 0 for x in part)
        for part in blocks.split(gamma)
    )


def parse_split_partition(text: str, blocks: BlockStructure | None = None) -> Composition:
    """Parse ``"9|7,6,5,5,5,4|2|2"`` or the compact ``"9|765554|2|2"``.

    A block written without commas is read one digit per part unless the
    block has size one.  Without ``blocks`` a single segment is read as a
    plain composition.
    """
    segs = text.strip().split("|")
    if blocks is not None and len(segs) != len(blocks.sizes):
        if len(segs) == 1:
            alpha = parse_composition(segs[0], blocks.n)
            if not is_split_partition(alpha, blocks):
                raise ValueError(f"{text!r} is not weakly decreasing in each block")
            return alpha
        raise ValueError(f"{text!r} has {len(segs)} blocks, expected {len(blocks.sizes)}")
    out: list[int] = []
    for t, seg in enumerate(segs):
        seg = seg.strip()
        size = blocks.sizes[t] if blocks is not None else None
        if "," in seg:
            part = [int(p) for p in seg.split(",") if p]
        elif size == 1:
            part = [int(seg)]
        else:
            part = [int(c) for c in seg]
        if size is not None and len(part) != size:
            raise ValueError(f"block {t + 1} of {text!r} has {len(part)} parts, expected {size}")
        if any(x < y for x, y in zip(part, part[1:])):
            raise ValueError(f"block {t + 1} of {text!r} is not weakly decreasing")
        out.extend(part)
    return tuple(out)


def format_split_partition(gamma: Sequence[int], blocks: BlockStructure) -> str:
    parts = blocks.split(gamma)
    if all(0 <= v <= 9 for v in gamma):
        return "|".join("".join(map(str, p)) for p in parts)
    return "|".join(",".join(map(str, p)) for p in parts)


def partitions_in_box(n_parts: int, max_part: int) -> list[Composition]:
    """All weakly decreasing length-n_parts tuples with entries in [0, max_part]."""
    out: list[Composition] = []

    def rec(prefix: list[int], cap: int):
        if len(prefix) == n_parts:
            out.append(tuple(prefix))
            return
        for v in range(cap, -1, -1):
            prefix.append(v)
            rec(prefix, v)
            prefix.pop()

    rec([], max_part)
    return out
