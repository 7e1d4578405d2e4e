"""The orbit poset of a split partition under t_{ij} moves, and its support subposets.

For a composition beta and i < j in one block put v_i = beta_i - i.  A move
t_{ij} swaps v_i and v_j, so the orbit of gamma is the set of block-wise
rearrangements of v(gamma).  Within a block the rank of beta is the number
of pairs i < j with v_i < v_j; gamma has rank 0 and is the unique minimum.

Each element is identified with a tuple of block permutations (``sigma``)
whose lengths add up to its rank; comparisons use classical Bruhat order
on those permutations, one block at a time.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .compositions import (
    BlockStructure,
    Composition,
    format_composition,
    is_split_partition,
    raises,
    t_transform_signed,
)
from .keypoly import key_polynomial
from .symgroup import Permutation, bruhat_leq, canonical_reduced_word

__all__ = [
    "orbit_rank",
    "delta_vector",
    "phi",
    "SphericalPoset",
    "build_orbit_poset",
    "build_support_poset",
    "check_diamond",
    "IntervalCheck",
    "check_interval",
    "mobius_sum",
    "StructureStats",
    "structure_stats",
    "goingup_allows",
    "prefix_gap_bound",
    "prefix_bound_holds",
    "interweaved_pair_violations",
    "to_dot",
    "to_json",
]

Edge = tuple[Composition, Composition, tuple[int, int]]


def orbit_rank(beta: Sequence[int], blocks: BlockStructure) -> int:
    return sum(1 for i, j in blocks.pairs() if beta[i - 1] - i < beta[j - 1] - j)


def delta_vector(gamma: Sequence[int], blocks: BlockStructure) -> Composition:
    """A shift Delta making gamma + Delta strictly decreasing overall.

    Block t (1-based, k+1 blocks) gets the constant (k+2-t) * M, with
    M = n + max(gamma) + 1, plus the staircase m, m-1, ..., 1 inside it.
    """
    n = blocks.n
    M = n + max(gamma, default=0) + 1
    nb = len(blocks.blocks)
    out: list[int] = []
    for t, b in enumerate(blocks.blocks, 1):
        m = len(b)
        out.extend((nb + 1 - t) * M + (m - k) for k in range(m))
    return tuple(out)


def phi(beta: Sequence[int], blocks: BlockStructure) -> tuple[Permutation, ...]:
    """Block permutations sigma(beta): gamma maps to identities, rank = total length.

    Inside a block, pi ranks the entries of beta + Delta increasingly (gamma
    gives the longest element w0) and sigma = w0 * pi.
    """
    out = []
    for b in blocks.blocks:
        m = len(b)
        v = [beta[i - 1] - i for i in b]
        if len(set(v)) != m:
            raise ValueError(f"{tuple(beta)} has repeated beta_i - i in block {b}")
        pi = [1 + sum(1 for y in v if y < x) for x in v]
        out.append(Permutation(tuple(m + 1 - p for p in pi)))
    return tuple(out)


def _leq(a: tuple[Permutation, ...], b: tuple[Permutation, ...]) -> bool:
    return all(bruhat_leq(x, y) for x, y in zip(a, b))


@dataclass
class SphericalPoset:
    blocks: BlockStructure
    root: Composition
    nodes: tuple[Composition, ...]
    ranks: dict[Composition, int]
    edges: frozenset[Edge]
    alpha: Composition | None = None
    coefficients: dict[Composition, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, beta) -> bool:
        return tuple(beta) in self.ranks

    def sign(self, beta: Sequence[int]) -> int:
        return -1 if self.ranks[tuple(beta)] % 2 else 1

    @cached_property
    def _up(self) -> dict[Composition, list[tuple[Composition, tuple[int, int]]]]:
        up: dict[Composition, list] = {b: [] for b in self.nodes}
        for lo, hi, lab in self.edges:
            up[lo].append((hi, lab))
        for v in up.values():
            v.sort()
        return up

    @cached_property
    def _down(self) -> dict[Composition, list[tuple[Composition, tuple[int, int]]]]:
        dn: dict[Composition, list] = {b: [] for b in self.nodes}
        for lo, hi, lab in self.edges:
            dn[hi].append((lo, lab))
        for v in dn.values():
            v.sort()
        return dn

    def covers_up(self, beta) -> list[tuple[Composition, tuple[int, int]]]:
        return self._up[tuple(beta)]

    def covers_down(self, beta) -> list[tuple[Composition, tuple[int, int]]]:
        return self._down[tuple(beta)]

    @cached_property
    def sigmas(self) -> dict[Composition, tuple[Permutation, ...]]:
        return {b: phi(b, self.blocks) for b in self.nodes}

    def less(self, a, b) -> bool:
        a, b = tuple(a), tuple(b)
        return a != b and _leq(self.sigmas[a], self.sigmas[b])

    def maximal(self) -> list[Composition]:
        return [b for b in self.nodes if not any(self.less(b, c) for c in self.nodes)]

    def minimal(self) -> list[Composition]:
        return [b for b in self.nodes if not any(self.less(c, b) for c in self.nodes)]

    def signed_sum(self) -> int:
        """sum of sgn(beta) * [x^beta] kappa_alpha; the D-Schur coefficient at the root."""
        if self.alpha is None:
            return sum(self.sign(b) for b in self.nodes)
        return sum(self.sign(b) * self.coefficients[b] for b in self.nodes)


def _orbit(gamma: Composition, blocks: BlockStructure, nonnegative: bool) -> list[Composition]:
    pairs = list(blocks.pairs())
    seen = {gamma}
    queue = deque([gamma])
    while queue:
        b = queue.popleft()
        for i, j in pairs:
            nb = t_transform_signed(b, i, j)
            if nonnegative and min(nb) < 0:
                continue
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return sorted(seen, key=lambda b: (orbit_rank(b, blocks), tuple(-x for x in b)))


def _assemble(nodes: Iterable[Composition], gamma: Composition, blocks: BlockStructure, **kw) -> SphericalPoset:
    nodes = tuple(nodes)
    ranks = {b: orbit_rank(b, blocks) for b in nodes}
    node_set = set(nodes)
    edges = set()
    for b in nodes:
        for i, j in blocks.pairs():
            if not raises(b, i, j):
                continue
            nb = t_transform_signed(b, i, j)
            if nb in node_set and ranks[nb] == ranks[b] + 1:
                edges.add((b, nb, (i, j)))
    return SphericalPoset(blocks, gamma, nodes, ranks, frozenset(edges), **kw)


def build_orbit_poset(gamma: Sequence[int], blocks: BlockStructure, nonnegative: bool = False) -> SphericalPoset:
    """S_{I,gamma}: the closure of gamma under every t_{ij}, i < j in one block.

    By default the whole orbit is kept, signed entries included, so its size
    is the product of the block factorials.  ``nonnegative=True`` keeps only
    the part reachable through weak compositions.
    """
    gamma = tuple(gamma)
    if not is_split_partition(gamma, blocks):
        raise ValueError(f"{gamma} is not a split partition for D = {blocks.D}")
    return _assemble(_orbit(gamma, blocks, nonnegative), gamma, blocks)


def build_support_poset(
    alpha: Sequence[int],
    gamma: Sequence[int],
    blocks: BlockStructure,
    engine: str = "demazure",
) -> SphericalPoset:
    """P_{alpha,gamma}: orbit elements beta with [x^beta] kappa_alpha nonzero."""
    alpha, gamma = tuple(alpha), tuple(gamma)
    if not is_split_partition(gamma, blocks):
        raise ValueError(f"{gamma} is not a split partition for D = {blocks.D}")
    kappa = key_polynomial(alpha, engine)
    total = sum(alpha)
    orbit = _orbit(gamma, blocks, nonnegative=False)
    coeffs = {}
    for b in orbit:
        if sum(b) != total or min(b) < 0:
            continue
        c = kappa.coeff(b)
        if c:
            coeffs[b] = c
    return _assemble(
        [b for b in orbit if b in coeffs],
        gamma,
        blocks,
        alpha=alpha,
        coefficients=coeffs,
    )


# -- structural checks -----------------------------------------------------------------


def check_diamond(P: SphericalPoset) -> bool:
    """Any two distinct covers of a node have a common strict upper bound in P."""
    for b in P.nodes:
        ups = [c for c, _ in P.covers_up(b)]
        for x in range(len(ups)):
            for y in range(x + 1, len(ups)):
                s, t = ups[x], ups[y]
                if not any(P.less(s, z) and P.less(t, z) for z in P.nodes):
                    return False
    return True


@dataclass
class IntervalCheck:
    ok: bool
    maximum: Composition | None
    top: tuple[tuple[int, ...], ...] = ()
    reason: str = ""

    @property
    def top_word(self) -> tuple[int, ...]:
        return tuple(x for w in self.top for x in w)

    def interval_text(self) -> str:
        w = self.top_word
        return "[id, " + ("".join(f"s{i}" for i in w) if w else "id") + "]"


def _down_set(top: Composition, blocks: BlockStructure) -> set[Composition]:
    seen = {top}
    queue = deque([top])
    pairs = list(blocks.pairs())
    while queue:
        b = queue.popleft()
        rb = orbit_rank(b, blocks)
        for i, j in pairs:
            if raises(b, i, j):
                continue
            nb = t_transform_signed(b, i, j)
            if orbit_rank(nb, blocks) == rb - 1 and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen


def check_interval(P: SphericalPoset) -> IntervalCheck:
    """Unique maximum, and P equal to the Bruhat interval from the root up to it.

    The interval is generated downward from the maximum by cover moves and
    independently cross-checked against Bruhat comparisons of block
    permutations.  ``top`` holds, per block, a reduced word (global
    generator indices) of the block permutation at the maximum.
    """
    if not P.nodes:
        return IntervalCheck(False, None, reason="empty poset")
    maxima = P.maximal()
    if len(maxima) != 1:
        return IntervalCheck(False, None, reason=f"{len(maxima)} maximal elements: {sorted(maxima)}")
    top = maxima[0]
    if P.root not in P:
        return IntervalCheck(False, top, reason="root not in poset")
    down = _down_set(top, P.blocks)
    sig_top = phi(top, P.blocks)
    if any(not _leq(phi(b, P.blocks), sig_top) for b in down):
        return IntervalCheck(False, top, reason="down-set disagrees with Bruhat comparison")
    if down != set(P.nodes):
        return IntervalCheck(False, top, reason=f"interval has {len(down)} elements, poset has {len(P)}")
    words = []
    for sig, off in zip(sig_top, P.blocks.cuts):
        words.append(tuple(off + i for i in canonical_reduced_word(sig.inverse())))
    return IntervalCheck(True, top, tuple(words))


def mobius_sum(P: SphericalPoset) -> int:
    """sum of sgn(beta) over an interval; raises if P is not one."""
    chk = check_interval(P)
    if not chk.ok:
        raise ValueError(f"not an interval: {chk.reason}")
    return sum(P.sign(b) for b in P.nodes)


# -- going-up statistics -----------------------------------------------------------------


@dataclass
class StructureStats:
    alpha: Composition
    leftmin: tuple[int, ...]
    rightmax: tuple[int, ...]
    interweaved: dict[tuple[int, int], int | None]

    def centers(self) -> dict[tuple[int, int], int | None]:
        return dict(self.interweaved)

    def within_blocks(self, blocks: BlockStructure) -> dict[tuple[int, int], int | None]:
        return {p: c for p, c in self.interweaved.items() if blocks.same_block(*p)}

    def undefined_centers(self) -> list[tuple[int, int]]:
        return [p for p, c in self.interweaved.items() if c is None]


def structure_stats(alpha: Sequence[int], blocks: BlockStructure | None = None) -> StructureStats:
    """leftmin, rightmax and the interweaved pairs (with centers) of alpha.

    With ``blocks`` only pairs inside a common block are listed.  A center
    that does not exist is recorded as None.
    """
    a = tuple(alpha)
    n = len(a)
    lm = tuple(min(a[: i + 1]) for i in range(n))
    rm = tuple(max(a[i:]) for i in range(n))
    pairs: dict[tuple[int, int], int | None] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if blocks is not None and not blocks.same_block(i, j):
                continue
            if any(a[k - 1] < a[k] for k in range(i, j)):
                continue
            if lm[i - 1] < a[i - 1] and rm[j - 1] > a[j - 1]:
                ks = [k for k in range(i, j + 1) if a[k - 1] >= rm[j - 1]]
                pairs[(i, j)] = max(ks) if ks else None
    return StructureStats(a, lm, rm, pairs)


def goingup_allows(
    beta: Sequence[int], i: int, j: int, alpha: Sequence[int], blocks: BlockStructure, stats: StructureStats | None = None
) -> bool:
    """The three-part test predicting whether t_{ij} beta stays in P_{alpha,gamma}."""
    if not (i < j and blocks.same_block(i, j)):
        raise ValueError(f"({i}, {j}) is not a pair inside one block")
    b = tuple(beta)
    if not b[i - 1] > b[j - 1] - (j - i):
        raise ValueError(f"t_{{{i}{j}}} does not raise {b}")
    st = stats if stats is not None else structure_stats(alpha)
    if not st.leftmin[i - 1] <= b[j - 1] - (j - i):
        return False
    if not st.rightmax[j - 1] >= b[i - 1] + (j - i):
        return False
    if (i, j) in st.interweaved:
        c = st.interweaved[(i, j)]
        if c is None:
            raise ValueError(f"center of ({i}, {j}) undefined for {st.alpha}")
        moved = list(b)
        moved[i - 1] = b[j - 1] - (j - i)
        return sum(moved[:c]) >= sum(st.alpha[:c])
    return True


def prefix_gap_bound(alpha: Sequence[int], i: int, stats: StructureStats | None = None) -> int:
    """max(rightmax(i+1) - leftmin(i), 0)."""
    st = stats if stats is not None else structure_stats(alpha)
    return max(st.rightmax[i] - st.leftmin[i - 1], 0)


def prefix_bound_holds(P: SphericalPoset, alpha: Sequence[int]) -> bool:
    st = structure_stats(alpha)
    n = len(alpha)
    for b in P.nodes:
        for i in range(1, n):
            if prefix_gap_bound(alpha, i, st) < sum(b[:i]) - sum(alpha[:i]):
                return False
    return True


def interweaved_pair_violations(P: SphericalPoset, alpha: Sequence[int]) -> list[tuple]:
    """(beta, (i,j), (p,q)) where both interweaved raising moves land in P."""
    st = structure_stats(alpha)
    bad = []
    for b in P.nodes:
        for blk in P.blocks.blocks:
            for i in blk:
                for p in blk:
                    for j in blk:
                        for q in blk:
                            if not i < p < j < q:
                                continue
                            if (i, j) not in st.interweaved or (p, q) not in st.interweaved:
                                continue
                            if not (raises(b, i, j) and raises(b, p, q)):
                                continue
                            if t_transform_signed(b, i, j) in P and t_transform_signed(b, p, q) in P:
                                bad.append((b, (i, j), (p, q)))
    return bad


# -- export ---------------------------------------------------------------------------------


def _label(beta: Composition, blocks: BlockStructure) -> str:
    parts = blocks.split(beta)
    if all(0 <= v <= 9 for v in beta):
        return ",".join("".join(map(str, p)) for p in parts)
    return "|".join(",".join(map(str, p)) for p in parts)


def _edge_label(ij: tuple[int, int]) -> str:
    i, j = ij
    return f"t_{i}" if j == i + 1 else f"t_{{{i}{j}}}"


def to_dot(P: SphericalPoset, name: str = "P") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    ids = {b: k for k, b in enumerate(P.nodes)}
    for b in P.nodes:
        sg = "+" if P.sign(b) > 0 else "-"
        lines.append(f'  n{ids[b]} [label="{_label(b, P.blocks)}", rank={P.ranks[b]}, sign="{sg}"];')
    for lo, hi, lab in sorted(P.edges, key=lambda e: (ids[e[0]], ids[e[1]], e[2])):
        lines.append(f'  n{ids[lo]} -> n{ids[hi]} [label="{_edge_label(lab)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(P: SphericalPoset, checks: bool = True) -> str:
    obj: dict = {
        "D": list(P.blocks.D),
        "n": P.blocks.n,
        "root": format_composition(P.root),
        "nodes": [
            {
                "beta": format_composition(b),
                "label": _label(b, P.blocks),
                "rank": P.ranks[b],
                "sign": P.sign(b),
                **({"coeff": P.coefficients[b]} if P.alpha is not None else {}),
            }
            for b in P.nodes
        ],
        "edges": [
            {"lower": format_composition(lo), "upper": format_composition(hi), "label": _edge_label(lab)}
            for lo, hi, lab in sorted(P.edges)
        ],
    }
    if P.alpha is not None:
        obj["alpha"] = format_composition(P.alpha)
    if checks and P.nodes:
        chk = check_interval(P)
        obj["diamond"] = check_diamond(P)
        obj["interval"] = chk.ok
        obj["maximum"] = None if chk.maximum is None else format_composition(chk.maximum)
        obj["interval_top"] = chk.interval_text() if chk.ok else None
        obj["signed_sum"] = P.signed_sum()
        obj["mobius_sum"] = sum(P.sign(b) for b in P.nodes) if chk.ok else None
    return json.dumps(obj, sort_keys=True, indent=2)
