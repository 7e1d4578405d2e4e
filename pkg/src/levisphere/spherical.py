"""Sphericality of (w, I): Coxeter-element test, reduced-word witnesses, counterexamples.

``u = w0(I) * w`` throughout, composed as functions.  The precondition
``I <= J(w)`` makes the factorisation length-additive; it is enforced and a
violation raises :class:`PreconditionError`.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from itertools import chain, combinations
from math import comb
from typing import Iterable, Sequence

from .compositions import (
    BlockStructure,
    Composition,
    act,
    format_split_partition,
    is_split_partition,
    partitions_in_box,
)
from .keypoly import key_polynomial
from .splitschur import dschur_expand, is_multiplicity_free
from .symgroup import (
    Permutation,
    _left_desc,
    _swap_values,
    all_permutations,
    canonical_reduced_word,
    contains_pattern,
    format_word,
    is_reduced,
    is_standard_coxeter,
    left_descents,
    longest_element,
    word_to_permutation,
)

__all__ = [
    "PreconditionError",
    "coxeter_part",
    "is_spherical_coxeter",
    "find_witness",
    "check_witness",
    "component_letter_counts",
    "ClassificationReport",
    "classify",
    "WitnessConstruction",
    "construct_witness",
    "expansion_coefficient",
    "subsets",
    "spherical_pairs",
    "MainTheoremReport",
    "verify_main_theorem",
]


class PreconditionError(ValueError):
    """An input violates a documented precondition (exit code 2 at the CLI)."""


def subsets(s: Iterable[int]) -> Iterable[frozenset[int]]:
    s = sorted(s)
    return (frozenset(c) for c in chain.from_iterable(combinations(s, k) for k in range(len(s) + 1)))


def coxeter_part(w: Permutation, I: Iterable[int]) -> Permutation:
    """u = w0(I) * w, after checking I <= J(w)."""
    I = frozenset(I)
    J = left_descents(w)
    if not I <= J:
        raise PreconditionError(
            f"I = {sorted(I)} is not contained in J(w) = {sorted(J)} for w = {w}"
        )
    # w0(I) is an involution, so this is also w0(I)^{-1} w
    return longest_element(I, w.n) * w


def is_spherical_coxeter(w: Permutation, I: Iterable[int], method: str = "pattern") -> bool:
    return is_standard_coxeter(coxeter_part(w, I), method=method) is not None


# -- reduced-word witnesses ------------------------------------------------------


def _budgets(blocks: BlockStructure) -> tuple[dict[int, int], dict[int, int]]:
    """Letter -> slot in the budget vector, and slot -> allowance for the suffix R''.

    Each cut letter d gets one slot with allowance 1.  Each block of size m
    gets one slot shared by its interior letters; R' already spends C(m, 2)
    of the C(m+1, 2) - 1 allowed, leaving m - 1.
    """
    slot: dict[int, int] = {}
    allow: dict[int, int] = {}
    k = 0
    for d in blocks.D:
        slot[d] = k
        allow[k] = 1
        k += 1
    for b in blocks.blocks:
        m = len(b)
        for i in b[:-1]:
            slot[i] = k
        allow[k] = comb(m + 1, 2) - 1 - comb(m, 2)
        k += 1
    return slot, allow


def find_witness(w: Permutation, I: Iterable[int]) -> tuple[int, ...] | None:
    """A reduced word R = R' R'' of w meeting both budget conditions, or None.

    R' is the canonical word of w0(I); R'' ranges over reduced words of u,
    explored depth first with the remaining budget as the bound.
    """
    I = frozenset(I)
    u = coxeter_part(w, I)
    blocks = BlockStructure.from_I(I, w.n)
    prefix = canonical_reduced_word(longest_element(I, w.n))
    slot, allow = _budgets(blocks)
    start = tuple(allow[k] for k in range(len(allow)))
    dead: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    path: list[int] = []

    def rec(t: tuple[int, ...], budget: tuple[int, ...], remaining: int) -> bool:
        if remaining == 0:
            return True
        if sum(budget) < remaining or (t, budget) in dead:
            return False
        for j in reversed(_left_desc(t)):
            k = slot[j]
            if budget[k] == 0:
                continue
            nb = budget[:k] + (budget[k] - 1,) + budget[k + 1 :]
            path.append(j)
            if rec(_swap_values(t, j), nb, remaining - 1):
                return True
            path.pop()
        dead.add((t, budget))
        return False

    if rec(u.oneline, start, u.length()):
        return prefix + tuple(path)
    return None


def check_witness(word: Sequence[int], w: Permutation, I: Iterable[int]) -> bool:
    """Both witness conditions, checked literally on the whole word R."""
    blocks = BlockStructure.from_I(I, w.n)
    if not is_reduced(word, w.n) or word_to_permutation(word, w.n) != w:
        return False
    if any(word.count(d) > 1 for d in blocks.D):
        return False
    c = blocks.cuts
    for t in range(1, len(c)):
        lo, hi = c[t - 1], c[t]
        inside = sum(1 for i in word if lo < i < hi)
        if inside >= comb(hi - lo + 1, 2):
            return False
    return True


def component_letter_counts(word: Sequence[int], I: Iterable[int]) -> tuple[int, ...]:
    """Letters of the word from each connected run of I, one count per run."""
    runs: list[list[int]] = []
    for i in sorted(set(I)):
        if runs and runs[-1][-1] == i - 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    return tuple(sum(1 for x in word if x in set(r)) for r in runs)


# -- classification ----------------------------------------------------------------


def expansion_coefficient(w: Permutation, lam: Sequence[int], blocks: BlockStructure, gamma: Sequence[int]) -> int:
    kappa = key_polynomial(act(w, lam))
    return dschur_expand(kappa, blocks).coeff(tuple(gamma))


def _mult_free(alpha: Composition, blocks: BlockStructure) -> bool:
    return is_multiplicity_free(dschur_expand(key_polynomial(alpha), blocks))


@dataclass
class ClassificationReport:
    w: Permutation
    I: frozenset[int]
    spherical_coxeter: bool
    witness: tuple[int, ...] | None
    mult_free_sample: bool
    lambda_set_descriptor: str
    witness_suffix: tuple[int, ...] | None = None
    counterexample: dict | None = None

    @property
    def spherical(self) -> bool:
        return self.spherical_coxeter

    def to_json_obj(self) -> dict:
        return {
            "w": str(self.w),
            "I": sorted(self.I),
            "D": list(BlockStructure.from_I(self.I, self.w.n).D),
            "spherical": self.spherical_coxeter,
            "spherical_coxeter": self.spherical_coxeter,
            "spherical_witness": self.witness is not None,
            "witness": None if self.witness is None else format_word(self.witness),
            "witness_suffix": None if self.witness_suffix is None else format_word(self.witness_suffix),
            "mult_free_sample": self.mult_free_sample,
            "lambda_set": self.lambda_set_descriptor,
            "counterexample": self.counterexample,
        }


def classify(w: Permutation, I: Iterable[int], bound: int = 3) -> ClassificationReport:
    I = frozenset(I)
    u = coxeter_part(w, I)
    blocks = BlockStructure.from_I(I, w.n)
    sph = is_standard_coxeter(u, method="pattern") is not None
    wit = find_witness(w, I)
    prefix_len = len(canonical_reduced_word(longest_element(I, w.n)))
    mf = True
    bad = None
    for lam in partitions_in_box(w.n, bound):
        alpha = act(w, lam)
        e = dschur_expand(key_polynomial(alpha), blocks)
        if not is_multiplicity_free(e):
            mf = False
            g, c = max(e.coeffs.items(), key=lambda gc: (gc[1], gc[0]))
            bad = {"lambda": list(lam), "gamma": format_split_partition(g, blocks), "coeff": c}
            break
    return ClassificationReport(
        w=w,
        I=I,
        spherical_coxeter=sph,
        witness=wit,
        mult_free_sample=mf,
        lambda_set_descriptor=f"partitions with at most {w.n} parts, each part <= {bound}",
        witness_suffix=None if wit is None else wit[prefix_len:],
        counterexample=bad,
    )


# -- counterexample construction ---------------------------------------------------


@dataclass
class WitnessConstruction:
    case: int
    lam: Composition
    gamma: Composition
    u_lambda: Composition
    coefficient: int
    indices: dict[str, int] = field(default_factory=dict)
    k1: int | None = None

    def to_json_obj(self, blocks: BlockStructure) -> dict:
        d = asdict(self)
        d["lambda"] = list(d.pop("lam"))
        d["gamma"] = format_split_partition(self.gamma, blocks)
        d["u_lambda"] = list(self.u_lambda)
        return d


def _occurrences(seq: Sequence[int], values: Sequence[int]):
    """Index tuples (1-based, increasing) where seq takes exactly the given values in order."""
    n = len(seq)

    def rec(start: int, k: int, acc: list[int]):
        if k == len(values):
            yield tuple(acc)
            return
        for i in range(start, n):
            if seq[i] == values[k]:
                acc.append(i + 1)
                yield from rec(i + 1, k + 1, acc)
                acc.pop()

    yield from rec(0, 0, [])


def _pattern_positions(u: Permutation, pattern: Sequence[int]):
    t = u.oneline
    k = len(pattern)
    for idx in combinations(range(1, u.n + 1), k):
        vals = [t[i - 1] for i in idx]
        if all((vals[a] < vals[b]) == (pattern[a] < pattern[b]) for a in range(k) for b in range(k)):
            yield idx


def _case1(u: Permutation, lam: Composition, blocks: BlockStructure):
    ul = act(u, lam)
    best = min(_occurrences(ul, (0, 1, 2)), key=lambda o: (o[2] - o[0], o))
    pp, q, rr = best
    p = pp
    while p > 1 and ul[p - 2] == 0:
        p -= 1
    r = rr
    while r < u.n and ul[r] == 2:
        r += 1
    g = list(ul)
    g[p - 1] += 1
    g[r - 1] -= 1
    k1 = sum(1 for i in range(pp + 1, rr) if ul[i - 1] == 1)
    return ul, tuple(g), {"p": p, "p_prime": pp, "q": q, "r_prime": rr, "r": r}, k1


def _case2(u: Permutation, lam: Composition, blocks: BlockStructure):
    ul = act(u, lam)
    best = min(_occurrences(ul, (1, 0, 3, 2)), key=lambda o: (o[3] - o[0], o))
    pp, qq, rr, zz = best
    p = pp
    while p > 1 and ul[p - 2] == 1:
        p -= 1
    z = zz
    while z < u.n and ul[z] == 2:
        z += 1
    q = next(i for i in range(p + 1, u.n + 1) if ul[i - 1] == 0)
    r = max(i for i in range(1, z) if ul[i - 1] == 3)
    g = list(ul)
    g[p - 1] += 1
    g[q - 1] += 1
    g[r - 1] -= 1
    g[z - 1] -= 1
    idx = {"p": p, "p_prime": pp, "q": q, "q_prime": qq, "r": r, "r_prime": rr, "z": z, "z_prime": zz}
    return ul, tuple(g), idx, None


def _case_lambdas(u: Permutation, case: int) -> list[Composition]:
    """Partitions making u lambda contain 0,1,2 (case 1) or 1,0,3,2 (case 2), one per occurrence."""
    n = u.n
    out: list[Composition] = []
    if case == 1:
        for a, b, _c in _pattern_positions(u, (3, 2, 1)):
            lam = tuple(2 if m <= a else 1 if m <= b else 0 for m in range(1, n + 1))
            if lam not in out:
                out.append(lam)
    else:
        for a, b, c, _d in _pattern_positions(u, (3, 4, 1, 2)):
            lam = tuple(3 if m <= a else 2 if m <= b else 1 if m <= c else 0 for m in range(1, n + 1))
            if lam not in out:
                out.append(lam)
    return out


def construct_witness(w: Permutation, I: Iterable[int], verify: bool = True) -> WitnessConstruction:
    """(lambda, gamma) with [s_gamma] kappa_{w lambda} >= 2, for non-spherical (w, I).

    Candidates follow the 321 case when u contains 321 and the 3412 case
    otherwise.  Each candidate's coefficient is computed from the expansion
    of kappa_{w lambda}; the first one reaching 2 is returned.
    """
    I = frozenset(I)
    u = coxeter_part(w, I)
    if is_standard_coxeter(u, method="pattern") is not None:
        raise PreconditionError(f"w = {w} is I-spherical for I = {sorted(I)}; no counterexample exists")
    blocks = BlockStructure.from_I(I, w.n)
    case = 1 if contains_pattern(u, (3, 2, 1)) else 2
    build = _case1 if case == 1 else _case2
    tried = []
    for lam in _case_lambdas(u, case):
        ul, gamma, idx, k1 = build(u, lam, blocks)
        if not is_split_partition(gamma, blocks) or min(gamma) < 0:
            tried.append((lam, gamma, "not a split partition"))
            continue
        coeff = expansion_coefficient(w, lam, blocks, gamma) if verify else -1
        if not verify or coeff >= 2:
            return WitnessConstruction(case, lam, gamma, ul, coeff, idx, k1)
        tried.append((lam, gamma, coeff))
    raise RuntimeError(f"no candidate reached coefficient 2 for w = {w}, I = {sorted(I)}: {tried}")


# -- main theorem at desk scale ------------------------------------------------------


def spherical_pairs(n: int) -> Iterable[tuple[Permutation, frozenset[int]]]:
    """Every (w, I) with w in S_n and I <= J(w)."""
    for w in all_permutations(n):
        for I in subsets(left_descents(w)):
            yield w, I


@dataclass
class MainTheoremReport:
    n: int
    bound: int
    cases: int = 0
    disagreements: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "bound": self.bound,
            "cases": self.cases,
            "disagreements": self.disagreements,
            "elapsed_ms": self.elapsed_ms,
        }


def _check_pair(w: Permutation, I: frozenset[int], lams: list[Composition]) -> tuple[int, dict | None]:
    blocks = BlockStructure.from_I(I, w.n)
    sph = is_spherical_coxeter(w, I)
    cases = 0
    for lam in lams:
        cases += 1
        mf = _mult_free(act(w, lam), blocks)
        if sph and not mf:
            return cases, {
                "w": str(w),
                "I": sorted(I),
                "lambda": list(lam),
                "kind": "spherical but not multiplicity-free",
            }
        if not sph and not mf:
            return cases, None
    if not sph:
        return cases, {
            "w": str(w),
            "I": sorted(I),
            "kind": "not spherical but every sampled lambda multiplicity-free",
        }
    return cases, None


def _check_perm(args) -> tuple[int, list[dict]]:
    oneline, bound = args
    w = Permutation(oneline)
    lams = partitions_in_box(w.n, bound)
    total = 0
    bad = []
    for I in subsets(left_descents(w)):
        c, d = _check_pair(w, I, lams)
        total += c
        if d is not None:
            bad.append(d)
    return total, bad


def verify_main_theorem(n: int, lambda_parts_bound: int = 3, jobs: int = 1) -> MainTheoremReport:
    """Sphericality against sampled multiplicity-freeness for every (w, I) in S_n.

    The spherical direction is a sample over partitions in an n x bound box;
    non-spherical pairs stop at the first lambda with a coefficient >= 2.
    """
    t0 = time.perf_counter()
    rep = MainTheoremReport(n, lambda_parts_bound)
    tasks = [(w.oneline, lambda_parts_bound) for w in all_permutations(n)]
    if jobs > 1:
        from multiprocessing import get_context

        with get_context("fork").Pool(jobs) as pool:
            results = pool.map(_check_perm, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))
    else:
        results = [_check_perm(t) for t in tasks]
    for c, bad in results:
        rep.cases += c
        rep.disagreements.extend(bad)
    rep.disagreements.sort(key=lambda d: (d["w"], d["I"]))
    rep.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return rep
