"""Exhaustive and randomised verification suites behind ``levisphere verify``.

Every suite returns a :class:`SuiteReport`; a non-empty ``disagreements``
list means some statement failed on a concrete input, which is recorded
verbatim rather than raised.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .compositions import (
    BlockStructure,
    Composition,
    act,
    contains_comp_pattern,
    format_composition,
    format_split_partition,
    raises,
    t_transform_signed,
)
from .keypoly import key_polynomial
from .posets import (
    build_support_poset,
    check_diamond,
    check_interval,
    goingup_allows,
    prefix_bound_holds,
    interweaved_pair_violations,
    structure_stats,
)
from .spherical import (
    check_witness,
    construct_witness,
    find_witness,
    is_spherical_coxeter,
    spherical_pairs,
    verify_main_theorem,
)
from .splitschur import dschur_expand, straighten
from .symgroup import Permutation, left_descents, word_to_permutation

__all__ = [
    "SuiteReport",
    "CoxeterInstance",
    "random_coxeter_instance",
    "suite_equivalence",
    "suite_maintheorem",
    "suite_construct",
    "suite_posets",
    "suite_pattern_stats",
    "run_suite",
    "SUITES",
]

AVOIDED_PATTERNS = ((0, 1, 2), (1, 0, 3, 2), (0, 0, 1, 1), (0, 0, 2, 1), (1, 0, 2, 2))


@dataclass
class SuiteReport:
    suite: str
    n: int
    bound: int
    cases: int = 0
    disagreements: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "bound": self.bound,
            "cases": self.cases,
            "disagreements": self.disagreements,
            "elapsed_ms": self.elapsed_ms,
            **({"extra": self.extra} if self.extra else {}),
        }


def _timed(fn):
    def wrapper(*a, **kw) -> SuiteReport:
        t0 = time.perf_counter()
        rep = fn(*a, **kw)
        rep.elapsed_ms = int((time.perf_counter() - t0) * 1000)
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def suite_equivalence(n: int, bound: int = 3, **_) -> SuiteReport:
    """Coxeter-element test (both methods) against witness search, all (w, I), sizes 2..n."""
    rep = SuiteReport("equivalence", n, bound)
    for m in range(2, n + 1):
        for w, I in spherical_pairs(m):
            rep.cases += 1
            a = is_spherical_coxeter(w, I, method="pattern")
            b = is_spherical_coxeter(w, I, method="word")
            wit = find_witness(w, I)
            if not (a == b == (wit is not None)):
                rep.disagreements.append(
                    {"w": str(w), "I": sorted(I), "pattern": a, "word": b, "witness": wit is not None}
                )
            elif wit is not None and not check_witness(wit, w, I):
                rep.disagreements.append({"w": str(w), "I": sorted(I), "bad_witness": list(wit)})
    return rep


@_timed
def suite_maintheorem(n: int, bound: int = 3, jobs: int = 1, **_) -> SuiteReport:
    """Sphericality against sampled multiplicity-freeness, every (w, I) in S_n."""
    r = verify_main_theorem(n, bound, jobs=jobs)
    return SuiteReport("maintheorem", n, bound, r.cases, r.disagreements)


@_timed
def suite_construct(n: int, bound: int = 3, **_) -> SuiteReport:
    """Counterexample construction for every non-spherical (w, I), sizes 2..n."""
    rep = SuiteReport("construct", n, bound)
    for m in range(2, n + 1):
        for w, I in spherical_pairs(m):
            if is_spherical_coxeter(w, I):
                continue
            rep.cases += 1
            try:
                r = construct_witness(w, I)
            except RuntimeError as exc:
                rep.disagreements.append({"w": str(w), "I": sorted(I), "error": str(exc)})
                continue
            blocks = BlockStructure.from_I(I, m)
            entry = {"w": str(w), "I": sorted(I), "case": r.case, "lambda": list(r.lam)}
            if r.coefficient < 2:
                rep.disagreements.append({**entry, "coeff": r.coefficient})
                continue
            P = build_support_poset(r.u_lambda, r.gamma, blocks)
            if r.case == 2 and (set(P.nodes) != {r.gamma} or r.coefficient != 2):
                rep.disagreements.append({**entry, "poset_size": len(P), "coeff": r.coefficient})
            if r.case == 1:
                rank1 = sum(1 for b in P.nodes if P.ranks[b] == 1)
                if r.coefficient != r.k1 + 1 - rank1 or max(P.ranks.values()) > 1:
                    rep.disagreements.append({**entry, "coeff": r.coefficient, "k1": r.k1, "rank1": rank1})
    return rep


# -- random standard-Coxeter instances ---------------------------------------------------


@dataclass
class CoxeterInstance:
    c: Permutation
    word: tuple[int, ...]
    blocks: BlockStructure
    lam: Composition
    gamma: Composition

    @property
    def alpha(self) -> Composition:
        return act(self.c, self.lam)

    def describe(self) -> dict:
        return {
            "c": str(self.c),
            "D": list(self.blocks.D),
            "lambda": format_composition(self.lam),
            "gamma": format_split_partition(self.gamma, self.blocks),
        }


def random_coxeter_instance(rng: random.Random, n: int, max_part: int = 4) -> CoxeterInstance:
    """A random (c, D, lambda, gamma) with c a product of distinct generators and J(c) disjoint from I.

    Half the time lambda has distinct parts below n + 3, otherwise parts are
    at most ``max_part``.  gamma is the straightening of some term of
    kappa_{c lambda}; with probability 0.85 it is drawn from those gamma hit
    by at least two terms, so that the support poset is not a single point.
    """
    while True:
        I = {i for i in range(1, n) if rng.random() < 0.75}
        letters = [i for i in range(1, n) if rng.random() < 0.7]
        rng.shuffle(letters)
        c = word_to_permutation(letters, n)
        if left_descents(c) & I:
            continue
        blocks = BlockStructure.from_I(I, n)
        if rng.random() < 0.5:
            lam = tuple(sorted(rng.sample(range(n + 3), n), reverse=True))
        else:
            lam = tuple(sorted((rng.randint(0, max_part) for _ in range(n)), reverse=True))
        fibre: dict[Composition, int] = {}
        for e, _ in key_polynomial(act(c, lam)).items():
            r = straighten(e, blocks)
            if r is not None:
                fibre[r[1]] = fibre.get(r[1], 0) + 1
        if not fibre:
            continue
        big = sorted(g for g, k in fibre.items() if k > 1)
        pool = big if big and rng.random() < 0.85 else sorted(fibre)
        return CoxeterInstance(c, tuple(letters), blocks, lam, rng.choice(pool))


def _instances(n: int, samples: int, seed: int):
    rng = random.Random(seed)
    for _ in range(samples):
        yield random_coxeter_instance(rng, rng.randint(min(3, n), n))


@_timed
def suite_posets(n: int, bound: int = 3, samples: int = 200, seed: int = 0, **_) -> SuiteReport:
    """Diamond property, unique maximum and interval shape, Mobius sum, on random instances."""
    rep = SuiteReport("posets", n, bound)
    for inst in _instances(n, samples, seed):
        rep.cases += 1
        P = build_support_poset(inst.alpha, inst.gamma, inst.blocks)
        sizes = rep.extra.setdefault("poset_sizes", {})
        sizes[str(len(P))] = sizes.get(str(len(P)), 0) + 1
        fail = []
        if not check_diamond(P):
            fail.append("diamond")
        chk = check_interval(P)
        if not chk.ok:
            fail.append("interval: " + chk.reason)
        else:
            mob = sum(P.sign(b) for b in P.nodes)
            if mob != (1 if len(P) == 1 else 0):
                fail.append(f"mobius sum {mob} on {len(P)} nodes")
        coeff = dschur_expand(key_polynomial(inst.alpha), inst.blocks).coeff(inst.gamma)
        if P.signed_sum() != coeff:
            fail.append(f"signed sum {P.signed_sum()} != coefficient {coeff}")
        if fail:
            rep.disagreements.append({**inst.describe(), "failed": fail})
    return rep


@_timed
def suite_pattern_stats(n: int, bound: int = 3, samples: int = 200, seed: int = 1, **_) -> SuiteReport:
    """Going-up predicate, pattern avoidance of c lambda, prefix bound, interweaved exclusion."""
    rep = SuiteReport("section6", n, bound)
    for inst in _instances(n, samples, seed):
        rep.cases += 1
        alpha = inst.alpha
        fail = []
        for pat in AVOIDED_PATTERNS:
            if contains_comp_pattern(alpha, pat):
                fail.append(f"contains {format_composition(pat)}")
        P = build_support_poset(alpha, inst.gamma, inst.blocks)
        st = structure_stats(alpha)
        if st.undefined_centers():
            fail.append(f"undefined centers {st.undefined_centers()}")
        else:
            for b in P.nodes:
                for i, j in inst.blocks.pairs():
                    if not raises(b, i, j):
                        continue
                    pred = goingup_allows(b, i, j, alpha, inst.blocks, st)
                    real = t_transform_signed(b, i, j) in P
                    if pred != real:
                        fail.append(f"going-up at {format_composition(b)} ({i},{j}): {pred} vs {real}")
        if not prefix_bound_holds(P, alpha):
            fail.append("prefix bound")
        if interweaved_pair_violations(P, alpha):
            fail.append("interweaved pair exclusion")
        if fail:
            rep.disagreements.append({**inst.describe(), "failed": fail})
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "equivalence": suite_equivalence,
    "maintheorem": suite_maintheorem,
    "construct": suite_construct,
    "posets": suite_posets,
    "section6": suite_pattern_stats,
}


def run_suite(name: str, n: int, bound: int = 3, jobs: int = 1, samples: int = 200, seed: int = 0) -> SuiteReport:
    if name == "all":
        t0 = time.perf_counter()
        total = SuiteReport("all", n, bound)
        for key in SUITES:
            r = run_suite(key, n, bound, jobs, samples, seed)
            total.cases += r.cases
            total.disagreements.extend({"suite": key, **d} for d in r.disagreements)
        total.elapsed_ms = int((time.perf_counter() - t0) * 1000)
        return total
    if name not in SUITES:
        raise KeyError(name)
    kw = {"jobs": jobs}
    if name in ("posets", "section6"):
        kw.update(samples=samples, seed=seed + (name == "section6"))
    return SUITES[name](n, bound, **kw)
