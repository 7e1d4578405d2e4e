from collections import deque
from math import factorial, prod

import pytest

from levisphere.compositions import BlockStructure, act, t_transform_signed
from levisphere.keypoly import key_polynomial
from levisphere.posets import (
    SphericalPoset,
    build_orbit_poset,
    build_support_poset,
    check_diamond,
    check_interval,
    delta_vector,
    goingup_allows,
    mobius_sum,
    orbit_rank,
    phi,
    prefix_gap_bound,
    structure_stats,
    to_dot,
    to_json,
)
from levisphere.splitschur import dschur_expand
from levisphere.symgroup import Permutation, longest_element

ORBIT_CASES = [
    ((4, 4, 3), BlockStructure(3, ())),
    ((2, 1, 1, 0), BlockStructure(4, (2,))),
    ((3, 2, 2, 1, 0), BlockStructure(5, (3,))),
    ((1, 1, 1, 1), BlockStructure(4, ())),
]


def adjacent_distance(gamma, blocks):
    """Shortest path from gamma using only the moves t_{i,i+1} inside a block."""
    dist = {gamma: 0}
    queue = deque([gamma])
    while queue:
        b = queue.popleft()
        for i in sorted(blocks.I):
            nb = t_transform_signed(b, i, i + 1)
            if nb not in dist:
                dist[nb] = dist[b] + 1
                queue.append(nb)
    return dist


@pytest.mark.parametrize("gamma,blocks", ORBIT_CASES)
def test_orbit_structure(gamma, blocks):
    P = build_orbit_poset(gamma, blocks)
    assert len(P) == prod(factorial(m) for m in blocks.sizes)
    assert P.nodes[0] == gamma and P.minimal() == [gamma]
    dist = adjacent_distance(gamma, blocks)
    for b in P.nodes:
        assert P.ranks[b] == orbit_rank(b, blocks) == dist[b]
        assert sum(s.length() for s in phi(b, blocks)) == P.ranks[b]
    assert all(s == Permutation.identity(s.n) for s in phi(gamma, blocks))


@pytest.mark.parametrize("gamma,blocks", ORBIT_CASES)
def test_orbit_edges_are_bruhat_covers(gamma, blocks):
    P = build_orbit_poset(gamma, blocks)
    edges = {(lo, hi) for lo, hi, _ in P.edges}
    for a in P.nodes:
        for b in P.nodes:
            cover = P.less(a, b) and P.ranks[b] == P.ranks[a] + 1
            assert cover == ((a, b) in edges)


@pytest.mark.parametrize("gamma,blocks", ORBIT_CASES)
def test_full_orbit_is_an_interval(gamma, blocks):
    P = build_orbit_poset(gamma, blocks)
    assert check_diamond(P)
    chk = check_interval(P)
    assert chk.ok
    # the top element corresponds to the longest element of the Young subgroup
    assert len(chk.top_word) == longest_element(blocks.I, blocks.n).length()
    assert mobius_sum(P) == (0 if len(P) > 1 else 1)


def test_delta_vector_makes_orbit_strict():
    blocks = BlockStructure(5, (2,))
    gamma = (2, 2, 1, 1, 0)
    d = delta_vector(gamma, blocks)
    for b in build_orbit_poset(gamma, blocks).nodes:
        v = [x + y for x, y in zip(b, d)]
        assert len(set(v)) == len(v)
    s = [x + y for x, y in zip(gamma, d)]
    assert s == sorted(s, reverse=True)


def test_nonnegative_orbit_is_a_subset():
    blocks = BlockStructure(3, ())
    full = build_orbit_poset((1, 0, 0), blocks)
    part = build_orbit_poset((1, 0, 0), blocks, nonnegative=True)
    assert set(part.nodes) < set(full.nodes)
    assert all(min(b) >= 0 for b in part.nodes)


def test_rejects_non_split_partition():
    with pytest.raises(ValueError):
        build_orbit_poset((0, 1), BlockStructure(2, ()))
    with pytest.raises(ValueError):
        build_support_poset((0, 1), (0, 1), BlockStructure(2, ()))


@pytest.mark.parametrize(
    "alpha,D",
    [((0, 1, 2), ()), ((0, 2, 1, 3), (1,)), ((1, 0, 3, 2), ()), ((0, 3, 1, 2), (2,)), ((2, 0, 1, 1), ())],
)
def test_signed_sum_is_expansion_coefficient(alpha, D):
    n = len(alpha)
    blocks = BlockStructure(n, D)
    exp = dschur_expand(key_polynomial(alpha), blocks)
    for gamma, c in exp.coeffs.items():
        P = build_support_poset(alpha, gamma, blocks)
        assert P.signed_sum() == c
        assert all(P.coefficients[b] == key_polynomial(alpha).coeff(b) for b in P.nodes)


def test_engine_does_not_change_poset():
    blocks = BlockStructure(4, ())
    a = build_support_poset((1, 0, 3, 2), (2, 2, 1, 1), blocks)
    b = build_support_poset((1, 0, 3, 2), (2, 2, 1, 1), blocks, engine="kohnert")
    assert to_json(a) == to_json(b)


def test_empty_support():
    blocks = BlockStructure(2, (1,))
    P = build_support_poset((1, 0), (0, 1), blocks)
    assert len(P) == 0
    assert to_dot(P) == "digraph P {\n  rankdir=BT;\n}\n"
    assert not check_interval(P).ok


def test_mobius_sum_requires_interval():
    blocks = BlockStructure(3, ())
    gamma = (0, 0, 0)
    a = t_transform_signed(gamma, 1, 2)
    b = t_transform_signed(gamma, 2, 3)
    nodes = (gamma, a, b)
    P = SphericalPoset(blocks, gamma, nodes, {x: orbit_rank(x, blocks) for x in nodes}, frozenset())
    assert not check_interval(P).ok
    with pytest.raises(ValueError):
        mobius_sum(P)


def test_dot_and_json_are_deterministic():
    blocks = BlockStructure(3, ())
    P = build_orbit_poset((4, 4, 3), blocks)
    Q = build_orbit_poset((4, 4, 3), blocks)
    assert to_dot(P) == to_dot(Q)
    assert to_json(P) == to_json(Q)
    assert 'label="t_{13}"' in to_dot(P)


def test_structure_stats():
    st = structure_stats((0, 3, 2, 3))
    assert st.leftmin == (0, 0, 0, 0)
    assert st.rightmax == (3, 3, 3, 3)
    assert st.interweaved == {(2, 3): 2}
    assert st.undefined_centers() == []
    assert structure_stats((0, 3, 2, 3), BlockStructure(4, (2,))).interweaved == {}
    assert prefix_gap_bound((0, 3, 2, 3), 1) == 3


def test_goingup_matches_membership_small():
    alpha = act(Permutation.parse("2314"), (3, 2, 1, 0))
    assert alpha == (1, 3, 2, 0)
    blocks = BlockStructure(4, ())
    assert structure_stats(alpha).undefined_centers() == []
    kappa = key_polynomial(alpha)
    for gamma in dschur_expand(kappa, blocks).coeffs:
        P = build_support_poset(alpha, gamma, blocks)
        for b in P.nodes:
            for i, j in blocks.pairs():
                if b[i - 1] - i > b[j - 1] - j:
                    assert goingup_allows(b, i, j, alpha, blocks) == (t_transform_signed(b, i, j) in P)


def test_goingup_validates():
    blocks = BlockStructure(3, (1,))
    with pytest.raises(ValueError):
        goingup_allows((1, 1, 0), 1, 2, (0, 1, 1), blocks)
    with pytest.raises(ValueError):
        goingup_allows((0, 0, 2), 2, 3, (0, 1, 1), BlockStructure(3, ()))  # not raising


def test_support_poset_of_a_standard_coxeter_instance():
    c = Permutation.parse("2314")
    lam = (3, 2, 1, 0)
    blocks = BlockStructure.from_I({3}, 4)
    alpha = act(c, lam)
    for gamma, coeff in dschur_expand(key_polynomial(alpha), blocks).coeffs.items():
        P = build_support_poset(alpha, gamma, blocks)
        assert check_diamond(P) and check_interval(P).ok
        assert P.signed_sum() == coeff
