from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from levisphere.compositions import (
    BlockStructure,
    act,
    contains_comp_pattern,
    dominance_leq,
    format_composition,
    format_split_partition,
    is_split_partition,
    parse_composition,
    parse_split_partition,
    partitions_in_box,
    raises,
    t_transform,
    t_transform_signed,
)
from levisphere.symgroup import Permutation


@st.composite
def block_structures(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    D = draw(st.sets(st.integers(1, n - 1))) if n > 1 else set()
    return BlockStructure(n, tuple(D))


def test_from_I_and_from_D_agree():
    b = BlockStructure.from_I({2, 3, 4, 5, 6}, 9)
    assert b.D == (1, 7, 8)
    assert b == BlockStructure.from_D((1, 7, 8, 9), 9)  # a trailing n is dropped
    assert b.sizes == (1, 6, 1, 1)
    assert b.blocks[1] == (2, 3, 4, 5, 6, 7)
    assert b.cuts == (0, 1, 7, 8, 9)
    assert str(b) == "1,7,8,9"


def test_bad_block_entries():
    with pytest.raises(ValueError):
        BlockStructure.from_I({0}, 3)
    with pytest.raises(ValueError):
        BlockStructure(3, (4,))


@given(block_structures())
def test_blocks_partition_the_positions(b):
    flat = [i for blk in b.blocks for i in blk]
    assert flat == list(range(1, b.n + 1))
    assert b.I == {i for i in range(1, b.n) if b.same_block(i, i + 1)}
    assert all(b.same_block(i, j) for i, j in b.pairs())
    assert sum(comb(m, 2) for m in b.sizes) == len(list(b.pairs()))


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.permutations(range(1, n + 1)), st.permutations(range(1, n + 1)), st.lists(st.integers(0, 5), min_size=n, max_size=n))))
def test_act_is_a_left_action(data):
    u, v, alpha = Permutation(tuple(data[0])), Permutation(tuple(data[1])), tuple(data[2])
    assert act(u * v, alpha) == act(u, act(v, alpha))
    assert act(Permutation.identity(len(alpha)), alpha) == alpha


def test_act_golden():
    lam = (9, 8, 7, 6, 5, 4, 3, 2, 1)
    assert act(Permutation.parse("234567918"), lam) == (2, 9, 8, 7, 6, 5, 4, 1, 3)
    assert act(Permutation.parse("765432918"), lam) == (2, 4, 5, 6, 7, 8, 9, 1, 3)


@given(st.lists(st.integers(-3, 8), min_size=2, max_size=6), st.data())
def test_t_transform_involution_and_direction(beta, data):
    n = len(beta)
    i = data.draw(st.integers(1, n - 1))
    j = data.draw(st.integers(i + 1, n))
    moved = t_transform_signed(beta, i, j)
    assert t_transform_signed(moved, i, j) == tuple(beta)
    assert sum(moved) == sum(beta)
    if beta[i - 1] - i != beta[j - 1] - j:
        assert raises(beta, i, j) != raises(moved, i, j)


def test_t_transform_checks_sign():
    assert t_transform((0, 3), 1, 2) == (2, 1)
    with pytest.raises(ValueError):
        t_transform((3, 0), 1, 2)
    with pytest.raises(ValueError):
        raises((1, 2), 1, 2)


def test_dominance():
    assert dominance_leq((0, 1, 2), (2, 1, 0))
    assert not dominance_leq((2, 1, 0), (0, 1, 2))
    assert dominance_leq((1, 1), (1, 1))
    with pytest.raises(ValueError):
        dominance_leq((1, 0), (1, 1))


def _pattern_brute(alpha, pat):
    k = len(pat)
    for idx in combinations(range(len(alpha)), k):
        vals = [alpha[t] for t in idx]
        good = True
        for a, b in combinations(range(k), 2):
            if (vals[a] < vals[b]) != (pat[a] < pat[b]) or (vals[a] == vals[b]) != (pat[a] == pat[b]):
                good = False
            elif abs(vals[a] - vals[b]) < abs(pat[a] - pat[b]):
                good = False
        if good:
            return True
    return False


def test_composition_pattern_bruteforce():
    pats = ((0, 1, 2), (1, 0, 3, 2), (0, 0, 1, 1), (0, 0, 2, 1), (1, 0, 2, 2))
    for alpha in product(range(4), repeat=5):
        for p in pats:
            assert contains_comp_pattern(alpha, p) == _pattern_brute(alpha, p), (alpha, p)


def test_composition_pattern_gap_matters():
    assert contains_comp_pattern((0, 2, 4), (0, 1, 2))
    assert not contains_comp_pattern((0, 1, 1), (0, 1, 2))
    assert not contains_comp_pattern((0, 1, 2), (0, 1, 3))


def test_composition_text():
    assert parse_composition("2,9,8,7") == (2, 9, 8, 7)
    assert parse_composition("2987") == (2, 9, 8, 7)
    assert parse_composition("") == ()
    assert format_composition((10, 0)) == "10,0"
    with pytest.raises(ValueError):
        parse_composition("1,-1")
    with pytest.raises(ValueError):
        parse_composition("1,2", n=3)


def test_split_partition_text():
    b = BlockStructure.from_D((1, 7, 8), 9)
    g = parse_split_partition("9|765554|2|2", b)
    assert g == (9, 7, 6, 5, 5, 5, 4, 2, 2)
    assert parse_split_partition("9|7,6,5,5,5,4|2|2", b) == g
    assert parse_split_partition("9,7,6,5,5,5,4,2,2", b) == g
    assert format_split_partition(g, b) == "9|765554|2|2"
    assert format_split_partition((10, 0), BlockStructure(2, (1,))) == "10|0"
    assert is_split_partition(g, b)
    assert not is_split_partition((0, 0, 1, 0, 0, 0, 0, 0, 0), b)
    with pytest.raises(ValueError):
        parse_split_partition("9|567554|2|2", b)
    with pytest.raises(ValueError):
        parse_split_partition("9|76555|2|2", b)


@pytest.mark.parametrize("n,m", [(1, 3), (3, 3), (4, 2), (5, 3)])
def test_partitions_in_box(n, m):
    ps = partitions_in_box(n, m)
    assert len(ps) == comb(n + m, n)
    assert len(set(ps)) == len(ps)
    assert all(all(a >= b for a, b in zip(p, p[1:])) and max(p) <= m for p in ps)
