import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from levisphere.compositions import BlockStructure, act, parse_split_partition
from levisphere.keypoly import key_polynomial, pi_along
from levisphere.poly import SparsePoly
from levisphere.splitschur import (
    DSchurExpansion,
    alternant,
    dschur_expand,
    dschur_poly,
    is_multiplicity_free,
    is_split_symmetric,
    schur_poly,
    straighten,
    straighten_many,
)
from levisphere.symgroup import Permutation, canonical_reduced_word, longest_element


@st.composite
def blocks_and_vector(draw, max_n=6, max_part=4):
    n = draw(st.integers(1, max_n))
    D = draw(st.sets(st.integers(1, n - 1))) if n > 1 else set()
    beta = tuple(draw(st.lists(st.integers(0, max_part), min_size=n, max_size=n)))
    return BlockStructure(n, tuple(D)), beta


def random_split_partition(rng, blocks, max_part=3):
    out = []
    for m in blocks.sizes:
        out.extend(sorted((rng.randint(0, max_part) for _ in range(m)), reverse=True))
    return tuple(out)


@given(blocks_and_vector())
def test_straighten_matches_pi_w0(bb):
    """straighten(beta) describes pi_{w0(I)} x^beta."""
    blocks, beta = bb
    w0 = longest_element(blocks.I, blocks.n)
    lhs = pi_along(SparsePoly.monomial(beta), canonical_reduced_word(w0))
    r = straighten(beta, blocks)
    if r is None:
        assert lhs.is_zero()
    else:
        sign, gamma = r
        assert lhs == dschur_poly(gamma, blocks) * sign


def test_straighten_golden():
    b = BlockStructure.from_D((1, 7, 8), 9)
    assert straighten((9, 2, 8, 7, 6, 5, 4, 2, 2), b) == (-1, (9, 7, 6, 5, 5, 5, 4, 2, 2))
    assert straighten((0, 1), BlockStructure(2, ())) is None
    assert straighten((0, 2), BlockStructure(2, ())) == (-1, (1, 1))


@pytest.mark.parametrize("mu", [(0,), (2, 1), (2, 2, 0), (3, 1, 1), (2, 1, 0, 0)])
def test_schur_is_ratio_of_alternants(mu):
    m = len(mu)
    delta = [m - 1 - k for k in range(m)]
    lhs = schur_poly(mu) * alternant(delta)
    assert lhs == alternant([a + d for a, d in zip(mu, delta)])


def test_schur_counts():
    # number of SSYT of shape (2,1) with entries in [3] is 8; monomial (1,1,1) has Kostka 2
    s = schur_poly((2, 1, 0))
    assert sum(c for _, c in s.items()) == 8
    assert s.coeff((1, 1, 1)) == 2
    with pytest.raises(ValueError):
        schur_poly((0, 1))


def test_dschur_is_product_over_blocks():
    b = BlockStructure(4, (2,))
    g = (2, 1, 1, 0)
    x = [SparsePoly.variable(i, 4) for i in range(1, 5)]
    expected = (x[0] * x[0] * x[1] + x[0] * x[1] * x[1]) * (x[2] + x[3])
    assert dschur_poly(g, b) == expected
    with pytest.raises(ValueError):
        dschur_poly((0, 1, 0, 0), b)


def test_expansion_reconstructs_split_symmetric_input():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(2, 5)
        blocks = BlockStructure(n, tuple(d for d in range(1, n) if rng.random() < 0.4))
        want = {}
        for _ in range(rng.randint(1, 4)):
            g = random_split_partition(rng, blocks)
            want[g] = want.get(g, 0) + rng.randint(-3, 3)
        want = {g: c for g, c in want.items() if c}
        f = DSchurExpansion(blocks, want).reconstruct()
        assert is_split_symmetric(f, blocks)
        for use in (True, False):
            got = dschur_expand(f, blocks, use_kernels=use)
            assert got.coeffs == want
            assert got.reconstruct() == f


def test_key_polynomials_of_levi_stable_compositions_are_split_symmetric():
    w = Permutation.parse("2413")  # J(w) = {1, 3}
    blocks = BlockStructure.from_I({1, 3}, 4)
    kappa = key_polynomial(act(w, (3, 2, 1, 0)))
    assert is_split_symmetric(kappa, blocks)
    assert dschur_expand(kappa, blocks).reconstruct() == kappa


def test_kernel_and_python_expansions_agree():
    alpha = (0, 3, 1, 2, 0)
    kappa = key_polynomial(alpha)
    for D in [(), (1,), (2, 4), (1, 2, 3, 4)]:
        b = BlockStructure(5, D)
        assert dschur_expand(kappa, b).coeffs == dschur_expand(kappa, b, use_kernels=False).coeffs


def test_straighten_many_matches_scalar():
    rng = np.random.default_rng(0)
    exps = rng.integers(0, 5, size=(300, 6))
    b = BlockStructure(6, (2, 3))
    signs, rows = straighten_many(exps, b)
    for row, sg, out in zip(exps.tolist(), signs.tolist(), rows.tolist()):
        r = straighten(row, b)
        assert (sg == 0) == (r is None)
        if r is not None:
            assert (sg, tuple(out)) == r


def test_expansion_json_and_mult_free():
    b = BlockStructure(3, (1, 2))
    e = dschur_expand(schur_poly((2, 1, 0)), b)
    assert e.coeff("1|1|1") == 2 and e.coeff((2, 1, 0)) == 1
    assert not is_multiplicity_free(e)
    assert e.max_coeff() == 2
    back = DSchurExpansion.from_json_obj(e.to_json_obj(), b)
    assert back.coeffs == e.coeffs
    assert is_multiplicity_free({(1, 0, 0): 1})


def test_dschur_expand_rejects_wrong_n():
    with pytest.raises(ValueError):
        dschur_expand(SparsePoly.one(2), BlockStructure(3, ()))


def test_exhaustive_straighten_small():
    b = BlockStructure(3, ())
    w0 = canonical_reduced_word(longest_element({1, 2}, 3))
    for beta in product(range(4), repeat=3):
        r = straighten(beta, b)
        lhs = pi_along(SparsePoly.monomial(beta), w0)
        assert lhs == (SparsePoly.zero(3) if r is None else dschur_poly(r[1], b) * r[0])
    assert parse_split_partition("210", b) == (2, 1, 0)
