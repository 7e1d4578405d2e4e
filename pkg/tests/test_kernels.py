"""The numba kernels and the numpy fallback must produce the same polynomials."""

import os
import subprocess
import sys

import numpy as np
import pytest

from levisphere import _kernels
from levisphere.compositions import BlockStructure
from levisphere.keypoly import key_polynomial, pi_along
from levisphere.poly import SparsePoly
from levisphere.splitschur import straighten_many

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not available")


def as_dict(keys, coeffs):
    return dict(zip(keys.tolist(), coeffs.tolist()))


def random_packed(rng, n, deg, m):
    exps = rng.integers(0, deg + 1, size=(m, n))
    coeffs = rng.integers(-50, 51, size=m)
    f = SparsePoly.from_arrays(exps, coeffs)
    exps, coeffs = f.to_arrays()
    base = n * deg + 1  # no exponent can exceed the total degree
    return _kernels.pack(exps, base), coeffs, base


def test_pack_round_trip():
    rng = np.random.default_rng(1)
    exps = rng.integers(0, 7, size=(50, 5))
    keys = _kernels.pack(exps, 7)
    assert np.array_equal(_kernels.unpack(keys, 5, 7), exps)
    assert _kernels.packable(5, 6, 10)
    assert not _kernels.packable(40, 100, 10)


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_pi_packed_backends_agree(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    keys, coeffs, base = random_packed(rng, n, 4, 40)
    word = rng.integers(1, n, size=6).tolist()
    out = {}
    for be in ("numpy", "numba"):
        prev = _kernels.set_backend(be)
        try:
            k, c = keys, coeffs
            for i in word:
                k, c = _kernels.pi_packed(k, c, i, n, base)
            out[be] = as_dict(k, c)
        finally:
            _kernels.set_backend(prev)
    assert out["numpy"] == out["numba"]
    assert all(v != 0 for v in out["numba"].values())


@needs_numba
def test_straighten_backends_agree():
    rng = np.random.default_rng(7)
    exps = rng.integers(0, 6, size=(500, 7))
    starts = np.array([0, 2, 3], dtype=np.int64)
    stops = np.array([2, 3, 7], dtype=np.int64)
    res = {}
    for be in ("numpy", "numba"):
        prev = _kernels.set_backend(be)
        try:
            res[be] = _kernels.straighten_packed(exps, starts, stops)
        finally:
            _kernels.set_backend(prev)
    s1, r1 = res["numpy"]
    s2, r2 = res["numba"]
    assert np.array_equal(s1, s2)
    assert np.array_equal(r1[s1 != 0], r2[s2 != 0])


def test_key_polynomial_identical_on_numpy_backend(numpy_backend):
    alpha = (0, 2, 3, 1, 2)
    f = pi_along(SparsePoly.monomial((3, 2, 2, 1, 0)), (2, 3, 1, 2, 4, 3))
    g = pi_along(SparsePoly.monomial((3, 2, 2, 1, 0)), (2, 3, 1, 2, 4, 3), use_kernels=False)
    assert f == g
    b = BlockStructure(5, (2,))
    signs, _ = straighten_many(key_polynomial(alpha).to_arrays()[0], b)
    assert set(signs.tolist()) <= {-1, 0, 1}


def test_set_backend_validates():
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")


def test_env_var_disables_numba():
    env = dict(os.environ, LEVISPHERE_NO_NUMBA="1")
    code = (
        "from levisphere import _kernels, key_polynomial;"
        "print(_kernels.HAVE_NUMBA, _kernels.backend(), len(key_polynomial((0, 1, 2))))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "numpy", "7"]
