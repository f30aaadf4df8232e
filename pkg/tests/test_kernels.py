import numpy as np
import pytest

from g2cubics import _kernels, fano
from g2cubics._kernels import _pure

BACKENDS = _kernels.backends()


def _e7_gens():
    from g2cubics.fano import _scaled
    return _scaled([g for _, g in fano.point_generators(7)])


def test_backend_selected():
    assert _kernels.BACKEND in BACKENDS


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
def test_cython_matches_pure_closure():
    ints, denom = _e7_gens()
    fast, t1 = BACKENDS["cython"].closure(ints, denom, 10**5)
    slow, t2 = _pure.closure(ints, denom, 10**5)
    assert not t1 and not t2
    assert len(fast) == len(slow) == 6048
    key = lambda arr: sorted(map(bytes, arr.reshape(len(arr), -1).astype(np.int64)))
    assert key(fast) == key(slow)


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
def test_cython_matches_pure_checks():
    ints, denom = _e7_gens()
    elements, _ = BACKENDS["cython"].closure(ints, denom, 10**5)
    rng = np.random.default_rng(0)
    noisy = elements[:50].copy()
    noisy[::7, 0, 0] += 1
    for mats in (elements, noisy):
        a = BACKENDS["cython"].automorphism_residuals(mats, denom)
        b = _pure.automorphism_residuals(mats, denom)
        assert np.array_equal(np.asarray(a), np.asarray(b))
    assert np.count_nonzero(BACKENDS["cython"].automorphism_residuals(noisy, denom)) > 0
    sample = elements[rng.choice(len(elements), 200, replace=False)]
    assert np.array_equal(np.asarray(BACKENDS["cython"].element_orders(sample, denom)),
                          np.asarray(_pure.element_orders(sample, denom)))


def test_pure_truncation():
    ints, denom = _e7_gens()
    elements, truncated = _pure.closure(ints, denom, 50)
    assert truncated and len(elements) == 51


def test_element_order_cap():
    m = np.array([[[1, 1], [0, 1]]], dtype=np.int64)   # unipotent: infinite order
    assert _pure.element_orders(m, 1, max_power=20)[0] == -1
    assert _kernels.element_orders(np.eye(2, dtype=np.int64)[None], 1)[0] == 1


def test_lattice_exit_detected():
    g = np.array([[[1, 1], [1, 0]]], dtype=np.int64)
    with pytest.raises(ValueError):
        _pure.closure(g, 2, 10)


def test_env_var_forces_pure_backend():
    import os
    import subprocess
    import sys
    env = dict(os.environ, G2CUBICS_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from g2cubics import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure"
