import numpy as np
import pytest

from qslice._kernels import backends

BACKENDS = backends()
HAVE_NATIVE = "native" in BACKENDS

pytestmark = pytest.mark.skipif(not HAVE_NATIVE,
                                reason="native kernel extension not built")


def arrays(rng, n):
    return np.array([[rng.uniform(-2, 2) for _ in range(4)] for _ in range(n)])


def test_star_convolve_parity(rng):
    a = arrays(rng, 9)
    b = arrays(rng, 7)
    got_py = BACKENDS["python"].star_convolve(a, b)
    got_nat = BACKENDS["native"].star_convolve(a, b)
    assert got_py.shape == got_nat.shape == (15, 4)
    assert np.abs(got_py - got_nat).max() <= 1e-13


def test_poly_eval_parity(rng):
    coeffs = arrays(rng, 8)
    pts = arrays(rng, 200)
    got_py = BACKENDS["python"].poly_eval(coeffs, pts)
    got_nat = BACKENDS["native"].poly_eval(coeffs, pts)
    assert np.abs(got_py - got_nat).max() <= 1e-10


def test_laurent_eval_parity(rng):
    alpha = np.array([complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                      for _ in range(12)])
    beta = np.array([complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                     for _ in range(12)])
    iunit = np.array([0.0, 1.0, 0.0, 0.0])
    junit = np.array([0.0, 0.0, 1.0, 0.0])
    pts = arrays(rng, 150)
    args = (0.3, 0.8, iunit, junit, alpha, beta, -4, pts, 1e-12)
    got_py = BACKENDS["python"].laurent_eval(*args)
    got_nat = BACKENDS["native"].laurent_eval(*args)
    mask_py = np.isfinite(got_py).all(axis=1)
    mask_nat = np.isfinite(got_nat).all(axis=1)
    assert (mask_py == mask_nat).all()
    assert np.abs(got_py[mask_py] - got_nat[mask_py]).max() <= 1e-9


def test_laurent_eval_singular_rows():
    # points on the center's sphere with negative powers become NaN rows
    alpha = np.array([1.0 + 0j, 0j])
    beta = np.zeros(2, dtype=complex)
    iunit = np.array([0.0, 1.0, 0.0, 0.0])
    junit = np.array([0.0, 0.0, 1.0, 0.0])
    pts = np.array([[0.0, 0.0, 1.0, 0.0],   # on the unit sphere
                    [0.0, -1.0, 0.0, 0.0],  # conjugate point: also excluded
                    [2.0, 0.0, 0.0, 0.0]])
    for impl in BACKENDS.values():
        out = impl.laurent_eval(0.0, 1.0, iunit, junit, alpha, beta, -1, pts, 1e-9)
        assert not np.isfinite(out[0]).any()
        assert not np.isfinite(out[1]).any()
        assert np.isfinite(out[2]).all()


def test_poly_eval_zero_poly():
    pts = np.zeros((3, 4))
    for impl in BACKENDS.values():
        out = impl.poly_eval(np.zeros((0, 4)), pts)
        assert out.shape == (3, 4) and not out.any()
