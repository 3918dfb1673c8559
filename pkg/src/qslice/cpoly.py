"""Dense univariate polynomial helpers over R or C.

Coefficient arrays are 1-D numpy arrays in low-to-high order throughout the
package; these routines are shared by the root finder, the quotient
normalization and the Laurent expansion.
"""

from __future__ import annotations

import numpy as np

# Conventional valuation of the zero polynomial.
INF_VALUATION = 10 ** 9


def trim(c: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Drop leading (highest-degree) coefficients with magnitude <= tol."""
    c = np.asarray(c)
    n = c.shape[0]
    while n > 0 and np.abs(c[n - 1]) <= tol:
        n -= 1
    return c[:n]


def polyval(c: np.ndarray, x):
    """Horner evaluation; x may be scalar or array."""
    c = np.asarray(c)
    if c.shape[0] == 0:
        return np.zeros_like(np.asarray(x)) if np.ndim(x) else type(x)(0)
    acc = np.full_like(np.asarray(x, dtype=np.result_type(c, x)), c[-1]) \
        if np.ndim(x) else c[-1]
    for k in range(c.shape[0] - 2, -1, -1):
        acc = acc * x + c[k]
    return acc


def polymul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros(0, dtype=np.result_type(a, b))
    return np.convolve(a, b)


def polydivmod(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Long division a = q*b + r with deg r < deg b.  b must be nonzero."""
    a = np.asarray(a).astype(np.result_type(a, b), copy=True)
    b = np.asarray(b)
    b = trim(b)
    if b.shape[0] == 0:
        raise ZeroDivisionError("polynomial division by zero")
    da, db = a.shape[0] - 1, b.shape[0] - 1
    if da < db:
        return np.zeros(0, dtype=a.dtype), a
    q = np.zeros(da - db + 1, dtype=a.dtype)
    lead = b[-1]
    for k in range(da - db, -1, -1):
        coef = a[db + k] / lead
        q[k] = coef
        a[k:db + k + 1] -= coef * b
    return q, a[:db]


def synthetic_div(c: np.ndarray, z0) -> tuple[np.ndarray, complex]:
    """Divide by (x - z0): returns (quotient, remainder = p(z0))."""
    c = np.asarray(c)
    n = c.shape[0]
    if n == 0:
        return c, 0.0 * z0
    dtype = np.result_type(c, type(z0))
    q = np.zeros(max(n - 1, 0), dtype=dtype)
    acc = c[-1]
    for k in range(n - 2, -1, -1):
        q[k] = acc
        acc = c[k] + z0 * acc
    return q, acc


def taylor_shift(c: np.ndarray, z0) -> np.ndarray:
    """Coefficients of p(z0 + w) as a polynomial in w."""
    c = np.asarray(c)
    n = c.shape[0]
    dtype = np.result_type(c, type(z0))
    work = c.astype(dtype, copy=True)
    out = np.zeros(n, dtype=dtype)
    for k in range(n):
        work, rem = synthetic_div(work, z0)
        out[k] = rem
    return out


def series_div(num: np.ndarray, den: np.ndarray, nterms: int) -> np.ndarray:
    """Power-series quotient num/den to nterms coefficients; den[0] != 0."""
    num = np.asarray(num)
    den = np.asarray(den)
    dtype = np.result_type(num, den)
    out = np.zeros(nterms, dtype=dtype)
    d0 = den[0]
    for k in range(nterms):
        acc = num[k] if k < num.shape[0] else 0.0
        jmax = min(k, den.shape[0] - 1)
        if jmax >= 1:
            acc = acc - np.dot(out[k - jmax:k][::-1], den[1:jmax + 1])
        out[k] = acc / d0
    return out


def coeff_scale(c: np.ndarray, absx: float) -> float:
    """sum |c_k| max(1,|x|)^k; a magnitude bound used in residual tests."""
    c = np.asarray(c)
    if c.shape[0] == 0:
        return 0.0
    base = max(1.0, float(absx))
    return float(np.dot(np.abs(c), base ** np.arange(c.shape[0])))


def valuation(c: np.ndarray, z0, rel_tol: float = 1e-8) -> int:
    """Multiplicity of z0 as a root, by repeated synthetic division.

    Counts divisions whose remainder stays below rel_tol times the
    magnitude scale of the current polynomial at z0.  The zero polynomial
    gets the conventional (infinite) valuation INF_VALUATION, so callers
    taking minima ignore vanishing split components.
    """
    c = np.asarray(c)
    n = c.shape[0]
    if n == 0 or not np.any(np.abs(c) > 0):
        return INF_VALUATION
    count = 0
    work = c
    while work.shape[0] > 0:
        scale = coeff_scale(work, abs(z0))
        if scale == 0.0:
            break
        q, rem = synthetic_div(work, z0)
        if abs(rem) > rel_tol * scale:
            break
        count += 1
        work = q
    return count
