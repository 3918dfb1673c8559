"""Pure-numpy kernel implementations (fallback backend).

Same contracts as the compiled `_native` extension: float64 arrays with
quaternion components on the last axis in the order (1, i, j, k).
"""

import numpy as np

BACKEND = "python"


def quat_mul(a, b):
    """Componentwise Hamilton product; broadcasts over leading axes."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def star_convolve(a, b):
    """Coefficient convolution with quaternion products, left factor first.

    a: (m, 4), b: (n, 4) -> (m + n - 1, 4) with out[s] = sum a_i * b_{s-i}.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    m, n = a.shape[0], b.shape[0]
    if m == 0 or n == 0:
        return np.zeros((0, 4), dtype=np.float64)
    out = np.zeros((m + n - 1, 4), dtype=np.float64)
    for i in range(m):
        out[i:i + n] += quat_mul(a[i], b)
    return out


def poly_eval(coeffs, pts):
    """Evaluate sum q^n a_n at each point by left-Horner recursion.

    coeffs: (d+1, 4) low-to-high, pts: (N, 4) -> (N, 4).
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    pts = np.asarray(pts, dtype=np.float64)
    n_pts = pts.shape[0]
    if coeffs.shape[0] == 0:
        return np.zeros((n_pts, 4), dtype=np.float64)
    acc = np.broadcast_to(coeffs[-1], (n_pts, 4)).copy()
    for k in range(coeffs.shape[0] - 2, -1, -1):
        acc = coeffs[k] + quat_mul(pts, acc)
    return acc


def laurent_eval(px, py, iunit, junit, alpha, beta, nmin, pts, sing_tol):
    """Evaluate the window sum_{n=nmin}^{nmax} (q - p)^{*n} a_n at pts.

    The center is p = px + iunit*py (py >= 0) and the coefficients come
    pre-split on the slice basis (1, I, J, IJ) as a_n = alpha_n + beta_n*J.
    Points where a negative power is singular (slice coordinate within
    sing_tol of the center's, i.e. q on the sphere of p) get NaN rows.
    """
    pts = np.asarray(pts, dtype=np.float64)
    alpha = np.asarray(alpha, dtype=np.complex128)
    beta = np.asarray(beta, dtype=np.complex128)
    iunit = np.asarray(iunit, dtype=np.float64)
    junit = np.asarray(junit, dtype=np.float64)
    n_pts = pts.shape[0]
    length = alpha.shape[0]
    nmax = nmin + length - 1

    x = pts[:, 0]
    iv = pts[:, 1:4]
    y = np.sqrt(np.einsum("ij,ij->i", iv, iv))
    i_vec = iunit[1:4]
    safe_y = np.where(y > 0.0, y, 1.0)
    j_q = np.where((y > 0.0)[:, None], iv / safe_y[:, None], i_vec[None, :])

    w1 = (x - px) + 1j * (y - py)
    w2 = (x - px) + 1j * (-y - py)

    f1 = np.zeros(n_pts, dtype=np.complex128)
    g1 = np.zeros(n_pts, dtype=np.complex128)
    f2 = np.zeros(n_pts, dtype=np.complex128)
    g2 = np.zeros(n_pts, dtype=np.complex128)

    if nmax >= 0:
        for n in range(nmax, -1, -1):
            a_n = alpha[n - nmin]
            b_n = beta[n - nmin]
            f1 = f1 * w1 + a_n
            g1 = g1 * w1 + b_n
            f2 = f2 * w2 + a_n
            g2 = g2 * w2 + b_n

    singular = np.zeros(n_pts, dtype=bool)
    if nmin < 0:
        singular = np.abs(w1) <= sing_tol
        u1 = 1.0 / np.where(singular, 1.0, w1)
        u2 = 1.0 / np.where(singular, 1.0, w2)
        s1 = np.zeros(n_pts, dtype=np.complex128)
        t1 = np.zeros(n_pts, dtype=np.complex128)
        s2 = np.zeros(n_pts, dtype=np.complex128)
        t2 = np.zeros(n_pts, dtype=np.complex128)
        for m in range(-nmin, 0, -1):
            a_m = alpha[-m - nmin]
            b_m = beta[-m - nmin]
            s1 = (s1 + a_m) * u1
            t1 = (t1 + b_m) * u1
            s2 = (s2 + a_m) * u2
            t2 = (t2 + b_m) * u2
        f1 = f1 + s1
        g1 = g1 + t1
        f2 = f2 + s2
        g2 = g2 + t2

    # embed the four complex sums back into H and apply the two-point
    # interpolation (1 -+ J_q I)/2 between the slice values
    kunit = quat_mul(iunit, junit)
    val_z = _embed_pair(f1, g1, iunit, junit, kunit)
    val_zbar = _embed_pair(f2, g2, iunit, junit, kunit)

    dot = j_q @ i_vec
    cross = np.cross(j_q, i_vec)
    a_half = np.empty((n_pts, 4), dtype=np.float64)
    b_half = np.empty((n_pts, 4), dtype=np.float64)
    a_half[:, 0] = 0.5 * (1.0 + dot)
    a_half[:, 1:4] = -0.5 * cross
    b_half[:, 0] = 0.5 * (1.0 - dot)
    b_half[:, 1:4] = 0.5 * cross

    out = quat_mul(a_half, val_z) + quat_mul(b_half, val_zbar)
    if singular.any():
        out[singular] = np.nan
    return out


def _embed_pair(f, g, iunit, junit, kunit):
    """embed_I(f) + embed_I(g) * J as an (N, 4) array."""
    out = np.zeros((f.shape[0], 4), dtype=np.float64)
    out[:, 0] = f.real
    out += np.multiply.outer(f.imag, iunit)
    out += np.multiply.outer(g.real, junit)
    out += np.multiply.outer(g.imag, kunit)
    return out
