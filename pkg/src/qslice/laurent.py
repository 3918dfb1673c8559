"""Centered Laurent expansions sum (q - p)^{*n} a_n and their analysis.

A rational function expands at any center with an exact finite principal
part (valuations of numerator and denominator at the center) and a regular
part obtained by complex power-series division on the center's slice.
Negative *-powers are evaluated through their closed slice form and the
two-point interpolation across spheres, never by coefficient inversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cpoly
from ._kernels import laurent_eval as _k_laurent_eval
from ._kernels import quat_mul
from .errors import PoleEvaluation, RealPointAmbiguous
from .geometry import RegionSpec, same_line
from .quaternion import I as QI
from .quaternion import (Quaternion, embed, orthogonal_unit, slice_unit_or,
                         unit_imaginary)
from .rational import QRational
from .rootfind import real_poly_roots

DEFAULT_NMAX = 80
CONTOUR_NODES = 256
CONTOUR_MAX_NODES = 4096


@dataclass(frozen=True)
class Classification:
    """Singularity classification read off a coefficient window."""

    kind: str  # "removable" | "pole" | "no_pole_of_order_le"
    order: int = 0

    def __str__(self):
        if self.kind == "pole":
            return f"pole({self.order})"
        if self.kind == "no_pole_of_order_le":
            return f"no_pole_of_order_le({self.order})"
        return self.kind


@dataclass(frozen=True)
class LaurentExpansion:
    """Coefficient window of an expansion centered at p on a fixed slice."""

    center: Quaternion
    i_unit: Quaternion
    n_min: int
    n_max: int
    coeffs: np.ndarray  # (n_max - n_min + 1, 4)
    exact_negative_tail: bool
    r1: float
    r2: float
    radii_exact: bool

    def coefficient(self, n: int) -> Quaternion:
        if self.n_min <= n <= self.n_max:
            return Quaternion.from_array(self.coeffs[n - self.n_min])
        return Quaternion(0.0)

    def convergence_shell(self) -> RegionSpec:
        r2 = self.r2 if math.isfinite(self.r2) else math.inf
        return RegionSpec.shell(self.center, self.r1, max(r2, 1e-300))

    def in_region(self, q: Quaternion) -> bool:
        return self.convergence_shell().contains(q)

    def classify(self) -> Classification:
        return classify(self)


def classify(e: LaurentExpansion) -> Classification:
    """Pole/removable from an exact tail; only a bound otherwise."""
    if e.exact_negative_tail:
        if e.n_min < 0:
            return Classification("pole", -e.n_min)
        return Classification("removable")
    return Classification("no_pole_of_order_le", abs(e.n_min))


def _split_coeff_array(coeffs: np.ndarray, i_unit: Quaternion, j_unit: Quaternion):
    iv = i_unit.to_array()
    jv = j_unit.to_array()
    kv = (i_unit * j_unit).to_array()
    alpha = coeffs[:, 0] + 1j * (coeffs @ iv)
    beta = (coeffs @ jv) + 1j * (coeffs @ kv)
    return alpha, beta


def expand_rational(a: QRational, p: Quaternion, n_max: int = DEFAULT_NMAX) -> LaurentExpansion:
    """Expansion of a rational function at an arbitrary center.

    Splits the numerator on the center's slice (real centers use the i
    convention), reads the principal part off the valuations at the center
    and long-divides for the regular part up to n_max.  The radii are
    exact: R1 = 0 and R2 = distance to the nearest surviving singularity.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    i_unit = slice_unit_or(p, QI)
    j_unit = orthogonal_unit(i_unit)
    zeta = p.to_complex()

    n1, n2 = a.numerator.slice_split(i_unit, j_unit)
    d = a.denominator.coeffs.astype(np.complex128)

    v = cpoly.valuation(d, zeta, rel_tol=1e-8) if a.denominator.degree >= 1 else 0
    if v >= cpoly.INF_VALUATION:
        raise ValueError("denominator is identically zero")
    val_n = min(cpoly.valuation(n1, zeta, rel_tol=1e-8),
                cpoly.valuation(n2, zeta, rel_tol=1e-8))
    n_min = -max(0, v - min(val_n, v))
    if a.numerator.is_zero:
        n_min = 0

    d_shift = cpoly.taylor_shift(d, zeta)
    env = d_shift[v:]
    terms = n_max + v + 1
    series = []
    for comp in (n1, n2):
        comp_shift = cpoly.taylor_shift(comp.astype(np.complex128), zeta)
        series.append(cpoly.series_div(comp_shift, env, terms))
    alpha, beta = series

    length = n_max - n_min + 1
    out = np.zeros((length, 4))
    iv = i_unit.to_array()
    jv = j_unit.to_array()
    kv = (i_unit * j_unit).to_array()
    for idx in range(length):
        n = n_min + idx
        k = n + v
        av, bv = alpha[k], beta[k]
        row = np.zeros(4)
        row[0] = av.real
        row += av.imag * iv
        row += bv.real * jv
        row += bv.imag * kv
        out[idx] = row

    r2 = math.inf
    if a.denominator.degree >= 1:
        for z, mult in real_poly_roots(a.denominator).roots:
            if abs(z - zeta) <= 1e-7 * (1.0 + abs(zeta)):
                continue
            eff = mult - min(cpoly.valuation(n1, z, rel_tol=1e-8),
                             cpoly.valuation(n2, z, rel_tol=1e-8), mult)
            if eff > 0:
                r2 = min(r2, abs(z - zeta))
    return LaurentExpansion(p, i_unit, n_min, n_max, out,
                            exact_negative_tail=True, r1=0.0, r2=r2,
                            radii_exact=True)


def expansion_from_coefficients(p: Quaternion, coeffs, n_min: int,
                                exact_negative_tail: bool = False) -> LaurentExpansion:
    """Wrap a user-supplied coefficient window (generators, experiments)."""
    i_unit = slice_unit_or(p, QI)
    rows = []
    for c in coeffs:
        if isinstance(c, Quaternion):
            rows.append(c.to_array())
        else:
            rows.append(np.array([float(c), 0.0, 0.0, 0.0]))
    arr = np.array(rows, dtype=np.float64).reshape(-1, 4)
    n_max = n_min + arr.shape[0] - 1
    e = LaurentExpansion(p, i_unit, n_min, n_max, arr,
                         exact_negative_tail=exact_negative_tail,
                         r1=math.nan, r2=math.nan, radii_exact=False)
    r1, r2 = radii(e)
    return LaurentExpansion(p, i_unit, n_min, n_max, arr,
                            exact_negative_tail=exact_negative_tail,
                            r1=r1, r2=r2, radii_exact=False)


def star_power_value(p: Quaternion, n: int, q: Quaternion) -> Quaternion:
    """Value of (q - p)^{*n} (regular reciprocal power for n < 0).

    Computed from the closed slice form via the two-point interpolation.
    Negative powers are undefined on the sphere of p (the reciprocal's
    denominator vanishes there) and raise PoleEvaluation.
    """
    if n == 0:
        return Quaternion(1.0)
    tol = 1e-12 * (1.0 + abs(p) + abs(q))
    if n < 0:
        # the reciprocal's real denominator vanishes on the whole sphere of
        # p; q there (conjugate point included) is out of domain
        if math.hypot(q.x0 - p.x0, q.im_norm() - p.im_norm()) <= tol:
            raise PoleEvaluation(f"(q-p)^{{*{n}}} undefined on the sphere of {p}")
    if same_line(q, p):
        unit = QI
        for cand in (q, p):
            try:
                unit = cand.slice_unit()
                break
            except RealPointAmbiguous:
                continue
        uv = unit.to_array()
        zq = complex(q.x0, float(q.to_array() @ uv))
        zp = complex(p.x0, float(p.to_array() @ uv))
        w = zq - zp
        if n < 0 and abs(w) <= tol:
            raise PoleEvaluation(f"(q-p)^{{*{n}}} undefined at {q}")
        return embed(w ** n, unit)
    i_unit = p.slice_unit()
    j_unit = q.slice_unit()
    zeta = p.to_complex()
    zq = q.to_complex()
    w1 = zq - zeta
    w2 = zq.conjugate() - zeta
    if n < 0 and abs(w1) <= tol:
        raise PoleEvaluation(f"(q-p)^{{*{n}}} undefined on the sphere of {p}")
    half = Quaternion(0.5)
    ji = j_unit * i_unit
    av = (Quaternion(1.0) - ji) * half
    bv = (Quaternion(1.0) + ji) * half
    return av * embed(w1 ** n, i_unit) + bv * embed(w2 ** n, i_unit)


def eval_truncated_many(e: LaurentExpansion, pts: np.ndarray) -> np.ndarray:
    """Kernel-backed partial sums at an (N, 4) array; NaN rows on the
    center's sphere when the window has negative powers."""
    j_unit = orthogonal_unit(e.i_unit)
    alpha, beta = _split_coeff_array(e.coeffs, e.i_unit, j_unit)
    zeta = e.center.to_complex()
    sing_tol = 1e-12 * (1.0 + abs(e.center))
    return _k_laurent_eval(zeta.real, zeta.imag, e.i_unit.to_array(),
                           j_unit.to_array(), alpha, beta, e.n_min,
                           np.asarray(pts, dtype=np.float64).reshape(-1, 4),
                           sing_tol)


def eval_truncated(e: LaurentExpansion, q: Quaternion) -> Quaternion:
    """Partial sum of the window at one point."""
    row = eval_truncated_many(e, q.to_array()[None, :])[0]
    if not np.all(np.isfinite(row)):
        raise PoleEvaluation(f"negative powers undefined at {q}")
    return Quaternion.from_array(row)


def radii(e: LaurentExpansion) -> tuple[float, float]:
    """(R1, R2) from the coefficient window.

    R1 is exactly 0 for exact finite tails, otherwise a limsup estimate
    from the deepest max(8, tail/4) coefficients; R2 is estimated the same
    way from the highest positive-power coefficients.
    """
    norms = np.sqrt((e.coeffs * e.coeffs).sum(axis=1))
    if e.exact_negative_tail:
        r1 = 0.0
    else:
        ms = np.arange(1, -e.n_min + 1)  # m for n = -m
        vals = []
        depth = len(ms)
        take = max(8, depth // 4)
        for m in ms[max(0, depth - take):]:
            nrm = norms[-m - e.n_min]
            vals.append(nrm ** (1.0 / m) if nrm > 0 else 0.0)
        r1 = max(vals) if vals else 0.0
    r2 = math.inf
    if e.n_max >= 1:
        top = e.n_max - max(0, e.n_min)
        take = max(8, top // 4)
        vals = []
        for n in range(max(1, e.n_max - take + 1), e.n_max + 1):
            nrm = norms[n - e.n_min]
            vals.append(nrm ** (1.0 / n) if nrm > 0 else 0.0)
        est = max(vals) if vals else 0.0
        r2 = math.inf if est == 0.0 else 1.0 / est
    return r1, r2


def contour_coefficients(fvals, p: Quaternion, i_unit: Quaternion, radius: float,
                         ns, nodes: int | None = None) -> dict[int, Quaternion]:
    """Coefficients by trapezoidal quadrature on the slice circle.

    a_n = (1/2 pi I) integral over gamma_I of (s-p)^{-n-1} f(s) ds with
    gamma_I(t) = p + R e^{2 pi I t}; equispaced nodes are spectrally
    accurate for analytic integrands.  With nodes=None the node count
    doubles from 256 until successive estimates agree to 1e-9 (cap 4096).
    """
    i_unit = unit_imaginary(i_unit, tol=1e-8)
    ns = list(ns)

    def run(m_nodes: int) -> dict[int, Quaternion]:
        t = np.arange(m_nodes) / m_nodes
        ring = np.exp(2j * np.pi * t)
        fv = np.empty((m_nodes, 4))
        for idx in range(m_nodes):
            s = p + embed(radius * ring[idx], i_unit)
            fv[idx] = fvals(s).to_array()
        out = {}
        for n in ns:
            fac = radius ** (-n) * np.exp(-2j * np.pi * n * t)
            emb = np.zeros((m_nodes, 4))
            emb[:, 0] = fac.real
            emb += np.multiply.outer(fac.imag, i_unit.to_array())
            prod = quat_mul(emb, fv)
            out[n] = Quaternion.from_array(prod.mean(axis=0))
        return out

    if nodes is not None:
        return run(nodes)
    m_nodes = CONTOUR_NODES
    prev = run(m_nodes)
    while m_nodes < CONTOUR_MAX_NODES:
        m_nodes *= 2
        cur = run(m_nodes)
        worst = max(abs(cur[n] - prev[n]) for n in ns)
        scale = 1.0 + max(abs(cur[n]) for n in ns)
        if worst <= 1e-9 * scale:
            return cur
        prev = cur
    return prev
