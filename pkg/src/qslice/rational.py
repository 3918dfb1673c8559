"""The ring of quotients in normalized real-denominator form.

Every *-quotient f^{-*} * g reduces to (1/f^s)(f^c * g), so a quotient is
stored as a numerator polynomial over a monic real denominator.  With the
denominator real, pointwise division and *-division coincide, which turns
the abstract quotient formulas into coefficient arithmetic.  Normalization
cancels every monic real irreducible factor of D that divides all four
real components of N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cpoly
from ._kernels import quat_mul
from .errors import NoConvergence, PoleEvaluation, ZeroDenominator
from .polynomial import (QPolynomial, RealPolynomial, left_divide_linear,
                         star_mul, try_divide_real)
from .quaternion import I as QI
from .quaternion import J as QJ
from .quaternion import Quaternion, Sphere, embed, slice_unit_or
from .zeros import sphere_factorization
from .rootfind import real_poly_roots

POLE_TOL = 1e-12
_CANCEL_REL = 1e-9

FLAG_REMOVABLE = "removable"
FLAG_ORDER0 = "order0_nonremovable"


def _flag_pole(order: int) -> str:
    return f"pole({order})"


class QRational:
    """Normalized pair N / D with D monic real."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: QPolynomial, denominator: RealPolynomial,
                 *, _normalized: bool = False):
        if _normalized:
            self.numerator = numerator
            self.denominator = denominator
            return
        n, d = _normalize(numerator, denominator)
        self.numerator = n
        self.denominator = d

    @classmethod
    def from_polynomial(cls, f: QPolynomial) -> "QRational":
        return cls(f, RealPolynomial.one(), _normalized=True)

    @classmethod
    def constant(cls, c: Quaternion | float) -> "QRational":
        return cls.from_polynomial(QPolynomial.constant(c))

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.denominator.is_one

    # --- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = star_mul(self.numerator, other.denominator.as_qpolynomial()) + \
            star_mul(other.numerator, self.denominator.as_qpolynomial())
        return QRational(n, self.denominator * other.denominator)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return QRational(-self.numerator, self.denominator, _normalized=True)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRational(star_mul(self.numerator, other.numerator),
                         self.denominator * other.denominator)

    def __rmul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, n: int):
        if n < 0:
            return reciprocal(self ** (-n))
        acc = QRational.constant(1.0)
        for _ in range(n):
            acc = acc * self
        return acc

    def reciprocal(self) -> "QRational":
        return reciprocal(self)

    def regular_conj(self) -> "QRational":
        return QRational(self.numerator.regular_conj(), self.denominator,
                         _normalized=True)

    def isclose(self, other: "QRational", tol: float) -> bool:
        left = star_mul(self.numerator, other.denominator.as_qpolynomial())
        right = star_mul(other.numerator, self.denominator.as_qpolynomial())
        return left.isclose(right, tol)

    # --- evaluation ----------------------------------------------------------

    def eval(self, q: Quaternion, tol: float = POLE_TOL) -> Quaternion:
        """Pointwise value D(q)^{-1} N(q); PoleEvaluation near roots of D."""
        zq = q.to_complex()
        dv = self.denominator.eval_complex(zq)
        if abs(dv) <= tol * (1.0 + self.denominator.scale_at(abs(q))):
            raise PoleEvaluation(f"denominator vanishes at {q}")
        inv = embed(1.0 / dv, slice_unit_or(q))
        return inv * self.numerator.eval(q)

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        """Batch evaluation; rows on (numerical) pole spheres become NaN."""
        pts = np.asarray(pts, dtype=np.float64).reshape(-1, 4)
        x = pts[:, 0]
        y = np.sqrt((pts[:, 1:] ** 2).sum(axis=1))
        zq = x + 1j * y
        dcoeffs = self.denominator.coeffs.astype(np.complex128)
        dv = cpoly.polyval(dcoeffs, zq)
        absq = np.abs(zq)
        dscale = np.zeros_like(absq)
        base = np.maximum(1.0, absq)
        for k, c in enumerate(self.denominator.coeffs):
            dscale += abs(c) * base ** k
        bad = np.abs(dv) <= POLE_TOL * (1.0 + dscale)
        inv = 1.0 / np.where(bad, 1.0, dv)
        # embed 1/D(z) on each point's slice
        safe_y = np.where(y > 0.0, y, 1.0)
        emb = np.zeros_like(pts)
        emb[:, 0] = inv.real
        emb[:, 1:] = (inv.imag / safe_y)[:, None] * pts[:, 1:]
        emb[y == 0.0, 1] = inv.imag[y == 0.0]  # i-convention at real points
        out = quat_mul(emb, self.numerator.eval_many(pts))
        out[bad] = np.nan
        return out

    def __repr__(self):
        return f"QRational[{self.numerator!r} / {self.denominator!r}]"


def _coerce(v):
    if isinstance(v, QRational):
        return v
    if isinstance(v, QPolynomial):
        return QRational.from_polynomial(v)
    if isinstance(v, RealPolynomial):
        return QRational.from_polynomial(v.as_qpolynomial())
    if isinstance(v, (Quaternion, int, float)):
        return QRational.constant(v)
    return NotImplemented


def _try_divide_exact(d: RealPolynomial, factor: RealPolynomial):
    q, r = d.divmod(factor)
    if r.is_zero or float(np.abs(r.coeffs).max()) <= _CANCEL_REL * (1.0 + d.norm()):
        return q
    return None


def _normalize(n_poly: QPolynomial, d_poly: RealPolynomial):
    if d_poly.is_zero:
        raise ZeroDenominator("denominator is identically zero")
    if n_poly.is_zero:
        return QPolynomial.zero(), RealPolynomial.one()
    d_poly, lead = d_poly.monic()
    n_poly = n_poly * (1.0 / lead)
    if d_poly.degree >= 1:
        for z, mult in real_poly_roots(d_poly).roots:
            if z.imag < 0.0:
                continue
            if z.imag == 0.0:
                factor = RealPolynomial.linear(z.real)
            else:
                factor = RealPolynomial.sphere_factor(z.real, z.imag)
            for _ in range(mult):
                n_next = try_divide_real(n_poly, factor)
                if n_next is None:
                    break
                d_next = _try_divide_exact(d_poly, factor)
                if d_next is None:
                    break
                n_poly, d_poly = n_next, d_next
        d_poly, lead = d_poly.monic()
        n_poly = n_poly * (1.0 / lead)
    return n_poly, d_poly


def from_quotient(f: QPolynomial, g: QPolynomial) -> QRational:
    """The quotient f^{-*} * g as a normalized rational."""
    if f.is_zero:
        raise ZeroDenominator("quotient by the zero polynomial")
    return QRational(star_mul(f.regular_conj(), g), f.symmetrize())


def reciprocal(a: QRational) -> QRational:
    """The *-inverse (D * N^c) / N^s."""
    if a.is_zero:
        raise ZeroDenominator("reciprocal of the zero function")
    n = star_mul(a.denominator.as_qpolynomial(), a.numerator.regular_conj())
    return QRational(n, a.numerator.symmetrize())


def transport(f: QPolynomial, q: Quaternion) -> Quaternion:
    """The sphere-preserving diffeomorphism T_f(q) = f^c(q)^{-1} q f^c(q)."""
    fc = f.regular_conj()
    v = fc.eval(q)
    if abs(v) <= POLE_TOL * (1.0 + fc.scale_at(abs(q))):
        raise PoleEvaluation(f"regular conjugate vanishes at {q}")
    return v.inverse() * q * v


# --- pole analysis -----------------------------------------------------------

@dataclass(frozen=True)
class SpherePoles:
    """Pole data on one sphere of denominator roots."""

    sphere: Sphere
    generic_order: int
    exceptional: tuple[Quaternion, int] | None
    spherical_order: int
    isolated_multiplicity: tuple[Quaternion, int] | None
    flags: tuple[tuple[Quaternion, str], ...]


@dataclass(frozen=True)
class SingularityReport:
    spheres: tuple[SpherePoles, ...]

    def to_json_dict(self) -> dict:
        entries = []
        for sp in self.spheres:
            exc = None
            if sp.exceptional is not None:
                exc = {"point": str(sp.exceptional[0]), "order": sp.exceptional[1]}
            entries.append({
                "x": sp.sphere.x, "y": sp.sphere.y,
                "generic_order": sp.generic_order,
                "exceptional": exc,
                "spherical_order": sp.spherical_order,
            })
        return {"spheres": entries}


def analyze_poles(a: QRational) -> SingularityReport:
    """Orders, exceptional points and spherical orders on each pole sphere.

    On a sphere where D vanishes to order v, the pole order at a point w is
    v minus the classical multiplicity of w as a zero of N; by the zero-set
    structure N vanishes at no more than one point of the sphere, so at
    most one order is smaller than the generic one.  A point of order 0 on
    a sphere of positive generic order stays singular (non-removable).
    """
    if a.is_zero or a.denominator.degree < 1:
        return SingularityReport(())
    spheres: list[SpherePoles] = []
    for z, v_d in real_poly_roots(a.denominator).roots:
        if z.imag < 0.0:
            continue
        if z.imag == 0.0:
            spheres.append(_analyze_real_point(a, z.real, v_d))
        else:
            spheres.append(_analyze_sphere(a, Sphere(z.real, z.imag), v_d))
    spheres.sort(key=lambda sp: (sp.sphere.x, sp.sphere.y))
    return SingularityReport(tuple(spheres))


def _analyze_real_point(a: QRational, x: float, v_d: int) -> SpherePoles:
    point = Quaternion(x)
    mult = 0
    work = a.numerator
    while work.degree >= 1:
        quotient, rem = left_divide_linear(work, point)
        if abs(rem) > 1e-8 * (1.0 + work.scale_at(abs(x))):
            break
        mult += 1
        work = quotient
    order = max(0, v_d - mult)
    flag = _flag_pole(order) if order >= 1 else FLAG_REMOVABLE
    return SpherePoles(Sphere(x, 0.0), order, None, 2 * order, None,
                       ((point, flag),))


def _analyze_sphere(a: QRational, s: Sphere, v_d: int) -> SpherePoles:
    n_poly = a.numerator
    # the spec formula: orders at the representative points via the split
    # components' valuations, cross-checked below against the factor chain
    n1, n2 = n_poly.slice_split(QI, QJ)
    z = complex(s.x, s.y)
    val_p = min(cpoly.valuation(n1, z), cpoly.valuation(n2, z))
    val_pbar = min(cpoly.valuation(n1, z.conjugate()), cpoly.valuation(n2, z.conjugate()))
    ord_p = max(0, v_d - min(val_p, v_d))
    ord_pbar = max(0, v_d - min(val_pbar, v_d))

    strip_m, chain, _ = sphere_factorization(n_poly, s)
    if strip_m > 0:
        raise NoConvergence(
            f"numerator shares the sphere factor at ({s.x}, {s.y}); input not normalized")

    generic = v_d
    exceptional = None
    isolated = None
    flags: list[tuple[Quaternion, str]] = []
    if chain:
        w = chain[0]
        eq_tol = 1e-7 * (1.0 + abs(w))
        classical = 1
        for p in chain[1:]:
            if abs(p - w) <= eq_tol:
                classical += 1
            else:
                break
        order_w = max(0, v_d - classical)
        # consistency with the valuation route at the representative points
        rep = Quaternion(s.x, s.y)
        rep_bar = Quaternion(s.x, -s.y)
        if abs(w - rep) <= eq_tol and order_w != ord_p:
            raise NoConvergence("valuation and factor-chain orders disagree")
        if abs(w - rep_bar) <= eq_tol and order_w != ord_pbar:
            raise NoConvergence("valuation and factor-chain orders disagree")
        exceptional = (w, order_w)
        isolated = (w, len(chain))
        flags.append((w, _flag_pole(order_w) if order_w >= 1 else FLAG_ORDER0))
        for rep_pt, rep_ord in ((rep, ord_p), (rep_bar, ord_pbar)):
            if abs(rep_pt - w) > eq_tol:
                flags.append((rep_pt, _flag_pole(rep_ord)))
    else:
        flags.append((Quaternion(s.x, s.y), _flag_pole(generic)))
        flags.append((Quaternion(s.x, -s.y), _flag_pole(generic)))

    spherical_order = 2 * generic
    return SpherePoles(s, generic, exceptional, spherical_order, isolated,
                       tuple(flags))
