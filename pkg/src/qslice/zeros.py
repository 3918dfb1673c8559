"""Zero sets of quaternionic polynomials.

A nonzero polynomial vanishes on isolated points and isolated spheres
x + yS only.  Candidate spheres come from the roots of the symmetrization;
on each sphere the polynomial either vanishes identically (an even number
of real quadratic factors splits off) or at exactly one point, which can be
factored out as a linear *-factor.  Iterating the factor extraction yields
the chain whose length is the isolated multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence
from .polynomial import (QPolynomial, RealPolynomial, left_divide_linear,
                         try_divide_real)
from .quaternion import I as QI
from .quaternion import Quaternion, Sphere, is_unit_imaginary
from .rootfind import real_poly_roots

NO_ZERO = "no_zero"
WHOLE_SPHERE = "whole_sphere"
ISOLATED = "isolated"

CLASSIFY_TOL = 1e-8
# spheres this flat are treated as real points (found by the real-zero
# path); rounding splits an even real root into a conjugate pair of about
# this imaginary size
_REAL_SPHERE_REL = 1e-6


@dataclass(frozen=True)
class SphereClassification:
    kind: str
    point: Quaternion | None = None


@dataclass(frozen=True)
class IsolatedZero:
    """An isolated zero with its chain of linear *-factors on one sphere."""

    point: Quaternion
    classical: int
    isolated: int
    chain: tuple[Quaternion, ...]


@dataclass(frozen=True)
class ZeroReport:
    spherical: tuple[tuple[Sphere, int], ...]
    isolated: tuple[IsolatedZero, ...]

    def total_multiplicity(self) -> int:
        return (sum(m for _, m in self.spherical)
                + sum(z.isolated for z in self.isolated))

    def to_json_dict(self) -> dict:
        return {
            "spherical": [{"x": s.x, "y": s.y, "mult": m} for s, m in self.spherical],
            "isolated": [{"point": str(z.point), "classical": z.classical,
                          "isolated": z.isolated} for z in self.isolated],
        }


def sphere_classify(f: QPolynomial, s: Sphere,
                    tol: float = CLASSIFY_TOL) -> SphereClassification:
    """Decide whether f vanishes on all of x+yS, nowhere, or at one point.

    The restriction of f to the sphere is affine in the imaginary unit, so
    two evaluations at x+-iy determine it: with A = f(z)+f(zbar) and
    B = f(zbar)-f(z), the value at x+Jy is (A + J(iB))/2 and the candidate
    zero direction is J = -A (iB)^{-1}.  A candidate is accepted only if it
    is a unit imaginary within 1e-8 and f actually vanishes there.
    """
    if f.is_zero:
        raise ValueError("sphere_classify needs a nonzero polynomial")
    if s.degenerate:
        x = Quaternion(s.x)
        if abs(f.eval(x)) <= tol * f.scale_at(abs(s.x)):
            return SphereClassification(ISOLATED, x)
        return SphereClassification(NO_ZERO)
    z = Quaternion(s.x, s.y)
    zbar = Quaternion(s.x, -s.y)
    fz = f.eval(z)
    fzbar = f.eval(zbar)
    a = fz + fzbar
    b = fzbar - fz
    scale = f.scale_at(abs(z))
    if abs(a) <= tol * scale and abs(b) <= tol * scale:
        return SphereClassification(WHOLE_SPHERE)
    if abs(b) <= tol * scale:
        return SphereClassification(NO_ZERO)
    j_cand = -a * (QI * b).inverse()
    if not is_unit_imaginary(j_cand, 1e-8):
        return SphereClassification(NO_ZERO)
    w = Quaternion(s.x) + j_cand * s.y
    if abs(f.eval(w)) <= 1e-8 * scale:
        return SphereClassification(ISOLATED, w)
    return SphereClassification(NO_ZERO)


def sphere_factorization(f: QPolynomial, s: Sphere):
    """Per-sphere factorization f = [(q-x)^2+y^2]^m * chain * residual.

    Returns (m, chain, residual).  The chain entries are the successive
    isolated zeros extracted from the stripped polynomial on this sphere;
    the theory guarantees at most one zero per pass, so a division whose
    remainder does not vanish signals numerical failure.
    """
    factor = RealPolynomial.sphere_factor(s.x, s.y)
    m = 0
    work = f
    while True:
        quotient = try_divide_real(work, factor)
        if quotient is None or quotient.is_zero:
            break
        m += 1
        work = quotient
    chain: list[Quaternion] = []
    point_scale = abs(s.x) + s.y
    while work.degree >= 1:
        cls = sphere_classify(work, s)
        if cls.kind == NO_ZERO:
            break
        if cls.kind == WHOLE_SPHERE:
            raise NoConvergence(
                f"stripped polynomial still vanishes on sphere ({s.x}, {s.y})")
        quotient, rem = left_divide_linear(work, cls.point)
        if abs(rem) > 1e-8 * (1.0 + work.scale_at(point_scale)):
            raise NoConvergence(
                f"linear factor division residual {abs(rem):.3e} on sphere ({s.x}, {s.y})")
        chain.append(cls.point)
        work = quotient
    return m, chain, work


def _real_zeros(f: QPolynomial) -> list[tuple[float, int]]:
    """Real zeros of f with classical multiplicities.

    A real x is a zero iff all four real component polynomials vanish
    there, so candidates are the intersection of the components' real
    roots within 1e-8; multiplicities follow by repeated linear division.
    """
    comps = [c for c in f.components() if np.any(c != 0.0)]
    if not comps:
        return []
    candidates: list[float] | None = None
    for comp in comps:
        rp = RealPolynomial(comp)
        if rp.degree < 1:
            return []
        xs = [z.real for z, _ in real_poly_roots(rp).roots
              if abs(z.imag) <= 1e-8 * (1.0 + abs(z))]
        if candidates is None:
            candidates = xs
        else:
            candidates = [x for x in candidates
                          if any(abs(x - x2) <= 1e-8 * (1.0 + abs(x)) for x2 in xs)]
        if not candidates:
            return []
    # dedupe clusters of nearby candidates
    candidates.sort()
    merged: list[float] = []
    for x in candidates:
        if merged and abs(x - merged[-1]) <= 1e-8 * (1.0 + abs(x)):
            continue
        merged.append(x)
    out = []
    for x in merged:
        if abs(f.eval(Quaternion(x))) > CLASSIFY_TOL * f.scale_at(abs(x)):
            continue
        mult = 0
        work = f
        while work.degree >= 1:
            quotient, rem = left_divide_linear(work, Quaternion(x))
            if abs(rem) > 1e-8 * (1.0 + work.scale_at(abs(x))):
                break
            mult += 1
            work = quotient
        if mult >= 1:
            out.append((x, mult))
    return out


def analyze_zeros(f: QPolynomial) -> ZeroReport:
    """Full zero report: spheres with even multiplicities, chains, points.

    Every reported zero is re-verified by evaluation against the tolerance
    1e-8 times the magnitude scale of f at the zero.
    """
    if f.is_zero:
        raise ValueError("analyze_zeros needs a nonzero polynomial")
    spheres: list[Sphere] = []
    fs = f.symmetrize()
    if fs.degree >= 1:
        for z, _ in real_poly_roots(fs).conjugate_pairs():
            if z.imag <= _REAL_SPHERE_REL * (1.0 + abs(z.real)):
                continue
            spheres.append(Sphere(z.real, z.imag))
    spheres.sort(key=lambda s: (s.x, s.y))

    spherical: list[tuple[Sphere, int]] = []
    isolated: list[IsolatedZero] = []
    for s in spheres:
        m, chain, _ = sphere_factorization(f, s)
        if m > 0:
            spherical.append((s, 2 * m))
        if chain:
            eq_tol = 1e-7 * (1.0 + abs(chain[0]))
            classical = 1
            for p in chain[1:]:
                if abs(p - chain[0]) <= eq_tol:
                    classical += 1
                else:
                    break
            isolated.append(IsolatedZero(chain[0], classical, len(chain), tuple(chain)))

    for x, mult in _real_zeros(f):
        if mult // 2 > 0:
            spherical.append((Sphere(x, 0.0), 2 * (mult // 2)))
        if mult % 2 == 1:
            point = Quaternion(x)
            isolated.append(IsolatedZero(point, mult, 1, (point,)))

    _verify(f, spherical, isolated)
    spherical.sort(key=lambda e: (e[0].x, e[0].y))
    isolated.sort(key=lambda z: (z.point.x0, z.point.im_norm()))
    return ZeroReport(tuple(spherical), tuple(isolated))


def _verify(f: QPolynomial, spherical, isolated):
    for s, _ in spherical:
        for probe in (Quaternion(s.x, s.y), Quaternion(s.x, 0.0, s.y)):
            if abs(f.eval(probe)) > 1e-8 * f.scale_at(abs(probe)):
                raise NoConvergence(
                    f"reported spherical zero ({s.x}, {s.y}) fails evaluation check")
    for z in isolated:
        if abs(f.eval(z.point)) > 1e-8 * f.scale_at(abs(z.point)):
            raise NoConvergence(
                f"reported isolated zero {z.point} fails evaluation check")


def conjugate_root_of_pair(alpha: Quaternion, beta: Quaternion) -> Quaternion:
    """Second root (beta - conj(alpha))^{-1} beta (beta - conj(alpha)) of
    (q - alpha) * (q - beta) when the two factors sit on different spheres."""
    d = beta - alpha.conj()
    return d.inverse() * beta * d
