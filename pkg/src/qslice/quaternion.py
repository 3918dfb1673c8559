"""Floating-point arithmetic of the quaternion algebra H.

Quaternions are written on the basis 1, i, j, k with the usual relations
i^2 = j^2 = k^2 = -1, ij = -ji = k, jk = -kj = i, ki = -ik = j.  Values are
immutable; every operation is a pure function, so unrestricted concurrent
use is safe.  The module also carries the 2-sphere S of imaginary units
(q^2 = -1) and the spheres x + yS that organize all zero/pole sets.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, ParseError, RealPointAmbiguous

# Tolerance for unit-imaginary validation (real part and norm defect).
UNIT_TOL = 1e-12
# Tolerance for geometric membership tests (sphere membership and the like).
GEOM_TOL = 1e-10


@dataclass(frozen=True)
class Quaternion:
    """An element x0 + x1*i + x2*j + x3*k of H with finite components."""

    x0: float
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    def __post_init__(self):
        for name in ("x0", "x1", "x2", "x3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"non-finite quaternion component {name}={v!r}")
            object.__setattr__(self, name, v)

    # --- algebra -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Quaternion(self.x0 + other.x0, self.x1 + other.x1,
                          self.x2 + other.x2, self.x3 + other.x3)

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
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 * other, self.x1 * other,
                              self.x2 * other, self.x3 * other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        a0, a1, a2, a3 = self.x0, self.x1, self.x2, self.x3
        b0, b1, b2, b3 = other.x0, other.x1, other.x2, other.x3
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self * (1.0 / other)
        return NotImplemented

    def conj(self) -> "Quaternion":
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def normsq(self) -> float:
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3

    def __abs__(self) -> float:
        return math.sqrt(self.normsq())

    def inverse(self) -> "Quaternion":
        n2 = self.normsq()
        if n2 == 0.0:
            raise DivisionByZero("inverse of 0")
        return self.conj() * (1.0 / n2)

    # --- slice structure ---------------------------------------------------

    @property
    def re(self) -> float:
        return self.x0

    def im(self) -> "Quaternion":
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    def im_norm(self) -> float:
        return math.sqrt(self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3)

    def is_real(self, tol: float = UNIT_TOL) -> bool:
        return self.im_norm() <= tol

    def slice_unit(self) -> "Quaternion":
        """The unit imaginary I with self = Re(self) + I * |Im(self)|.

        Raises RealPointAmbiguous on (numerically) real points: there every
        slice reconstructs the point and the caller must pick a convention.
        """
        y = self.im_norm()
        if y <= UNIT_TOL:
            raise RealPointAmbiguous(f"{self} is real; supply a slice unit explicitly")
        return Quaternion(0.0, self.x1 / y, self.x2 / y, self.x3 / y)

    def sphere(self) -> "Sphere":
        return Sphere(self.x0, self.im_norm())

    def to_complex(self) -> complex:
        """Slice coordinate Re(q) + |Im(q)| * 1j (upper half plane)."""
        return complex(self.x0, self.im_norm())

    # --- conversions -------------------------------------------------------

    def to_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3], dtype=np.float64)

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return abs(self - other) <= tol

    def __str__(self) -> str:
        return format_quaternion(self)

    def __repr__(self) -> str:
        return f"Quaternion({self.x0!r}, {self.x1!r}, {self.x2!r}, {self.x3!r})"


def _coerce(v):
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float)):
        return Quaternion(float(v))
    return NotImplemented


ZERO = Quaternion(0.0)
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return a * b


def conj(q: Quaternion) -> Quaternion:
    return q.conj()


def normsq(q: Quaternion) -> float:
    return q.normsq()


def inverse(q: Quaternion) -> Quaternion:
    return q.inverse()


def slice_unit(q: Quaternion) -> Quaternion:
    return q.slice_unit()


def slice_unit_or(q: Quaternion, default: Quaternion = I) -> Quaternion:
    """Slice unit of q, falling back to `default` at real points."""
    try:
        return q.slice_unit()
    except RealPointAmbiguous:
        return default


def unit_imaginary(q: Quaternion, tol: float = UNIT_TOL) -> Quaternion:
    """Validate that q lies on the sphere S of imaginary units.

    Returns q unchanged when |Re q| <= tol and ||q| - 1| <= tol (so that
    q^2 = -1 up to rounding), else raises ValueError.
    """
    if abs(q.x0) > tol or abs(abs(q) - 1.0) > tol:
        raise ValueError(f"{q} is not a unit imaginary within {tol}")
    return q


def is_unit_imaginary(q: Quaternion, tol: float = UNIT_TOL) -> bool:
    return abs(q.x0) <= tol and abs(abs(q) - 1.0) <= tol


def orthogonal_unit(i_unit: Quaternion) -> Quaternion:
    """Deterministic unit imaginary orthogonal to i_unit.

    Takes the first of j, k, i not nearly parallel to i_unit and projects
    out the i_unit component (Gram-Schmidt on the imaginary 3-space).
    """
    iv = np.array([i_unit.x1, i_unit.x2, i_unit.x3])
    for cand in (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]),
                 np.array([1.0, 0.0, 0.0])):
        w = cand - np.dot(cand, iv) * iv
        n = np.linalg.norm(w)
        if n > 0.5:
            w /= n
            return Quaternion(0.0, w[0], w[1], w[2])
    raise ValueError(f"could not build an orthogonal unit for {i_unit}")


def embed(z: complex, i_unit: Quaternion) -> Quaternion:
    """The point Re(z) + i_unit * Im(z) of the slice R + i_unit*R."""
    return Quaternion(z.real) + i_unit * z.imag


@dataclass(frozen=True)
class Sphere:
    """The sphere x + yS; y = 0 degenerates to the single real point x."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if self.y < 0.0:
            raise ValueError("sphere radius y must be nonnegative")

    @property
    def degenerate(self) -> bool:
        return self.y == 0.0

    def point(self, i_unit: Quaternion = I) -> Quaternion:
        """The representative x + i_unit * y."""
        return Quaternion(self.x) + i_unit * self.y

    def contains(self, q: Quaternion, tol: float = GEOM_TOL) -> bool:
        return abs(q.x0 - self.x) <= tol and abs(q.im_norm() - self.y) <= tol


def sphere_of(q: Quaternion) -> Sphere:
    return q.sphere()


def on_sphere(q: Quaternion, s: Sphere, tol: float = GEOM_TOL) -> bool:
    return s.contains(q, tol)


# --- text form -------------------------------------------------------------

def _fmt_scalar(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def format_quaternion(q: Quaternion) -> str:
    """Canonical text form `a+bi+cj+dk` with zero terms omitted."""
    parts = []
    for v, unit in ((q.x0, ""), (q.x1, "i"), (q.x2, "j"), (q.x3, "k")):
        if v == 0.0:
            continue
        mag = _fmt_scalar(abs(v))
        if unit and mag == "1":
            mag = ""
        sign = "-" if v < 0 else ("+" if parts else "")
        parts.append(f"{sign}{mag}{unit}")
    return "".join(parts) if parts else "0"


_TERM_RE = re.compile(
    r"\s*([+-]?)\s*"
    r"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"([ijk])?"
)


def parse_quaternion(text: str) -> Quaternion:
    """Parse the `a+bi+cj+dk` text form (zero terms may be omitted)."""
    pos = 0
    comps = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
    seen = set()
    n = len(text)
    any_term = False
    while pos < n:
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ParseError(pos, f"malformed quaternion literal {text!r}")
        sign, num, unit = m.group(1), m.group(2), m.group(3) or ""
        if num is None:
            value = 1.0
        else:
            value = float(num)
        if sign == "-":
            value = -value
        if unit in seen:
            raise ParseError(m.start(3) if m.group(3) else pos,
                             f"duplicate {unit or 'real'} term in {text!r}")
        seen.add(unit)
        comps[unit] += value
        pos = m.end()
        any_term = True
        # trailing whitespace only
        rest = text[pos:]
        if rest.strip() == "":
            pos = n
    if not any_term:
        raise ParseError(0, "empty quaternion literal")
    return Quaternion(comps[""], comps["i"], comps["j"], comps["k"])
