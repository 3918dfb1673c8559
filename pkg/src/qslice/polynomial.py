"""The noncommutative *-algebra of quaternionic polynomials.

Polynomials are written with left powers and right coefficients,
f(q) = a0 + q a1 + ... + q^n a_n, the one convention used throughout.  The
*-product is coefficient convolution with quaternion products taken in
left-factor-first order; it restricts to the pointwise product exactly when
the left factor has real coefficients.
"""

from __future__ import annotations

import numpy as np

from . import cpoly
from ._kernels import poly_eval as _k_poly_eval
from ._kernels import star_convolve as _k_star_convolve
from .errors import NotDivisible, SymmetrizationNotReal
from .quaternion import Quaternion, embed, slice_unit_or

# Leading coefficients below TRIM_REL * (1 + max coefficient norm) are
# trimmed; interior coefficients are never touched.
TRIM_REL = 1e-13
SYM_RESIDUE_REL = 1e-9
DIVIDE_REL = 1e-9


def _canonical(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.float64).reshape(-1, 4)
    if arr.shape[0] == 0:
        return arr
    norms = np.sqrt((arr * arr).sum(axis=1))
    thresh = TRIM_REL * (1.0 + norms.max(initial=0.0))
    n = arr.shape[0]
    while n > 0 and norms[n - 1] <= thresh:
        n -= 1
    return arr[:n]


class QPolynomial:
    """Finite quaternionic polynomial sum q^n a_n in canonical form."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        if isinstance(coeffs, QPolynomial):
            self.coeffs = coeffs.coeffs
            return
        if isinstance(coeffs, np.ndarray) and coeffs.ndim == 2:
            self.coeffs = _canonical(coeffs)
            return
        rows = []
        for c in coeffs:
            if isinstance(c, Quaternion):
                rows.append((c.x0, c.x1, c.x2, c.x3))
            else:
                rows.append((float(c), 0.0, 0.0, 0.0))
        self.coeffs = _canonical(np.array(rows, dtype=np.float64).reshape(-1, 4))

    # --- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "QPolynomial":
        return cls(np.zeros((0, 4)))

    @classmethod
    def one(cls) -> "QPolynomial":
        return cls([1.0])

    @classmethod
    def variable(cls) -> "QPolynomial":
        """The indeterminate q."""
        return cls([0.0, 1.0])

    @classmethod
    def constant(cls, a: Quaternion | float) -> "QPolynomial":
        return cls([a])

    @classmethod
    def monic_linear(cls, p: Quaternion) -> "QPolynomial":
        """The factor q - p."""
        return cls([-p, Quaternion(1.0)])

    # --- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.coeffs.shape[0] - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def coefficient(self, n: int) -> Quaternion:
        if 0 <= n < self.coeffs.shape[0]:
            return Quaternion.from_array(self.coeffs[n])
        return Quaternion(0.0)

    def coefficients(self) -> list[Quaternion]:
        return [Quaternion.from_array(row) for row in self.coeffs]

    def norm(self) -> float:
        """l2 norm of the coefficient vector."""
        return float(np.sqrt((self.coeffs * self.coeffs).sum()))

    def scale_at(self, absq: float) -> float:
        """sum ||a_k|| max(1,|q|)^k; magnitude bound for residual tests."""
        if self.is_zero:
            return 0.0
        norms = np.sqrt((self.coeffs * self.coeffs).sum(axis=1))
        return float(np.dot(norms, max(1.0, absq) ** np.arange(norms.shape[0])))

    def is_real(self) -> bool:
        return bool(np.all(self.coeffs[:, 1:] == 0.0))

    def components(self) -> list[np.ndarray]:
        """The four real component polynomials (low-to-high arrays)."""
        return [np.array(self.coeffs[:, k]) for k in range(4)]

    def slice_split(self, i_unit: Quaternion, j_unit: Quaternion):
        """Complex component polynomials (F, G) with f_I = F + G*J.

        Uses the orthonormal basis (1, I, J, IJ) of H; F and G come back as
        complex coefficient arrays in the slice coordinate.
        """
        iv = i_unit.to_array()
        jv = j_unit.to_array()
        kv = np.array([(i_unit * j_unit).x0, (i_unit * j_unit).x1,
                       (i_unit * j_unit).x2, (i_unit * j_unit).x3])
        c = self.coeffs
        a1 = c[:, 0]
        ai = c @ iv
        aj = c @ jv
        ak = c @ kv
        return a1 + 1j * ai, aj + 1j * ak

    # --- algebra -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(a.shape[0], b.shape[0])
        out = np.zeros((n, 4))
        out[:a.shape[0]] += a
        out[:b.shape[0]] += b
        return QPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return QPolynomial(-self.coeffs)

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return star_mul(self, other)

    def __rmul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return star_mul(other, self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("star power needs a nonnegative integer exponent")
        acc = QPolynomial.one()
        for _ in range(n):
            acc = star_mul(acc, self)
        return acc

    def __eq__(self, other):
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(
            np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def isclose(self, other: "QPolynomial", tol: float) -> bool:
        a, b = self.coeffs, other.coeffs
        n = max(a.shape[0], b.shape[0])
        pa = np.zeros((n, 4))
        pb = np.zeros((n, 4))
        pa[:a.shape[0]] = a
        pb[:b.shape[0]] = b
        return bool(np.abs(pa - pb).max(initial=0.0) <= tol)

    # --- operations --------------------------------------------------------

    def eval(self, q: Quaternion) -> Quaternion:
        """Nested evaluation a0 + q(a1 + q(...)), exact for left powers."""
        if self.is_zero:
            return Quaternion(0.0)
        acc = Quaternion.from_array(self.coeffs[-1])
        for k in range(self.coeffs.shape[0] - 2, -1, -1):
            acc = Quaternion.from_array(self.coeffs[k]) + q * acc
        return acc

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        """Kernel-backed evaluation at an (N, 4) array of points."""
        return _k_poly_eval(self.coeffs, np.asarray(pts, dtype=np.float64))

    def regular_conj(self) -> "QPolynomial":
        out = self.coeffs.copy()
        out[:, 1:] = -out[:, 1:]
        return QPolynomial(out)

    def symmetrize(self) -> "RealPolynomial":
        """f * f^c, with the imaginary residue checked then dropped."""
        prod = star_mul(self, self.regular_conj())
        if prod.is_zero:
            return RealPolynomial([])
        resid = float(np.abs(prod.coeffs[:, 1:]).max(initial=0.0))
        bound = SYM_RESIDUE_REL * (1.0 + self.norm() ** 2)
        if resid > bound:
            raise SymmetrizationNotReal(
                f"imaginary residue {resid:.3e} exceeds {bound:.3e}")
        return RealPolynomial(prod.coeffs[:, 0])

    def __repr__(self):
        if self.is_zero:
            return "QPolynomial[0]"
        terms = " + ".join(f"q^{n}*({Quaternion.from_array(c)})"
                           for n, c in enumerate(self.coeffs))
        return f"QPolynomial[{terms}]"


def _coerce_poly(v):
    if isinstance(v, QPolynomial):
        return v
    if isinstance(v, RealPolynomial):
        return v.as_qpolynomial()
    if isinstance(v, Quaternion):
        return QPolynomial([v])
    if isinstance(v, (int, float)):
        return QPolynomial([float(v)])
    return NotImplemented


def star_mul(f: QPolynomial, g: QPolynomial) -> QPolynomial:
    """Convolution product sum_n q^n sum_k a_k b_{n-k}."""
    f = _coerce_poly(f)
    g = _coerce_poly(g)
    if f.is_zero or g.is_zero:
        return QPolynomial.zero()
    # a real-coefficient factor commutes; scalar convolution keeps that
    # exactly symmetric in floating point as well
    if f.is_real():
        return _real_times(f.coeffs[:, 0], g)
    if g.is_real():
        return _real_times(g.coeffs[:, 0], f)
    return QPolynomial(_k_star_convolve(f.coeffs, g.coeffs))


def _real_times(real_coeffs: np.ndarray, g: QPolynomial) -> QPolynomial:
    out = np.zeros((real_coeffs.shape[0] + g.coeffs.shape[0] - 1, 4))
    for k in range(4):
        out[:, k] = np.convolve(real_coeffs, g.coeffs[:, k])
    return QPolynomial(out)


def coeff_distance(f: QPolynomial, g: QPolynomial) -> float:
    """Max coefficient-norm of f - g on padded raw arrays (no trimming)."""
    a, b = f.coeffs, g.coeffs
    n = max(a.shape[0], b.shape[0])
    pa = np.zeros((n, 4))
    pb = np.zeros((n, 4))
    pa[:a.shape[0]] = a
    pb[:b.shape[0]] = b
    d = pa - pb
    if n == 0:
        return 0.0
    return float(np.sqrt((d * d).sum(axis=1)).max())


def regular_conj(f: QPolynomial) -> QPolynomial:
    return f.regular_conj()


def symmetrize(f: QPolynomial) -> "RealPolynomial":
    return f.symmetrize()


def eval_poly(f: QPolynomial, q: Quaternion) -> Quaternion:
    return f.eval(q)


def left_divide_linear(f: QPolynomial, p: Quaternion) -> tuple[QPolynomial, Quaternion]:
    """Write f = (q - p) * g + r with constant remainder r.

    Backward recursion b_{k-1} = a_k + p b_k seeded with b_{n-1} = a_n;
    the remainder is a_0 + p b_0.
    """
    if f.degree < 1:
        raise ValueError("left_divide_linear needs deg f >= 1")
    a = [Quaternion.from_array(row) for row in f.coeffs]
    n = len(a) - 1
    b: list[Quaternion] = [Quaternion(0.0)] * n
    b[n - 1] = a[n]
    for k in range(n - 1, 0, -1):
        b[k - 1] = a[k] + p * b[k]
    rem = a[0] + p * b[0]
    return QPolynomial(b), rem


def divide_real(f: QPolynomial, d: "RealPolynomial") -> QPolynomial:
    """Exact division of f by a real polynomial, componentwise.

    Succeeds iff all four remainders have norm <= 1e-9 * (1 + ||f||);
    raises NotDivisible carrying the worst remainder norm otherwise.
    """
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return QPolynomial.zero()
    quotient_cols = []
    worst = 0.0
    for comp in f.components():
        q, r = cpoly.polydivmod(comp, d.coeffs)
        worst = max(worst, float(np.sqrt((r * r).sum())) if r.shape[0] else 0.0)
        quotient_cols.append(q)
    if worst > DIVIDE_REL * (1.0 + f.norm()):
        raise NotDivisible(worst)
    n = max((c.shape[0] for c in quotient_cols), default=0)
    out = np.zeros((n, 4))
    for k, col in enumerate(quotient_cols):
        out[:col.shape[0], k] = col
    return QPolynomial(out)


def try_divide_real(f: QPolynomial, d: "RealPolynomial"):
    """divide_real returning None instead of raising on failure."""
    try:
        return divide_real(f, d)
    except NotDivisible:
        return None


class RealPolynomial:
    """Real-coefficient polynomial; the slice-preserving elements here."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        if isinstance(coeffs, RealPolynomial):
            self.coeffs = coeffs.coeffs
            return
        arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                         dtype=np.float64).reshape(-1)
        if arr.shape[0]:
            thresh = TRIM_REL * (1.0 + np.abs(arr).max())
            arr = cpoly.trim(arr, thresh)
        self.coeffs = np.ascontiguousarray(arr)

    @classmethod
    def one(cls) -> "RealPolynomial":
        return cls([1.0])

    @classmethod
    def sphere_factor(cls, x: float, y: float) -> "RealPolynomial":
        """(q - x)^2 + y^2, the real quadratic vanishing on the sphere x+yS."""
        return cls([x * x + y * y, -2.0 * x, 1.0])

    @classmethod
    def linear(cls, x: float) -> "RealPolynomial":
        return cls([-x, 1.0])

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    @property
    def is_one(self) -> bool:
        return self.coeffs.shape[0] == 1 and self.coeffs[0] == 1.0

    def norm(self) -> float:
        return float(np.sqrt((self.coeffs * self.coeffs).sum()))

    def scale_at(self, absq: float) -> float:
        return cpoly.coeff_scale(self.coeffs, absq)

    def monic(self) -> tuple["RealPolynomial", float]:
        """(self / lead, lead); identity scaling for the zero polynomial."""
        if self.is_zero:
            return self, 1.0
        lead = float(self.coeffs[-1])
        return RealPolynomial(self.coeffs / lead), lead

    def __mul__(self, other):
        if isinstance(other, RealPolynomial):
            return RealPolynomial(cpoly.polymul(self.coeffs, other.coeffs))
        if isinstance(other, (int, float)):
            return RealPolynomial(self.coeffs * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, RealPolynomial):
            return NotImplemented
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        out = np.zeros(n)
        out[:self.coeffs.shape[0]] += self.coeffs
        out[:other.coeffs.shape[0]] += other.coeffs
        return RealPolynomial(out)

    def __neg__(self):
        return RealPolynomial(-self.coeffs)

    def __pow__(self, n: int):
        acc = RealPolynomial.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, RealPolynomial):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(
            np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def isclose(self, other: "RealPolynomial", tol: float) -> bool:
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        pa = np.zeros(n)
        pb = np.zeros(n)
        pa[:self.coeffs.shape[0]] = self.coeffs
        pb[:other.coeffs.shape[0]] = other.coeffs
        return bool(np.abs(pa - pb).max(initial=0.0) <= tol)

    def divmod(self, other: "RealPolynomial") -> tuple["RealPolynomial", "RealPolynomial"]:
        q, r = cpoly.polydivmod(self.coeffs, other.coeffs)
        return RealPolynomial(q), RealPolynomial(r)

    def eval_real(self, x: float) -> float:
        return float(cpoly.polyval(self.coeffs, float(x)))

    def eval_complex(self, z: complex) -> complex:
        return complex(cpoly.polyval(self.coeffs.astype(np.complex128), complex(z)))

    def eval_quat(self, q: Quaternion) -> Quaternion:
        """Value at a quaternion point; lands on the point's slice."""
        z = self.eval_complex(q.to_complex())
        return embed(z, slice_unit_or(q))

    def as_qpolynomial(self) -> QPolynomial:
        out = np.zeros((self.coeffs.shape[0], 4))
        out[:, 0] = self.coeffs
        return QPolynomial(out)

    def derivative(self) -> "RealPolynomial":
        if self.coeffs.shape[0] <= 1:
            return RealPolynomial([])
        return RealPolynomial(self.coeffs[1:] * np.arange(1, self.coeffs.shape[0]))

    def __repr__(self):
        return f"RealPolynomial[{np.array2string(self.coeffs, separator=', ')}]"
