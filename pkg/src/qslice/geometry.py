"""Slice geometry: the gauges sigma and tau and the symmetric regions.

sigma(q, p) is the distance governing outer convergence of centered series;
tau(q, p) is the (non-distance) gauge governing inner convergence.  Both
reduce to |q - p| when p and q share a complex line R + IR; off-line they
only see the half-plane coordinates (Re, |Im|).  The region kinds collect
the sets cut out by these gauges: sigma-balls, omega-balls, tau-sets and
the convergence shells between two radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnsupportedRegionKind
from .quaternion import Quaternion

# Slice units agreeing up to sign within this tolerance count as co-sliced.
SAME_LINE_TOL = 1e-10

SIGMA_BALL = "sigma_ball"
OMEGA_BALL = "omega_ball"
TAU_SET = "tau_set"
SHELL = "shell"
OPEN_SHELL = "open_shell"

_KINDS = (SIGMA_BALL, OMEGA_BALL, TAU_SET, SHELL, OPEN_SHELL)


def same_line(q: Quaternion, p: Quaternion, tol: float = SAME_LINE_TOL) -> bool:
    """True when p and q lie on one complex line R + IR.

    Holds when either point is real, or when their slice units agree up to
    sign within tol.  The explicit tolerance makes the discontinuous branch
    split of sigma/tau decidable.
    """
    yq = q.im_norm()
    yp = p.im_norm()
    if yq <= SAME_LINE_TOL or yp <= SAME_LINE_TOL:
        return True
    iq = q.im() / yq
    ip = p.im() / yp
    return min(abs(iq - ip), abs(iq + ip)) <= tol


def omega(q: Quaternion, p: Quaternion) -> float:
    dx = q.x0 - p.x0
    dy = q.im_norm() + p.im_norm()
    return math.hypot(dx, dy)


def sigma(q: Quaternion, p: Quaternion) -> float:
    if same_line(q, p):
        return abs(q - p)
    return omega(q, p)


def tau(q: Quaternion, p: Quaternion) -> float:
    if same_line(q, p):
        return abs(q - p)
    dx = q.x0 - p.x0
    dy = q.im_norm() - p.im_norm()
    return math.hypot(dx, dy)


def half_plane_dist(q: Quaternion, p: Quaternion) -> float:
    """Distance of the (Re, |Im|) coordinates; the off-line tau formula.

    Unlike tau it ignores the co-slice branch, which makes it the right
    membership gauge for closures of tau-sets.
    """
    return math.hypot(q.x0 - p.x0, q.im_norm() - p.im_norm())


@dataclass(frozen=True)
class RegionSpec:
    """A gauge-defined region: center, inner/outer radii and a kind tag."""

    kind: str
    p: Quaternion
    r1: float
    r2: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        if not (0.0 <= self.r1 < self.r2):
            raise ValueError(f"need 0 <= R1 < R2, got R1={self.r1}, R2={self.r2}")

    @classmethod
    def sigma_ball(cls, p: Quaternion, r: float) -> "RegionSpec":
        return cls(SIGMA_BALL, p, 0.0, float(r))

    @classmethod
    def omega_ball(cls, p: Quaternion, r: float) -> "RegionSpec":
        return cls(OMEGA_BALL, p, 0.0, float(r))

    @classmethod
    def tau_set(cls, p: Quaternion, r: float) -> "RegionSpec":
        return cls(TAU_SET, p, 0.0, float(r))

    @classmethod
    def shell(cls, p: Quaternion, r1: float, r2: float) -> "RegionSpec":
        return cls(SHELL, p, float(r1), float(r2))

    @classmethod
    def open_shell(cls, p: Quaternion, r1: float, r2: float) -> "RegionSpec":
        return cls(OPEN_SHELL, p, float(r1), float(r2))

    def contains(self, q: Quaternion) -> bool:
        return region_contains(self, q)


def region_contains(r: RegionSpec, q: Quaternion) -> bool:
    """Strict membership; boundary points are classified as outside."""
    p = r.p
    if r.kind == SIGMA_BALL:
        return sigma(q, p) < r.r2
    if r.kind == OMEGA_BALL:
        return omega(q, p) < r.r2
    if r.kind == TAU_SET:
        return tau(q, p) < r.r2
    if r.kind == SHELL:
        return tau(q, p) > r.r1 and sigma(q, p) < r.r2
    # open shell Omega(p, R1, R2) = Omega(p, R2) minus the closed tau-set,
    # whose closure adds the missing -I disc: membership via half_plane_dist
    return omega(q, p) < r.r2 and half_plane_dist(q, p) > r.r1


def represent(valz: Quaternion, valzbar: Quaternion,
              i_unit: Quaternion, j_unit: Quaternion) -> Quaternion:
    """Two-point interpolation of a regular function across a sphere.

    Given f(x+Iy) = valz and f(x-Iy) = valzbar, returns f(x+Jy):
    (1 - J I)/2 * valz + (1 + J I)/2 * valzbar.
    """
    ji = j_unit * i_unit
    one = Quaternion(1.0)
    return ((one - ji) * 0.5) * valz + ((one + ji) * 0.5) * valzbar


def sigma_regime(p: Quaternion, r: float) -> str:
    """Case split for the shape of a sigma-ball: disc, ball, or disc+shell."""
    y = p.im_norm()
    if y == 0.0:
        return "ball"
    if r <= y:
        return "disc"
    return "disc_union_shell"


def ball_boundary_points(r: RegionSpec, count: int) -> list[Quaternion]:
    """Boundary samples of a sigma-ball or tau-set in the 3-space R+iR+jR.

    The center is placed on the i-slice via its (x, y) sphere data.  Every
    emitted point satisfies |sigma(q,p) - R| <= 1e-6 (resp. tau), which in
    particular skips the slice-disc interior of the large-radius regime.
    """
    if r.kind not in (SIGMA_BALL, TAU_SET):
        raise UnsupportedRegionKind(f"no boundary sampler for kind {r.kind!r}")
    if count < 8:
        raise ValueError("count must be at least 8")
    x0 = r.p.x0
    y0 = r.p.im_norm()
    rad = r.r2
    p_i = Quaternion(x0, y0)  # representative on the i-slice
    gauge = sigma if r.kind == SIGMA_BALL else tau

    pts: list[Quaternion] = []
    if y0 == 0.0:
        # Euclidean sphere |q - p| = R, sampled in R+iR+jR
        n_lat = max(3, int(math.sqrt(count)))
        n_lon = max(4, count // n_lat)
        for a in range(n_lat):
            th = math.pi * (a + 0.5) / n_lat
            for b in range(n_lon):
                ph = 2.0 * math.pi * (b + 0.5) / n_lon
                pts.append(Quaternion(x0 + rad * math.cos(th),
                                      rad * math.sin(th) * math.cos(ph),
                                      rad * math.sin(th) * math.sin(ph)))
    elif r.kind == SIGMA_BALL and rad <= y0:
        # degenerate regime: the ball is a disc in R+iR; emit its rim circle
        for b in range(count):
            ph = 2.0 * math.pi * b / count
            pts.append(Quaternion(x0 + rad * math.cos(ph), y0 + rad * math.sin(ph)))
    else:
        # revolve the admissible (u, v >= 0) arc of the circle around the
        # real axis; theta grid offset keeps samples off the branch lines
        if r.kind == SIGMA_BALL:
            # arc of circle centered (x0, -y0): v >= 0 needs sin(psi) >= y0/R
            lo = math.asin(min(1.0, y0 / rad))
            hi = math.pi - lo
            center_v = -y0
            # plus the rim of the slice disc, which is boundary here too
            n_rim = max(8, count // 3)
            for b in range(n_rim):
                ph = 2.0 * math.pi * b / n_rim
                pts.append(Quaternion(x0 + rad * math.cos(ph), y0 + rad * math.sin(ph)))
        else:
            lo = math.asin(min(1.0, max(-1.0, -y0 / rad)))
            hi = math.pi - lo
            center_v = y0
        n_arc = max(4, int(math.sqrt(max(8, count - len(pts)))))
        n_th = max(4, 2 * ((max(8, count - len(pts)) // n_arc) // 2))
        for a in range(n_arc):
            ps = lo + (hi - lo) * (a + 0.5) / n_arc
            u = x0 + rad * math.cos(ps)
            v = center_v + rad * math.sin(ps)
            if v < 0.0:
                continue
            if v == 0.0:
                pts.append(Quaternion(u))
                continue
            for b in range(n_th):
                th = 2.0 * math.pi * (b + 0.5) / n_th
                pts.append(Quaternion(u, v * math.cos(th), v * math.sin(th)))

    out = []
    for q in pts:
        if abs(gauge(q, p_i) - rad) <= 1e-6:
            out.append(q)
    return out
