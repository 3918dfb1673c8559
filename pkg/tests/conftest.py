import math

import pytest

from qslice.quaternion import Quaternion
from qslice.rng import Xoshiro256


def qclose(a: Quaternion, b: Quaternion, tol: float = 1e-12) -> bool:
    return abs(a - b) <= tol


def rand_quat(rng: Xoshiro256, box: float = 1.0) -> Quaternion:
    return Quaternion(rng.uniform(-box, box), rng.uniform(-box, box),
                      rng.uniform(-box, box), rng.uniform(-box, box))


def rand_unit(rng: Xoshiro256) -> Quaternion:
    while True:
        v = [rng.normal(), rng.normal(), rng.normal()]
        n = math.sqrt(sum(x * x for x in v))
        if n > 1e-3:
            return Quaternion(0, v[0] / n, v[1] / n, v[2] / n)


def sample_shell_point(p: Quaternion, r2: float, rng: Xoshiro256,
                       lo: float = 0.2, hi: float = 0.75,
                       tau_floor: float = 0.1) -> Quaternion:
    """A point with sigma(q, p) in [lo, hi]*r2 and tau(q, p) >= tau_floor.

    On-line samples give sigma = tau = s exactly; off-line samples are
    built in the (Re, |Im|) half-plane where sigma is hypot(dx, y + yp)
    and tau is hypot(dx, y - yp).
    """
    yp = p.im_norm()
    from qslice.quaternion import slice_unit_or

    iu = slice_unit_or(p)
    s_lo = max(lo * r2, 1.01 * tau_floor)
    s_hi = hi * r2
    if s_lo >= s_hi:
        raise ValueError("empty admissible sigma range")
    for _ in range(10_000):
        s = rng.uniform(s_lo, s_hi)
        if s <= yp * 1.001 or rng.random() < 0.4:
            # co-sliced point at slice distance s: sigma = tau = s
            theta = rng.uniform(0.0, 2.0 * math.pi)
            z = complex(p.x0 + s * math.cos(theta), yp + s * math.sin(theta))
            return Quaternion(z.real) + iu * z.imag
        phi_lo = math.asin(max(-1.0, min(1.0, yp / s))) + 1e-6
        if phi_lo >= math.pi / 2:
            continue
        phi = rng.uniform(phi_lo, math.pi - phi_lo)
        dx = s * math.cos(phi)
        y = s * math.sin(phi) - yp
        if y < 0:
            continue
        t = math.hypot(dx, y - yp)
        if t < tau_floor:
            continue
        unit = rand_unit(rng)
        if yp > 0:
            if min(abs(unit - iu), abs(unit + iu)) < 0.05:
                continue
        return Quaternion(p.x0 + dx) + unit * y
    raise RuntimeError("no admissible shell point found")


@pytest.fixture
def rng():
    return Xoshiro256(20240817)
