import math

import pytest

from conftest import qclose, rand_quat
from qslice.errors import UnsupportedRegionKind
from qslice.geometry import (RegionSpec, ball_boundary_points, region_contains,
                             represent, same_line, sigma, sigma_regime, tau)
from qslice.polynomial import QPolynomial
from qslice.quaternion import I, J, Quaternion


def test_sigma_same_line():
    assert math.isclose(sigma(Quaternion(3, 4), I), abs(Quaternion(3, 3)))
    assert sigma(Quaternion(3, 4), I) == pytest.approx(3 * math.sqrt(2))


def test_sigma_off_line():
    assert sigma(J, I) == pytest.approx(2.0)
    assert sigma(I, I) == 0.0


def test_tau_values():
    assert tau(J, I) == pytest.approx(0.0, abs=1e-15)
    assert tau(Quaternion(3, 4), I) == pytest.approx(3 * math.sqrt(2))
    assert tau(Quaternion(0, 0, 2), I) == pytest.approx(1.0)


def test_tau_on_sphere_and_conjugate():
    p = Quaternion(1, 2)
    assert tau(Quaternion(1, 0, 2), p) == 0.0
    # the conjugate sits on the same line, so tau sees the full distance
    assert tau(p.conj(), p) == pytest.approx(2 * p.im_norm())


def test_sigma_is_distance(rng):
    # symmetry exact, triangle inequality within 1e-12 slack, 10^4 triples
    pts = [rand_quat(rng, 2.0) for _ in range(66)]
    for a in pts[:22]:
        for b in pts[22:44]:
            assert sigma(a, b) == sigma(b, a)
            for c in pts[44:]:
                assert sigma(a, c) <= sigma(a, b) + sigma(b, c) + 1e-12


def test_tau_below_sigma(rng):
    for _ in range(500):
        a = rand_quat(rng, 2.0)
        b = rand_quat(rng, 2.0)
        assert tau(a, b) <= sigma(a, b) + 1e-14
        if same_line(a, b):
            assert tau(a, b) == sigma(a, b)


def test_region_disc_case():
    spec = RegionSpec.sigma_ball(I, 0.5)
    assert region_contains(spec, Quaternion(0, 1.2))
    assert not region_contains(spec, Quaternion(0, 0, 1.2))
    assert sigma_regime(I, 0.5) == "disc"


def test_region_shell_contains_conjugate_only():
    p = Quaternion(0.5, 1)
    spec = RegionSpec.shell(p, 0.0, 5.0)
    assert region_contains(spec, p.conj())
    assert not region_contains(spec, p)
    # other points of p's sphere are excluded (tau = 0 there)
    assert not region_contains(spec, Quaternion(0.5, 0, 1))
    assert not region_contains(spec, Quaternion(0.5, 0, 0, -1))
    # off the sphere, inside sigma radius: included
    assert region_contains(spec, Quaternion(0.5, 0, 2))


def test_region_boundary_points_are_outside():
    spec = RegionSpec.sigma_ball(Quaternion(0), 1.0)
    assert not region_contains(spec, Quaternion(1))
    assert not region_contains(spec, Quaternion(0, 1))


def test_represent_extremes(rng):
    for _ in range(20):
        valz = rand_quat(rng)
        valzbar = rand_quat(rng)
        u = (rand_quat(rng).im())
        u = u / u.im_norm()
        assert qclose(represent(valz, valzbar, u, u), valz, 1e-12)
        assert qclose(represent(valz, valzbar, u, -u), valzbar, 1e-12)


def test_represent_affine_mean(rng):
    for _ in range(20):
        valz, valzbar = rand_quat(rng), rand_quat(rng)
        iu = rand_quat(rng).im()
        iu = iu / iu.im_norm()
        ju = rand_quat(rng).im()
        ju = ju / ju.im_norm()
        mean = (represent(valz, valzbar, iu, ju) + represent(valz, valzbar, iu, -ju)) * 0.5
        assert qclose(mean, (valz + valzbar) * 0.5, 1e-12)


def test_represent_on_spherical_zero():
    # q^2 + 1 vanishes on the whole unit sphere: both slice values are 0
    f = QPolynomial([1.0, 0.0, 1.0])
    valz = f.eval(I)
    valzbar = f.eval(-I)
    for ju in (J, Quaternion(0, 0, 0, 1), Quaternion(0, 0.6, 0.8)):
        assert qclose(represent(valz, valzbar, I, ju), Quaternion(0), 1e-12)
        assert qclose(f.eval(ju), Quaternion(0), 1e-12)


@pytest.mark.parametrize("p,r,regime", [
    (Quaternion(0, 1), 0.5, "disc"),
    (Quaternion(0, 1), 2.0, "disc_union_shell"),
    (Quaternion(1), 0.7, "ball"),
])
def test_boundary_samples_residual(p, r, regime):
    spec = RegionSpec.sigma_ball(p, r)
    assert sigma_regime(p, r) == regime
    pts = ball_boundary_points(spec, 200)
    assert len(pts) >= 32
    for q in pts:
        assert abs(sigma(q, p) - r) <= 1e-6
        assert q.x3 == 0.0  # samples live in R+iR+jR


def test_boundary_samples_tau():
    spec = RegionSpec.tau_set(Quaternion(0, 1), 0.6)
    pts = ball_boundary_points(spec, 150)
    assert len(pts) >= 32
    for q in pts:
        assert abs(tau(q, Quaternion(0, 1)) - 0.6) <= 1e-6


def test_boundary_unsupported_kind():
    with pytest.raises(UnsupportedRegionKind):
        ball_boundary_points(RegionSpec.shell(I, 0.1, 1.0), 64)
    with pytest.raises(ValueError):
        ball_boundary_points(RegionSpec.sigma_ball(I, 1.0), 4)
