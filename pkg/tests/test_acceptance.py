"""Acceptance suite: every criterion at its stated tolerance.

Each criterion prints one PASS/FAIL line (run with -s to see them all).
"""

import functools
import math

import numpy as np
import pytest

from conftest import qclose, rand_quat, rand_unit, sample_shell_point
from qslice import cli
from qslice.cpoly import valuation
from qslice.errors import PoleEvaluation
from qslice.experiments import (CoefficientGenerator, casorati_scan,
                                identity_sweep)
from qslice.geometry import (RegionSpec, ball_boundary_points, sigma,
                             sigma_regime, tau)
from qslice.laurent import (contour_coefficients, eval_truncated,
                            expand_rational, radii, star_power_value)
from qslice.polynomial import (QPolynomial, RealPolynomial,
                               left_divide_linear, star_mul)
from qslice.quaternion import I, J, Quaternion, Sphere
from qslice.rational import analyze_poles, from_quotient
from qslice.rng import Xoshiro256
from qslice.rootfind import real_poly_roots
from qslice.zeros import analyze_zeros, conjugate_root_of_pair


def lin(p):
    return QPolynomial.monic_linear(p)


def criterion(num, desc):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE {num} [{desc}]: FAIL")
                raise
            print(f"\nACCEPTANCE {num} [{desc}]: PASS")
        return wrapper
    return deco


# --- criterion 1: worked-example suite ----------------------------------------

@criterion("1a", "conjugate pair product and spherical zero report")
def test_worked_example_conjugate_pair():
    prod = star_mul(lin(I), QPolynomial([I, 1.0]))
    assert prod == QPolynomial([1.0, 0.0, 1.0])
    rep = analyze_zeros(prod)
    assert rep.spherical == ((Sphere(0.0, 1.0), 2),)
    assert rep.isolated == ()
    # classical multiplicity 1 at each sampled point of the sphere
    rng = Xoshiro256(11)
    for _ in range(10):
        u = rand_unit(rng)
        quo, rem = left_divide_linear(prod, u)
        assert abs(rem) <= 1e-10
        _, rem2 = left_divide_linear(quo, u)
        assert abs(rem2) > 1e-3  # a second division must fail


@criterion("1b", "one-sided unit pair: isolated multiplicity 2")
def test_worked_example_one_sided_pair():
    prod = star_mul(lin(I), lin(J))
    rep = analyze_zeros(prod)
    assert rep.spherical == ()
    assert len(rep.isolated) == 1
    z = rep.isolated[0]
    assert qclose(z.point, I, 1e-10)
    assert z.isolated == 2 and z.classical == 1
    assert rep.total_multiplicity() == 2 == prod.degree


@criterion("1c", "three-case root law on 100 random pairs per case")
def test_three_case_root_law():
    rng = Xoshiro256(1234)

    def sampled_pair_distinct_spheres():
        while True:
            a = rand_quat(rng, 1.5)
            b = rand_quat(rng, 1.5)
            if a.im_norm() < 0.1 or b.im_norm() < 0.1:
                continue
            if math.hypot(a.re - b.re, a.im_norm() - b.im_norm()) > 0.1 \
                    and abs(b - a.conj()) > 0.1:
                return a, b

    for _ in range(100):
        a, b = sampled_pair_distinct_spheres()
        prod = star_mul(lin(a), lin(b))
        scale = prod.scale_at(2.0 + abs(a) + abs(b))
        second = conjugate_root_of_pair(a, b)
        rep = analyze_zeros(prod)
        assert rep.spherical == ()
        points = sorted((z.point for z in rep.isolated),
                        key=lambda p: (p.x0, p.im_norm()))
        expected = sorted([a, second], key=lambda p: (p.x0, p.im_norm()))
        assert len(points) == 2
        for got, want in zip(points, expected):
            assert qclose(got, want, 1e-6 * (1 + abs(want)))
            assert abs(prod.eval(got)) <= 1e-8 * scale

    for _ in range(100):
        a = rand_quat(rng, 1.5)
        if a.im_norm() < 0.2:
            a = a + Quaternion(0, 0.5)
        iu = a.slice_unit()
        ju = rand_unit(rng)
        if min(abs(ju - iu), abs(ju + iu)) < 0.1:
            ju = ju * iu / abs(ju * iu)
            ju = ju.im() / ju.im_norm()
        b = Quaternion(a.re) + ju * a.im_norm()  # same sphere, b != conj(a)
        assert abs(b - a.conj()) > 1e-3
        prod = star_mul(lin(a), lin(b))
        rep = analyze_zeros(prod)
        assert rep.spherical == ()
        assert len(rep.isolated) == 1
        z = rep.isolated[0]
        assert qclose(z.point, a, 1e-6 * (1 + abs(a)))
        assert z.isolated == 2
        assert abs(prod.eval(z.point)) <= 1e-8 * prod.scale_at(abs(a) + 1)

    for _ in range(100):
        a = rand_quat(rng, 1.5)
        if a.im_norm() < 0.2:
            a = a + Quaternion(0, 0.5)
        prod = star_mul(lin(a), lin(a.conj()))
        rep = analyze_zeros(prod)
        assert len(rep.spherical) == 1 and rep.isolated == ()
        s, mult = rep.spherical[0]
        assert mult == 2
        assert abs(s.x - a.re) <= 1e-8 * (1 + abs(a))
        assert abs(s.y - a.im_norm()) <= 1e-8 * (1 + abs(a))
        assert abs(prod.eval(Quaternion(s.x, s.y))) <= 1e-8 * prod.scale_at(abs(a))


@criterion("1d", "regular reciprocal of q+i: normalized form and pole data")
def test_worked_example_reciprocal():
    r = from_quotient(QPolynomial([I, 1.0]), QPolynomial.one())
    assert r.numerator == lin(I)
    assert r.denominator == RealPolynomial([1.0, 0.0, 1.0])
    rep = analyze_poles(r)
    assert len(rep.spheres) == 1
    sp = rep.spheres[0]
    assert sp.generic_order == 1
    assert sp.exceptional is not None
    w, order = sp.exceptional
    assert qclose(w, I, 1e-10) and order == 0
    assert sp.spherical_order == 2
    flags = {str(p): f for p, f in sp.flags}
    assert flags["i"] == "order0_nonremovable"
    # non-removability witnessed by a sampled value of norm > 1e3 at
    # distance 1e-3 off-slice from i
    eps = 1e-3
    worst = 0.0
    for t in range(100):
        ang = 2 * math.pi * t / 100
        u = Quaternion(0, 0, math.cos(ang), math.sin(ang))
        h = u * eps - I * (0.45 * eps * eps)
        h = h * (eps / abs(h))
        assert abs(h) == pytest.approx(eps)
        worst = max(worst, abs(r.eval(I + h)))
    assert worst > 1e3


# --- criterion 2: identity sweeps ----------------------------------------------

@criterion("2", "identity sweeps, 1000 trials each, residual <= 1e-8*scale")
def test_identity_sweeps():
    for name in ("product_formula", "representation", "star_inverse",
                 "transport", "transport_inverse", "conj_reversal",
                 "associativity"):
        rep = identity_sweep(name, 1000, seed=42)
        assert rep.passed, f"{name}: worst residual {rep.worst_residual:.3e}"
        assert rep.tolerance <= 1e-8


# --- criterion 3: power estimates ------------------------------------------------

@criterion("3", "sigma/tau power estimates and n=50 limit sharpness")
def test_power_estimates():
    rng = Xoshiro256(77)
    checked_neg = 0
    for _ in range(1000):
        p = rand_quat(rng, 1.5)
        q = rand_quat(rng, 1.5)
        n = 1 + int(rng.random() * 20)
        assert abs(star_power_value(p, n, q)) <= sigma(q, p) ** n * (1 + 1e-10)
        t = tau(q, p)
        if t > 1e-3:
            m = 1 + int(rng.random() * 20)
            assert abs(star_power_value(p, -m, q)) <= t ** (-m) * (1 + 1e-10)
            checked_neg += 1
    assert checked_neg > 900

    # limit sharpness: within 2% at n = 50 for pairs with slice angle in
    # [60, 120] degrees and tau <= 0.8 sigma (away from the degenerate
    # geometries where convergence to the limit is arbitrarily slow)
    done = 0
    while done < 50:
        x = rng.uniform(-1, 1)
        iu = rand_unit(rng)
        ju = rand_unit(rng)
        if abs(-(iu * ju).x0) > 0.5:
            continue
        p = Quaternion(x) + iu * rng.uniform(0.2, 1.2)
        q = Quaternion(rng.uniform(-1, 1)) + ju * rng.uniform(0.2, 1.2)
        if tau(q, p) > 0.8 * sigma(q, p) or tau(q, p) <= 1e-3:
            continue
        done += 1
        val = abs(star_power_value(p, 50, q)) ** (1.0 / 50)
        assert abs(val - sigma(q, p)) <= 0.02 * sigma(q, p)


# --- criterion 4: Laurent round-trip ----------------------------------------------

def _random_rational_with_pole(rng):
    while True:
        u = rand_unit(rng)
        x = rng.uniform(-1.0, 1.0)
        y = rng.uniform(0.3, 1.2)
        p0 = Quaternion(x) + u * y
        factors = [lin(p0)]
        if rng.random() < 0.5:
            factors.append(lin(rand_quat(rng, 1.2)))
        f = QPolynomial.one()
        for fac in factors:
            f = star_mul(f, fac)
        g = QPolynomial([rand_quat(rng, 1.0) for _ in range(2)])
        rat = from_quotient(f, g)
        if rat.denominator.degree < 2:
            continue
        pairs = real_poly_roots(rat.denominator).conjugate_pairs()
        if not pairs:
            continue
        z = pairs[0][0]
        center = Quaternion(z.real, z.imag)
        e = expand_rational(rat, center, n_max=80)
        if e.n_min >= 0:
            continue
        _, r2 = radii(e)
        if r2 < 0.5:
            continue
        return rat, center, e, min(r2, 4.0)


@criterion("4", "Laurent round-trip at pole centers + contour coefficients")
def test_laurent_round_trip():
    rng = Xoshiro256(2024)
    for _ in range(50):
        rat, center, e, r2 = _random_rational_with_pole(rng)
        for _ in range(100):
            q = sample_shell_point(center, r2, rng, lo=0.1, hi=0.8,
                                   tau_floor=0.02)
            assert sigma(q, center) <= 0.8 * r2 + 1e-9
            try:
                expect = rat.eval(q)
            except PoleEvaluation:
                continue
            got = eval_truncated(e, q)
            assert abs(got - expect) <= 1e-6 * (1 + abs(expect))
        # contour recovery on the slice circle, fixed at 256 nodes
        radius = 0.5 * min(r2, 2.0)
        ns = range(max(-10, e.n_min), 11)
        got = contour_coefficients(rat.eval, center, center.slice_unit(),
                                   radius, ns, nodes=256)
        top = 1.0 + max(abs(e.coefficient(n)) for n in ns)
        for n in ns:
            assert abs(got[n] - e.coefficient(n)) <= 1e-8 * top


# --- criterion 5: pole-order laws ---------------------------------------------------

@criterion("5", "order bound, structure of poles, spherical order")
def test_pole_order_laws():
    rng = Xoshiro256(31337)
    # ord bound ord <= m_{f^s}(p) on 200 random quotients
    done = 0
    while done < 200:
        f = QPolynomial([rand_quat(rng, 1.2) for _ in range(1 + 2 + int(rng.random() * 2))])
        g = QPolynomial([rand_quat(rng, 1.2) for _ in range(2)])
        rat = from_quotient(f, g)
        if rat.denominator.degree < 1:
            continue
        done += 1
        fs = f.symmetrize()
        for sp in analyze_poles(rat).spheres:
            z = complex(sp.sphere.x, sp.sphere.y)
            bound = valuation(fs.coeffs.astype(np.complex128), z, 1e-8)
            orders = [sp.generic_order]
            if sp.exceptional is not None:
                orders.append(sp.exceptional[1])
            assert max(orders) <= bound

    # structure of poles on 100 engineered rationals with an exceptional point
    for _ in range(100):
        u = rand_unit(rng)
        p0 = Quaternion(rng.uniform(-1, 1)) + u * rng.uniform(0.3, 1.4)
        a = 1
        b = 2 + int(rng.random() * 2)
        f = (lin(p0) ** a) * (lin(p0.conj()) ** b)
        rat = from_quotient(f, QPolynomial.one())
        rep = analyze_poles(rat)
        assert len(rep.spheres) == 1
        sp = rep.spheres[0]
        assert sp.generic_order == b
        assert sp.exceptional is not None
        w, order = sp.exceptional
        assert order == a and order < sp.generic_order
        assert sp.spherical_order == 2 * max(order, sp.generic_order)
        assert sp.isolated_multiplicity is not None
        assert sp.isolated_multiplicity[1] >= sp.generic_order - order


# --- criterion 6: Casorati-Weierstrass scan ----------------------------------------

@criterion("6", "density scan hit fraction >= 0.95 (engineering threshold)")
def test_casorati_scan_threshold():
    gen = CoefficientGenerator("reciprocal_factorial")
    res = casorati_scan(gen, Quaternion(0), r=0.5, eps=0.1, ntargets=100,
                        seed=0, depth=40, budget=10_000)
    assert res.targets_tried == 100
    for w in res.witnesses:
        assert w.residual < 0.1
    assert res.hit_fraction >= 0.95
    assert "threshold_note" in res.to_json_dict()


# --- criterion 7: boundary samples for the three sigma-ball regimes ------------------

@criterion("7", "sigma-ball boundary samples in all three regimes")
def test_region_boundary_regimes(capsys):
    cases = [
        (Quaternion(0.5, 1.0), 0.6, "disc"),
        (Quaternion(0.5, 1.0), 1.8, "disc_union_shell"),
        (Quaternion(-0.25), 0.9, "ball"),
    ]
    for p, radius, regime in cases:
        assert sigma_regime(p, radius) == regime
        pts = ball_boundary_points(RegionSpec.sigma_ball(p, radius), 300)
        assert len(pts) >= 64
        for q in pts:
            assert abs(sigma(q, p) - radius) <= 1e-6
    # the CLI emits the same samples as CSV
    with capsys.disabled():
        pass
    assert cli.run(["region", "--kind", "sigma_ball", "--p", "0.5+1i",
                    "--R", "1.8", "--count", "128"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "x0,x1,x2,x3"
    p = Quaternion(0.5, 1.0)
    for line in out[1:]:
        q = Quaternion(*[float(v) for v in line.split(",")])
        assert abs(sigma(q, p) - 1.8) <= 1e-6
