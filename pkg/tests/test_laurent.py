import math

import pytest

from conftest import qclose, rand_quat
from qslice.errors import PoleEvaluation
from qslice.geometry import sigma, tau
from qslice.laurent import (classify, contour_coefficients, eval_truncated,
                            expand_rational, expansion_from_coefficients,
                            radii, star_power_value)
from qslice.polynomial import QPolynomial
from qslice.quaternion import I, J, Quaternion
from qslice.rational import QRational, from_quotient


def lin(p):
    return QPolynomial.monic_linear(p)


def rand_poly(rng, deg, box=1.0):
    return QPolynomial([rand_quat(rng, box) for _ in range(deg + 1)])


def test_expand_reciprocal_at_its_pole():
    r = from_quotient(QPolynomial([I, 1.0]), QPolynomial.one())
    e = expand_rational(r, -I, n_max=8)
    assert e.n_min == -1
    assert qclose(e.coefficient(-1), Quaternion(1), 1e-12)
    for n in range(0, 9):
        assert abs(e.coefficient(n)) <= 1e-12
    assert e.r1 == 0.0 and math.isinf(e.r2)
    assert str(classify(e)) == "pole(1)"


def test_expand_polynomial_at_origin(rng):
    f = rand_poly(rng, 5)
    e = expand_rational(QRational.from_polynomial(f), Quaternion(0), n_max=7)
    assert e.n_min == 0
    for n in range(0, 6):
        assert qclose(e.coefficient(n), f.coefficient(n), 1e-12)
    assert str(classify(e)) == "removable"


def test_expand_geometric_series():
    # 1/(q-2) at 0: complex geometric series gives a_n = -2^{-n-1}
    r = from_quotient(lin(Quaternion(2)), QPolynomial.one())
    e = expand_rational(r, Quaternion(0), n_max=20)
    assert e.n_min == 0
    for n in range(0, 21):
        assert qclose(e.coefficient(n), Quaternion(-(2.0 ** (-n - 1))), 1e-12)
    assert e.r2 == pytest.approx(2.0)


def test_star_power_values_against_polynomial(rng):
    for _ in range(40):
        p = rand_quat(rng, 1.5)
        q = rand_quat(rng, 1.5)
        n = 1 + int(rng.random() * 4)
        direct = (lin(p) ** n).eval(q)
        assert qclose(star_power_value(p, n, q), direct,
                      1e-10 * (1 + abs(q) + abs(p)) ** n)
    assert star_power_value(rand_quat(rng), 0, rand_quat(rng)) == Quaternion(1)


def test_star_power_negative_matches_rational(rng):
    for _ in range(30):
        p = rand_quat(rng, 1.2)
        q = rand_quat(rng, 1.2)
        if tau(q, p) < 1e-2:
            continue
        m = 1 + int(rng.random() * 3)
        rat = from_quotient(lin(p) ** m, QPolynomial.one())
        try:
            expect = rat.eval(q)
        except PoleEvaluation:
            continue
        got = star_power_value(p, -m, q)
        assert qclose(got, expect, 1e-8 * (1 + abs(expect)))


def test_star_power_pole_on_sphere():
    with pytest.raises(PoleEvaluation):
        star_power_value(I, -1, J)
    with pytest.raises(PoleEvaluation):
        star_power_value(I, -1, -I)  # conjugate point counts as on-sphere
    with pytest.raises(PoleEvaluation):
        star_power_value(Quaternion(2), -2, Quaternion(2))


def test_power_estimates(rng):
    for _ in range(300):
        p = rand_quat(rng, 1.5)
        q = rand_quat(rng, 1.5)
        n = 1 + int(rng.random() * 20)
        val = abs(star_power_value(p, n, q))
        assert val <= sigma(q, p) ** n * (1 + 1e-10)
        t = tau(q, p)
        if t > 1e-3:
            m = 1 + int(rng.random() * 20)
            assert abs(star_power_value(p, -m, q)) <= t ** (-m) * (1 + 1e-10)


def test_eval_truncated_single_term():
    r = from_quotient(QPolynomial([I, 1.0]), QPolynomial.one())
    e = expand_rational(r, -I, n_max=4)
    got = eval_truncated(e, Quaternion(2))
    assert qclose(got, Quaternion(0.4, -0.2), 1e-12)


def test_eval_truncated_constant_window(rng):
    c = rand_quat(rng)
    e = expansion_from_coefficients(Quaternion(0, 1), [c], n_min=0,
                                    exact_negative_tail=True)
    for _ in range(10):
        assert qclose(eval_truncated(e, rand_quat(rng, 2)), c, 1e-13)


def test_eval_truncated_geometric(rng):
    r = from_quotient(lin(Quaternion(2)), QPolynomial.one())
    e = expand_rational(r, Quaternion(0), n_max=60)
    q = Quaternion(0, 0, 0.5)
    assert sigma(q, Quaternion(0)) == 0.5
    assert qclose(eval_truncated(e, q), r.eval(q), 1e-9)


def test_eval_truncated_matches_rational_off_slice(rng):
    from conftest import sample_shell_point
    done = 0
    while done < 8:
        f = rand_poly(rng, 2)
        g = rand_poly(rng, 2)
        rat = from_quotient(f, g)
        if rat.denominator.degree < 1:
            continue
        from qslice.rootfind import real_poly_roots
        pairs = real_poly_roots(rat.denominator).conjugate_pairs()
        if not pairs:
            continue
        z = pairs[0][0]
        p = Quaternion(z.real, z.imag)
        e = expand_rational(rat, p, n_max=80)
        _, r2 = radii(e)
        if not (0.5 < r2):
            continue
        done += 1
        for _ in range(30):
            q = sample_shell_point(p, min(r2, 4.0), rng, hi=0.7)
            assert sigma(q, p) <= 0.7 * min(r2, 4.0) + 1e-9
            try:
                expect = rat.eval(q)
            except PoleEvaluation:
                continue
            got = eval_truncated(e, q)
            assert abs(got - expect) <= 1e-6 * (1 + abs(expect))


def test_expand_at_real_pole_center(rng):
    r = from_quotient(lin(Quaternion(2)), QPolynomial.one())
    e = expand_rational(r, Quaternion(2), n_max=5)
    assert e.n_min == -1
    assert qclose(e.coefficient(-1), Quaternion(1), 1e-12)
    for n in range(0, 6):
        assert abs(e.coefficient(n)) <= 1e-12
    for _ in range(10):
        q = rand_quat(rng, 1.5) + Quaternion(2)
        if abs(q - Quaternion(2)) < 1e-3:
            continue
        assert qclose(eval_truncated(e, q), r.eval(q), 1e-9 * (1 + abs(r.eval(q))))


def test_radii_examples():
    e = expansion_from_coefficients(Quaternion(0), [1.0] * 41, n_min=0,
                                    exact_negative_tail=True)
    r1, r2 = radii(e)
    assert r1 == 0.0 and r2 == pytest.approx(1.0)

    tail = [2.0 ** m for m in range(30, 0, -1)] + [0.0]
    e2 = expansion_from_coefficients(Quaternion(0), tail, n_min=-30)
    r1, r2 = radii(e2)
    assert r1 == pytest.approx(2.0)

    e3 = expansion_from_coefficients(Quaternion(0, 1), [1.0, 0.0, 0.0],
                                     n_min=-1, exact_negative_tail=True)
    assert radii(e3)[0] == 0.0


def test_classify_generator_window():
    coeffs = [1.0 / math.factorial(m) for m in range(40, 0, -1)] + [0.0]
    e = expansion_from_coefficients(Quaternion(0), coeffs, n_min=-40)
    c = classify(e)
    assert c.kind == "no_pole_of_order_le" and c.order == 40
    assert str(c) == "no_pole_of_order_le(40)"


def test_contour_matches_expansion():
    r = from_quotient(QPolynomial([I, 1.0]), QPolynomial.one())
    e = expand_rational(r, -I, n_max=10)
    got = contour_coefficients(r.eval, -I, -I.slice_unit() if False else (-I),
                               1.0, range(-3, 4), nodes=256)
    # slice unit of -i is -i itself
    for n in range(-3, 4):
        assert qclose(got[n], e.coefficient(n), 1e-8)


def test_contour_polynomial_coefficients(rng):
    f = rand_poly(rng, 4)
    rat = QRational.from_polynomial(f)
    p = Quaternion(0)
    got = contour_coefficients(rat.eval, p, I, 1.3, range(0, 7), nodes=256)
    for n in range(0, 5):
        assert qclose(got[n], f.coefficient(n), 1e-9 * (1 + f.norm()))
    assert abs(got[5]) <= 1e-10 * (1 + f.norm())
    assert abs(got[6]) <= 1e-10 * (1 + f.norm())


def test_contour_adaptive_node_doubling():
    r = from_quotient(QPolynomial([I, 1.0]), QPolynomial.one())
    e = expand_rational(r, -I, n_max=4)
    got = contour_coefficients(r.eval, -I, -I, 0.7, [-1, 0, 1])
    for n in (-1, 0, 1):
        assert qclose(got[n], e.coefficient(n), 1e-9)
