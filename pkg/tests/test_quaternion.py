import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import qclose, rand_quat
from qslice.errors import DivisionByZero, ParseError, RealPointAmbiguous
from qslice.quaternion import (I, J, K, Quaternion, Sphere, format_quaternion,
                               on_sphere, parse_quaternion, slice_unit,
                               sphere_of, unit_imaginary)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False,
                   allow_infinity=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def test_multiplication_table():
    assert I * J == K and J * I == -K
    assert J * K == I and K * J == -I
    assert K * I == J and I * K == -J
    assert I * I == Quaternion(-1) and J * J == Quaternion(-1) and K * K == Quaternion(-1)


def test_identity_element(rng):
    for _ in range(20):
        q = rand_quat(rng, 2.0)
        assert Quaternion(1) * q == q
        assert q * Quaternion(1) == q


def test_mixed_product_hand_expansion():
    # (i+j)(i-j) = i^2 - ij + ji - j^2 = -1 - k - k + 1 = -2k
    assert (I + J) * (I - J) == Quaternion(0, 0, 0, -2)


def test_inverse_unit_imaginary():
    assert qclose(I.inverse(), -I)


def test_inverse_round_trip():
    q = Quaternion(1, 1, 1, 1)
    assert qclose(q.inverse(), Quaternion(0.25, -0.25, -0.25, -0.25))
    assert qclose(q * q.inverse(), Quaternion(1), 1e-12)


def test_inverse_zero_raises():
    with pytest.raises(DivisionByZero):
        Quaternion(0).inverse()


def test_slice_unit_basic():
    assert qclose(slice_unit(Quaternion(3, 4)), I)
    u = slice_unit(Quaternion(1, 0, 1, -1))
    s = 1.0 / math.sqrt(2.0)
    assert qclose(u, Quaternion(0, 0, s, -s))
    assert qclose(u * u, Quaternion(-1), 1e-12)


def test_slice_unit_real_raises():
    with pytest.raises(RealPointAmbiguous):
        slice_unit(Quaternion(5))


def test_slice_reconstruction(rng):
    for _ in range(50):
        q = rand_quat(rng, 2.0)
        if q.im_norm() <= 1e-9:
            continue
        rebuilt = Quaternion(q.re) + q.slice_unit() * q.im_norm()
        assert qclose(rebuilt, q, 1e-12)


def test_sphere_ops():
    s = sphere_of(Quaternion(2, 0, 3))
    assert s == Sphere(2, 3)
    assert on_sphere(Quaternion(2, -3), Sphere(2, 3))
    assert not on_sphere(Quaternion(2, 0, 3), Sphere(2, 4))


def test_unit_imaginary_validation():
    unit_imaginary(I)
    with pytest.raises(ValueError):
        unit_imaginary(Quaternion(0.1, 1))
    with pytest.raises(ValueError):
        unit_imaginary(I * 1.01)


def test_nan_rejected():
    with pytest.raises(ValueError):
        Quaternion(float("nan"))
    with pytest.raises(ValueError):
        Quaternion(0, float("inf"))


@given(quats, quats, quats)
def test_mul_associative(a, b, c):
    lhs = (a * b) * c
    rhs = a * (b * c)
    assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(a) * abs(b) * abs(c))


@given(quats, quats)
def test_normsq_multiplicative(a, b):
    lhs = (a * b).normsq()
    rhs = a.normsq() * b.normsq()
    assert abs(lhs - rhs) <= 1e-10 * (1.0 + rhs)


@given(quats, quats)
def test_conj_antihomomorphism(a, b):
    assert abs((a * b).conj() - b.conj() * a.conj()) <= 1e-12 * (1 + abs(a) * abs(b))


def test_unit_imaginary_squares_to_minus_one(rng):
    for _ in range(200):
        v = [rng.normal() for _ in range(3)]
        n = math.sqrt(sum(x * x for x in v))
        if n < 1e-6:
            continue
        u = Quaternion(0, v[0] / n, v[1] / n, v[2] / n)
        assert abs(u * u - Quaternion(-1)) <= 1e-10


@pytest.mark.parametrize("text,expected", [
    ("1+2i-0.5k", Quaternion(1, 2, 0, -0.5)),
    ("-i", Quaternion(0, -1)),
    ("3", Quaternion(3)),
    ("i-j", Quaternion(0, 1, -1)),
    ("0.5j", Quaternion(0, 0, 0.5)),
    ("1e-3i", Quaternion(0, 1e-3)),
    ("  2 + 3i ", Quaternion(2, 3)),
])
def test_parse_quaternion(text, expected):
    assert parse_quaternion(text) == expected


@pytest.mark.parametrize("bad", ["", "1+2x", "1++", "2i+3i", "*"])
def test_parse_quaternion_rejects(bad):
    with pytest.raises(ParseError):
        parse_quaternion(bad)


def test_format_round_trip(rng):
    for _ in range(100):
        q = rand_quat(rng, 5.0)
        assert parse_quaternion(format_quaternion(q)) == q
    assert format_quaternion(Quaternion(0)) == "0"
    assert format_quaternion(Quaternion(1, 2, 0, -0.5)) == "1+2i-0.5k"
    assert format_quaternion(Quaternion(0.4, -0.2)) == "0.4-0.2i"
