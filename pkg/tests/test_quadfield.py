from fractions import Fraction

import pytest

from markoff_lucas.quadfield import QuadFieldElement as Q


def test_ring_identities():
    a = Q(Fraction(3), Fraction(1, 2), 32)  # alpha for P=6, Q=1
    b = Q(Fraction(3), Fraction(-1, 2), 32)
    assert a * b == 1  # alpha*beta = Q
    assert a - b == Q.sqrt(32)
    assert a + b == 6
    assert (a - b) * (a - b) == 32


def test_inverse_and_negative_powers():
    a = Q(Fraction(3), Fraction(1, 2), 32)
    assert a * a.inverse() == 1
    assert a**-2 == (a.inverse()) ** 2
    assert a**0 == 1
    assert (a**5) * (a**-5) == 1


def test_square_radicand_collapses_to_rational():
    x = Q(Fraction(1, 2), Fraction(1, 2), 9)  # 1/2 + (1/2)*3 = 2
    assert x.is_rational() and x.as_fraction() == 2
    assert x == 2
    assert Q.sqrt(9) == 3


def test_sign_is_exact_near_collision():
    # 3 + 2*sqrt(2) vs 99/17: 17*(3+2sqrt2) = 51+34sqrt2, 34*sqrt2 = 48.08...
    a = Q(Fraction(3), Fraction(2), 2)
    assert a > Fraction(99, 17)
    assert a < Fraction(100, 17)
    # sqrt(2) against close rationals from its continued fraction
    r = Q.sqrt(2)
    assert r > Fraction(1393, 985)
    assert r < Fraction(3363, 2378)


def test_total_order_on_sample():
    vals = [
        Q.rational(0, 5),
        Q.rational(1, 5),
        Q.sqrt(5),
        Q(Fraction(1), Fraction(1), 5),
        Q(Fraction(-1), Fraction(1), 5),
        Q(Fraction(1), Fraction(-1), 5),
        Q.rational(Fraction(9, 4), 5),
    ]
    s = sorted(vals, key=lambda v: float(v))
    exact = sorted(vals)
    assert exact == s
    for lo, hi in zip(exact, exact[1:]):
        assert lo < hi or lo == hi


def test_mixed_radicand_rejected():
    with pytest.raises(ValueError):
        Q.sqrt(2) + Q.sqrt(3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Q.rational(1, 5) / Q.rational(0, 5)


def test_decimal_rendering():
    one_over_sqrt2 = 1 / Q.sqrt(2)
    assert (1 - one_over_sqrt2).decimal(5) == "0.29289"
    assert Q.rational(Fraction(1, 12), 9).decimal(5) == "0.083333"
    assert abs(float(Q.sqrt(2)) - 2**0.5) < 1e-12


def test_abs_and_conjugate():
    b = Q(Fraction(3), Fraction(-1, 2), 32)  # beta = 3-2sqrt2 > 0
    assert abs(b) == b
    assert abs(-b) == b
    assert b.conjugate() * b.conjugate().inverse() == 1
