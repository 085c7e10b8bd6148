from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mobius3.psl3.qpoly import NotIntegral, QPoly, q

coeffs = st.dictionaries(st.integers(0, 6), st.fractions(max_denominator=6).filter(lambda f: abs(f) < 50),
                         max_size=4)


@given(coeffs, coeffs, st.integers(-5, 9))
def test_ring_ops_match_evaluation(a, b, x):
    A, B = QPoly(a), QPoly(b)
    assert (A + B)(x) == A(x) + B(x)
    assert (A - B)(x) == A(x) - B(x)
    assert (A * B)(x) == A(x) * B(x)


@given(coeffs, coeffs)
def test_exact_division(a, b):
    A, B = QPoly(a), QPoly(b)
    if B.is_zero():
        return
    assert (A * B) / B == A


def test_basics():
    assert str(QPoly()) == "0"
    assert str(-q / 2) == "-1/2*q^1"
    assert str(q ** 2 - 1) == "-1*q^0 + 1*q^2"
    assert (q ** 3 - 1) / (q - 1) == q ** 2 + q + 1
    with pytest.raises(NotIntegral):
        (q ** 2 + 1) / (q - 1)
    with pytest.raises(NotIntegral):
        (q / 2).eval_int(3)
    assert (q / 2).eval_int(8) == 4
    assert (q / 3)(2) == Fraction(2, 3)
