import pytest
from hypothesis import given, strategies as st

from mobius3.gf import (DivisionByZero, NotPrime, TooLarge, field_for, is_irreducible,
                        make_field, prime_power)

QS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64, 128]


@st.composite
def field_and_elems(draw, n=3):
    q = draw(st.sampled_from(QS))
    return field_for(q), [draw(st.integers(0, q - 1)) for _ in range(n)]


@given(field_and_elems())
def test_field_axioms(fe):
    F, (a, b, c) = fe
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.exp(F.log(a)) == a


@given(field_and_elems(2))
def test_frobenius_is_additive_and_multiplicative(fe):
    F, (a, b) = fe
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(a, F.k) == a


@pytest.mark.parametrize("q", QS)
def test_primitive_generates(q):
    F = field_for(q)
    assert F.order(F.primitive) == q - 1
    assert sorted(F.exp(i) for i in range(q - 1)) == list(range(1, q))


def test_errors():
    with pytest.raises(NotPrime):
        make_field(6)
    with pytest.raises(TooLarge):
        field_for(256)
    with pytest.raises(DivisionByZero):
        field_for(4).inv(0)
    with pytest.raises(ValueError):
        prime_power(12)


def test_known_moduli():
    assert is_irreducible((1, 1, 0, 1), 2)      # x^3 + x + 1
    assert not is_irreducible((1, 0, 1), 2)     # x^2 + 1 = (x + 1)^2
    assert field_for(8).modulus == (1, 1, 0, 1)
