import pytest
from hypothesis import given, strategies as st

from mobius3.eulerchar import (InvalidInput, chi_bruteforce, chi_chaincount, chi_closed,
                               elation_census, elem_abelian, gaussian_binomial, pgl, r_case,
                               r_subgroups)
from mobius3.lattice import Local

SPOT = {2: {2: -7, 3: 28, 7: 8}, 3: {3: -26, 2: -351, 13: 144},
        4: {2: -63, 3: -8504, 5: 2016, 7: 960}, 5: {5: -124, 2: -6975, 3: 7750, 31: 4000}}


@pytest.fixture(scope="module")
def locals_():
    return {q: Local(pgl(q)) for q in (2, 3, 4)}


def test_spot_values():
    for q, vals in SPOT.items():
        for r, v in vals.items():
            assert chi_closed(q, r) == v
    assert chi_closed(7, 11) == 0


def test_case_dispatch():
    assert r_case(3, 2).tag == "Two_Qodd"          # 2 divides q-1 and q+1
    assert r_case(4, 3).tag == "Three_divQminus1"
    assert r_case(7, 3).tag == "Three_divQminus1"
    assert r_case(8, 7).tag == "DividesQminus1_not23"
    assert r_case(4, 5).tag == "DividesQplus1_not2"
    assert r_case(2, 7).tag == "DividesQ2Q1_not3"
    assert r_case(9, 3).tag == "DividesQ"
    with pytest.raises(InvalidInput):
        chi_closed(6, 2)
    with pytest.raises(InvalidInput):
        chi_closed(4, 4)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_bruteforce_matches_closed(q, locals_):
    for r in SPOT[q]:
        assert chi_bruteforce(locals_[q], r) == chi_closed(q, r)
    assert chi_bruteforce(locals_[q], 11) == 0


def test_elem_abelian_examples(locals_):
    recs = elem_abelian(locals_[2], 2)
    assert recs[0].count == 21
    assert [r.rank for r in elem_abelian(locals_[3], 2)] == [1, 2]   # no E_8
    assert elem_abelian(locals_[3], 5) == []


@pytest.mark.parametrize("q,r", [(2, 2), (2, 3), (2, 7), (3, 2), (3, 3), (3, 13)])
def test_chaincount(q, r, locals_):
    assert chi_chaincount(locals_[q], r) == chi_closed(q, r)


def test_chain_poset_q2(locals_):
    subs = r_subgroups(locals_[2], 2)
    assert sorted({len(s) for s in subs}) == [2, 4, 8]
    assert chi_chaincount(poset=[]) == 0


@given(st.integers(1, 7), st.integers(0, 7), st.sampled_from([2, 3, 5]))
def test_gaussian_pascal(n, k, r):
    if k > n:
        return
    if 1 <= k <= n - 1:
        assert gaussian_binomial(n, k, r) == r ** k * gaussian_binomial(n - 1, k, r) + \
            gaussian_binomial(n - 1, k - 1, r)
    assert gaussian_binomial(n, k, r) == gaussian_binomial(n, n - k, r)


def test_gaussian_examples():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35


@pytest.mark.parametrize("q", [2, 4])
def test_elation_census(q):
    rep = elation_census(q)
    assert rep["agree"]
    assert rep["N_ac"][1] == {2: 21, 4: 315}[q]
    assert rep["N_a"][1] == 0
