from fractions import Fraction

import pytest

from mobius3.psl3.qpoly import QPoly, q
from mobius3.psl3.table4 import (G_ORDER, InvalidP, a_n_closed, consistency_table1_vs_table4,
                                 global_sum_check, integrality_report, line, mann_check,
                                 table1_fixture, table2_fixture, table4)


def test_shape():
    lines = table4(3)
    assert len(lines) == 31
    nonzero = [ln["line"] for ln in lines if ln["mu"]]
    assert len(nonzero) + 1 == 14     # plus G itself


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_integrality(p):
    assert integrality_report(p) == []
    g = G_ORDER.eval_int(2 ** p)
    for ln in table4(p):
        assert ln["normalizer_order"] * ln["class_size"] == g


def test_examples():
    l23 = line(23, 3)
    assert l23.mu.eval_int(8) == -4 and l23.normalizer_order.eval_int(8) == 32
    l7 = line(7, 3)
    # |GL(2,8)| = 63 * 56
    assert l7.mu.eval_int(8) == 1 and l7.order.eval_int(8) == 3528
    for p in (3, 5):
        l31 = line(31, p)
        assert l31.mu.is_zero() and l31.normalizer_order == G_ORDER
    assert line(24, 3).normalizer_order.eval_int(8) == 147
    assert line(24, 5).normalizer_order.eval_int(32) == 3 * (32 ** 2 + 32 + 1)


def test_invalid_p():
    for p in (2, 4, 9, 1):
        with pytest.raises(InvalidP):
            table4(p)


def test_global_sum():
    assert global_sum_check("symbolic").is_zero()
    for p in (3, 5, 7, 11, 13):
        assert global_sum_check("numeric", p) == 0


def test_a_n():
    a = a_n_closed(3)
    assert a[1] == 1 and a[73] == -146 and a[98112] == -98112
    # total of a_n over n weighs every nonzero-mu subgroup once: sum is mu({1}) summed = 0
    assert sum(a.values()) == 0


def test_mann():
    for p in (3, 5, 7):
        rep = mann_check(p)
        assert rep["ok"] and rep["max_ratio"] <= 1
    assert mann_check(3)["ratios"][23] == Fraction(4, 16482816 // 8)


def test_fixtures():
    t1 = table1_fixture()
    assert len(t1) == 14
    t2 = table2_fixture()
    assert len(t2) == 20
    assert t2[-1] == ("{1}", 1, 1, -120960)
    assert ("C_2", 2, 1, 544) in t2 and ("Sym(4)", 24, 6, 2) in t2 and ("D_8", 8, 3, -4) in t2
    rep = consistency_table1_vs_table4()
    assert rep["ok"], rep["problems"]


def test_corrupted_mu_breaks_global_sum(monkeypatch):
    import sys
    t4 = sys.modules["mobius3.psl3.table4"]
    rows = list(t4._ROWS)
    i = next(k for k, r in enumerate(rows) if r[0] == 23)
    r = list(rows[i])
    r[5] = 1 - q / 2
    rows[i] = tuple(r)
    monkeypatch.setattr(t4, "_ROWS", rows)
    assert not t4.global_sum_check("symbolic").is_zero()
    with pytest.raises(AssertionError):
        t4.global_sum_check("numeric", 3)
