import pytest

from mobius3.psl3.census import census, stated_counts
from mobius3.psl3.table4 import InvalidP


def test_trivial_subgroup_inventory():
    r = census(31, 3)
    assert r.recursion_residual == 0
    assert [r.counts[k] for k in (1, 2, 3, 4, 5)] == [73, 73, 56064, 75264, 98112]
    assert all(agree for *_, agree in r.stated)


def test_line_23_resolution():
    r = census(23, 3)
    assert r.recursion_residual == 0 and r.mu == -4
    assert r.stated == [((1, 2, 3, 4, 5), 6, 6, True), ((6,), 1, 1, True),
                        ((20,), 4, 4, True), ((21,), 4, 4, True)]
    assert any("1 - q/2" in n for n in r.notes)


def test_line_29_and_25():
    r = census(29, 3)
    assert r.recursion_residual == 0
    assert r.stated[0] == ((1, 2, 3, 4, 5), 86, 86, True)
    r = census(25, 3)
    assert r.recursion_residual == 0
    # the Sym(4) overgroups number q - 1, not the printed q + 1
    assert r.counts[20] == r.counts[21] == 7
    assert ((20,), 9, 7, False) in r.stated


def test_line_24_normalizer():
    r = census(24, 3)
    assert r.normalizer_order == 147 and r.ok


def test_errors():
    with pytest.raises(InvalidP):
        census(1, 2)
    with pytest.raises(ValueError):
        census(32, 3)
    assert stated_counts(29, 3)[0][1] == 86
