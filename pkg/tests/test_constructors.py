import pytest

from mobius3.pgl.classify import classify
from mobius3.pgl.constructors import (InvalidKind, InvalidQ, TooLarge, UnsupportedLine,
                                      line_rep, maximal_constructor)
from mobius3.pgl.group import closure, projective
from mobius3.psl3.table4 import table4


@pytest.mark.parametrize("kind,q,order", [
    ("singer_norm", 2, 21), ("point_stab", 8, 225792), ("triangle_stab", 8, 294),
    ("line_stab", 4, 2880), ("singer_norm", 8, 219), ("subplane_stab", 8, 168),
    ("triangle_stab", 3, 24), ("point_stab", 5, 12000),
])
def test_maximal_orders(kind, q, order):
    assert maximal_constructor(kind, q).order == order


def test_maximal_errors():
    with pytest.raises(InvalidKind):
        maximal_constructor("nope", 4)
    with pytest.raises(InvalidQ):
        maximal_constructor("subplane_stab", 4)


def test_line_orders_q8():
    expected = {ln["line"]: ln["order"] for ln in table4(3)}
    for lid in range(1, 32):
        assert line_rep(lid, 3).order == expected[lid], lid


def test_line_examples():
    H = line_rep(19, 3)
    assert H.order == 7
    for g in H:
        if not g.is_identity():
            c = classify(g)
            assert c.tag == "Homology" and c.center == 9   # (1:0:0)
    assert line_rep(6, 3).order == 25088
    assert line_rep(23, 3).order == 8


def test_subfield_sl32():
    ctx = projective(8)
    from mobius3.pgl.group import elementary
    G = closure([ctx.elem(elementary(i, j, 1)) for i, j in ((0, 1), (1, 0), (1, 2), (2, 1))], ctx=ctx)
    assert G.order == 168


def test_line_rep_errors():
    with pytest.raises(InvalidQ):
        line_rep(1, 2)
    with pytest.raises(UnsupportedLine):
        line_rep(32, 3)
    with pytest.raises(TooLarge):
        line_rep(1, 5)
