import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mobius3.pgl.classify import classify
from mobius3.pgl.group import CapExceeded, closure, group, projective


@st.composite
def elems(draw, qs=(2, 3, 4, 5), k=2):
    """k elements of PGL(3,q), drawn by index into the materialised group."""
    G = group(draw(st.sampled_from(qs)), "pgl3")
    return [G.element(draw(st.integers(0, G.order - 1))) for _ in range(k)]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_pgl_order_by_closure(q):
    assert group(q, "pgl3").order == q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)


@pytest.mark.parametrize("q,order", [(2, 168), (3, 5616), (4, 20160), (5, 372000)])
def test_psl_order(q, order):
    assert group(q, "psl3").order == order


def test_psl38_not_materialised():
    G = group(8)
    assert G.order == 16482816 and not G.materialized


@settings(max_examples=60, deadline=None)
@given(elems(k=3))
def test_group_laws(es):
    a, b, c = es
    ctx = a.ctx
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == ctx.identity
    assert ctx.elem_from_code(a.code) == a
    assert np.array_equal((a * b).perm, a.perm[b.perm])     # apply b first
    assert (a ** a.order()).is_identity()


@settings(max_examples=60, deadline=None)
@given(elems(k=2))
def test_classification_is_conjugation_invariant(es):
    g, x = es
    c1, c2 = classify(g), classify(g.conj(x))
    assert (c1.tag, c1.order, c1.fixed_points, c1.fixed_lines) == \
        (c2.tag, c2.order, c2.fixed_points, c2.fixed_lines)
    if c1.center is not None:
        assert c2.center == int(x.perm[c1.center])


def test_classify_examples():
    ctx = projective(8)
    e = classify(ctx.elem((1, 0, 1, 0, 1, 0, 0, 0, 1)))
    assert e.tag == "Elation" and e.order == 2 and e.fixed_points == 9
    assert classify(ctx.identity).tag == "Identity"
    # a Singer cycle fixes nothing
    from mobius3.pgl.constructors import singer_generators
    s = classify(singer_generators(8)[0])
    assert s.tag == "SingerType" and s.order == 73


def test_closure_cap():
    ctx = projective(4)
    with pytest.raises(CapExceeded):
        closure(ctx.sl_generators(), cap=1000, ctx=ctx)


def test_subgroup_ops():
    G = group(2)
    ctx = G.ctx
    H = closure([ctx.elem((1, 1, 0, 0, 1, 0, 0, 0, 1))], ctx=ctx)
    assert H.order == 2 and H.is_subgroup_of(G)
    assert H.intersection(G).order == 2
    assert all(h in G for h in H)
