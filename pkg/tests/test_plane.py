import numpy as np
import pytest

from mobius3.pgl.plane import InvalidQ, build_plane


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8])
def test_counts_and_incidence(q):
    P = build_plane(q)
    n = q * q + q + 1
    assert P.n == n
    inc = P.incidence
    assert inc.shape == (n, n)
    assert (inc.sum(axis=0) == q + 1).all() and (inc.sum(axis=1) == q + 1).all()
    # two distinct lines meet in exactly one point
    m = inc.astype(int) @ inc.T.astype(int)
    assert (m[~np.eye(n, dtype=bool)] == 1).all()


def test_join_meet():
    P = build_plane(4)
    for a, b in [(0, 1), (3, 17), (5, 20)]:
        l = P.join(a, b)
        assert P.on(a, l) and P.on(b, l)
        c = next(x for x in range(P.n) if not P.on(x, l))
        assert not P.collinear(a, b, c)
        assert P.meet(l, P.join(a, c)) == a


def test_bad_q():
    with pytest.raises(InvalidQ):
        build_plane(6)
