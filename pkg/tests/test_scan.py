import pytest

from mobius3.pgl.constructors import line_rep, maximal_constructor
from mobius3.pgl.group import closure, group, projective
from mobius3.pgl.orbits import orbit_stabilizer
from mobius3.pgl.scan import (count_conjugates_containing, normalizer, stream_of,
                              transporter_counts)


def test_normalizer_small():
    G = group(2)
    S = stream_of(G)
    assert normalizer(S, G).order == 168
    P = maximal_constructor("point_stab", 2)
    assert normalizer(S, P).order == 24


def test_normalizers_q8(stream8):
    assert normalizer(stream8, line_rep(23, 3)).order == 32
    assert normalizer(stream8, line_rep(14, 3)).order == 294


def test_conjugate_counts(stream8):
    G_order = 16482816
    D8 = line_rep(23, 3)
    Pi = line_rep(5, 3)
    assert count_conjugates_containing(G_order, D8, Pi, 168, stream=stream8) == 4
    one = line_rep(31, 3)
    assert count_conjugates_containing(G_order, one, Pi, 168, stream=stream8) == G_order // 168
    full = group(2)
    assert count_conjugates_containing(168, full, full, 168) == 1


def test_transporter_identity():
    G = group(3)
    H = maximal_constructor("singer_norm", 3)
    # g H g^-1 <= H exactly for g in N(H) = H
    assert transporter_counts(stream_of(G), H.generators, [H]) == [H.order]


def test_orbits():
    orb, st = orbit_stabilizer(group(2, "pgl3"), 0, "points")
    assert len(orb) == 7 and st.order == 24
    orb, st = orbit_stabilizer(group(4, "pgl3"), (0, 1), "points")
    assert len(orb) == 21 * 20 and st.order == 60480 // 420
    orb, st = orbit_stabilizer(group(8).generators, 0, "points")
    assert len(orb) == 73 and st.order == 225792
    plane = projective(4).plane
    L = next(l for l in range(21) if plane.on(0, l))
    orb, st = orbit_stabilizer(group(4, "pgl3"), (0, L), "flag")
    assert len(orb) == 105 and st.order == 576
    orb, st = orbit_stabilizer(group(4, "pgl3"), (0, 0), "flag")   # an anti-flag
    assert not plane.on(0, 0) and len(orb) == 21 * 16
