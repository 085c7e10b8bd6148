import json
from fractions import Fraction

import pytest

from mobius3.lattice import (Budget, BudgetExceeded, a_coeffs, chain_mu, d_k,
                             enumerate_lattice, eulerian_phi, gen_probability, intersection_check,
                             lattice_of, recursion_residuals, sylow_counts, to_csv,
                             to_dict, to_json)
from mobius3.pgl.group import closure, group, projective

# (order, class size, normaliser order, mu) for PSL(3,2), frozen from enumeration
PSL32 = [(168, 1, 168, 1), (24, 7, 24, -1), (24, 7, 24, -1), (21, 8, 21, -1), (12, 7, 24, 0),
         (12, 7, 24, 0), (8, 21, 8, 1), (7, 8, 21, 0), (6, 28, 6, 1), (4, 7, 24, 0),
         (4, 7, 24, 0), (4, 21, 8, 0), (3, 28, 6, 2), (2, 21, 8, -4), (1, 1, 168, 0)]


def test_psl32_classes(psl32_model):
    m = psl32_model
    assert [(c.order, c.size, c.normalizer_order, c.mu) for c in m.classes] == PSL32
    assert m.total_subgroups == 179
    assert all(r == 0 for r in recursion_residuals(m))
    assert intersection_check(m) == []


def test_chain_mu_agrees(psl32_model):
    m = psl32_model
    for i, c in enumerate(m.classes):
        assert chain_mu(m, i) == c.mu


def test_hall(psl32_model):
    m = psl32_model
    assert eulerian_phi(m, 0) == 0 and eulerian_phi(m, 1) == 0
    assert eulerian_phi(m, 2) == 19152
    probs = [gen_probability(m, n) for n in range(1, 5)]
    assert probs[0] == 0 and probs[1] == Fraction(19, 28)
    assert all(a <= b for a, b in zip(probs, probs[1:])) and all(0 <= p <= 1 for p in probs)
    a = a_coeffs(m)
    assert a[1] == 1 and a[7] == -14 and a[168] == m.classes[-1].mu
    assert (336 * d_k(m, 2, 336)).denominator == 1
    assert sylow_counts(m) == {2: 21, 3: 28, 7: 8}


def test_cyclic_group_c2():
    ctx = projective(2)
    C2 = closure([ctx.elem((1, 1, 0, 0, 1, 0, 0, 0, 1))], ctx=ctx)
    m = lattice_of(C2)
    assert [(c.order, c.mu) for c in m.classes] == [(2, 1), (1, -1)]
    assert gen_probability(m, 1) == Fraction(1, 2)
    assert d_k(m, 1, 1) == 1 and d_k(m, 3, 1) == 7


def test_trivial_group():
    ctx = projective(2)
    m = lattice_of(closure([ctx.identity], ctx=ctx))
    assert len(m.classes) == 1 and m.classes[0].mu == 1


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_lattice(group(3), Budget(max_group_order=1000))


def test_export(psl32_model):
    d = json.loads(to_json(psl32_model))
    assert list(d) == ["group", "classes", "a"]
    assert d["group"] == {"q": 2, "kind": "psl3", "order": 168}
    assert set(d["classes"][0]) == {"order", "size", "normalizer_order", "mu", "fingerprint"}
    assert to_csv(psl32_model).splitlines()[0] == "order,size,normalizer_order,mu"
    assert to_json(psl32_model) == to_json(psl32_model)
    assert to_dict(psl32_model)["a"]["7"] == -14


def test_fingerprints_distinguish_sym4_classes(psl32_model):
    s4 = [c for c in psl32_model.classes if c.order == 24]
    for c in s4:
        assert dict(c.fingerprint[5]) == {1: 1, 2: 9, 3: 8, 4: 6}
