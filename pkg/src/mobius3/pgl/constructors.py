"""Explicit subgroups: the maximal subgroups of PGL(3,q) and one
representative for each of the 31 classes of intersections of maximal
subgroups of PSL(3,2^p), p an odd prime.

Lines 1-19 are built from matrix families over GF(q); lines 20-31 live
inside the GF(2)-subfield copy of PSL(3,2), i.e. they stabilise the
subplane of points with coordinates in {0,1}.
"""

from __future__ import annotations

from ..gf import is_prime
from .group import (CapExceeded, SubgroupRec, closure, diag, elementary, identity_mat,
                    mat_mul, projective)

DEFAULT_CAP = 400_000

KINDS = ("point_stab", "line_stab", "triangle_stab", "singer_norm", "subplane_stab")


class InvalidKind(ValueError):
    pass


class InvalidQ(ValueError):
    pass


class UnsupportedLine(ValueError):
    pass


class TooLarge(RuntimeError):
    pass


def _basis(F):
    return [F.p ** i for i in range(F.k)]


def _mat(rows):
    return tuple(x for r in rows for x in r)


# -- Singer cycles ------------------------------------------------------------

def companion(c0, c1, c2):
    """Companion matrix of x^3 + c2 x^2 + c1 x + c0 (multiplication by x on
    the basis 1, x, x^2), with negatives left to the caller's field."""
    return _mat([[0, 0, c0], [1, 0, c1], [0, 1, c2]])


def _raw_pow(F, A, e):
    R = identity_mat()
    while e:
        if e & 1:
            R = mat_mul(F, R, A)
        A = mat_mul(F, A, A)
        e >>= 1
    return R


def singer_polynomial(q: int):
    """First monic cubic x^3 + a2 x^2 + a1 x + a0 (by index a0 + a1 q + a2 q^2)
    whose companion matrix has projective order q^2+q+1."""
    ctx = projective(q)
    F = ctx.F
    target = q * q + q + 1
    for idx in range(q ** 3):
        a0, a1, a2 = idx % q, (idx // q) % q, idx // (q * q)
        if a0 == 0:
            continue
        # no root in GF(q)
        if any(F.sum([F.pow(x, 3), F.mul(a2, F.mul(x, x)), F.mul(a1, x), a0]) == 0
               for x in range(q)):
            continue
        C = companion(F.neg(a0), F.neg(a1), F.neg(a2))
        if ctx.elem(C).order() == target:
            return (a0, a1, a2, 1)
    raise AssertionError("no Singer polynomial found")


def singer_generators(q: int):
    """A Singer cycle and the q-power Frobenius map in the basis 1, x, x^2."""
    ctx = projective(q)
    F = ctx.F
    a0, a1, a2, _ = singer_polynomial(q)
    C = companion(F.neg(a0), F.neg(a1), F.neg(a2))
    # column j of the Frobenius matrix = coordinates of x^(jq) = C^(jq) e_0
    cols = []
    for j in range(3):
        M = _raw_pow(F, C, j * q)
        cols.append((M[0], M[3], M[6]))
    frob = tuple(cols[j][i] for i in range(3) for j in range(3))
    return [ctx.elem(C), ctx.elem(frob)]


# -- generator sets -------------------------------------------------------------

def _point_stab_gens(ctx):
    F = ctx.F
    e = F.primitive
    gens = [diag(e, 1, 1), diag(1, e, 1)]
    for a in _basis(F):
        gens += [elementary(0, 1, a), elementary(0, 2, a), elementary(1, 2, a), elementary(2, 1, a)]
    return gens


def _line_stab_gens(ctx):
    F = ctx.F
    e = F.primitive
    gens = [diag(e, 1, 1), diag(1, e, 1)]
    for a in _basis(F):
        gens += [elementary(0, 1, a), elementary(1, 0, a), elementary(0, 2, a), elementary(1, 2, a)]
    return gens


def _triangle_stab_gens(ctx):
    e = ctx.F.primitive
    return [diag(e, 1, 1), diag(1, e, 1), _mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
            _mat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])]


def _sl32_gens():
    return [elementary(0, 1, 1), elementary(1, 0, 1), elementary(1, 2, 1), elementary(2, 1, 1)]


def maximal_generators(kind: str, q: int):
    ctx = projective(q)
    if kind == "point_stab":
        return [ctx.elem(m) for m in _point_stab_gens(ctx)]
    if kind == "line_stab":
        return [ctx.elem(m) for m in _line_stab_gens(ctx)]
    if kind == "triangle_stab":
        return [ctx.elem(m) for m in _triangle_stab_gens(ctx)]
    if kind == "singer_norm":
        return singer_generators(q)
    if kind == "subplane_stab":
        F = ctx.F
        if F.p != 2 or not is_prime(F.k) or F.k == 2:
            raise InvalidQ("subplane stabilisers are maximal only for q = 2^p, p an odd prime")
        return [ctx.elem(m) for m in _sl32_gens()]
    raise InvalidKind(kind)


def maximal_constructor(kind: str, q: int, cap: int = DEFAULT_CAP) -> SubgroupRec:
    if kind not in KINDS:
        raise InvalidKind(kind)
    gens = maximal_generators(kind, q)
    try:
        return closure(gens, cap=cap, tag=kind)
    except CapExceeded:
        raise TooLarge(f"{kind} at q={q} exceeds {cap} elements") from None


# -- the 31 lines ---------------------------------------------------------------

def line_generators(line: int, q: int):
    """Matrix generators (row-major 9-tuples) of the line representative."""
    ctx = projective(q)
    F = ctx.F
    e = F.primitive
    B = _basis(F)
    E = elementary
    if line == 1:
        return _point_stab_gens(ctx)
    if line == 2:
        return _line_stab_gens(ctx)
    if line == 3:
        return _triangle_stab_gens(ctx)
    if line == 4:
        return [g.mat for g in singer_generators(q)]
    if line == 5:
        return _sl32_gens()
    if line == 6:   # [[l,a,b],[0,m,c],[0,0,1]]
        return [diag(e, 1, 1), diag(1, e, 1)] + [E(i, j, a) for (i, j) in ((0, 1), (0, 2), (1, 2)) for a in B]
    if line == 7:   # [[1,0,0],[0,a,b],[0,c,d]]
        return [diag(1, e, 1), diag(1, 1, e)] + [E(i, j, a) for (i, j) in ((1, 2), (2, 1)) for a in B]
    if line == 8:   # [[l,0,a],[0,m,b],[0,0,n]]
        return [diag(e, 1, 1), diag(1, e, 1)] + [E(i, 2, a) for i in (0, 1) for a in B]
    if line == 9:   # [[l,a,b],[0,m,0],[0,0,n]]
        return [diag(e, 1, 1), diag(1, e, 1)] + [E(0, j, a) for j in (1, 2) for a in B]
    if line == 10:  # [[1,0,a],[0,1,b],[0,0,n]]
        return [diag(1, 1, e)] + [E(i, 2, a) for i in (0, 1) for a in B]
    if line == 11:  # [[n,a,b],[0,1,0],[0,0,1]]
        return [diag(e, 1, 1)] + [E(0, j, a) for j in (1, 2) for a in B]
    if line == 12:  # [[l,0,c],[0,m,0],[0,0,1]]
        return [diag(e, 1, 1), diag(1, e, 1)] + [E(0, 2, a) for a in B]
    if line == 13:
        return [diag(1, e, 1), diag(1, 1, e), _mat([[1, 0, 0], [0, 0, 1], [0, 1, 0]])]
    if line == 14:
        return [diag(e, 1, 1), diag(1, e, 1)]
    if line == 15:  # [[1,0,a],[0,1,0],[0,0,n]]
        return [diag(1, 1, e)] + [E(0, 2, a) for a in B]
    if line == 16:  # [[l,0,b],[0,1,0],[0,0,1]]
        return [diag(e, 1, 1)] + [E(0, 2, a) for a in B]
    if line == 17:
        return [_mat([[1, 0, 1], [0, e, 0], [0, 0, 1]])]
    if line == 18:
        return [E(0, 2, a) for a in B]
    if line == 19:
        return [diag(e, 1, 1)]
    # inside PSL(3,2)
    if line == 20:  # stabiliser of (1:0:0)
        return [E(0, 1, 1), E(0, 2, 1), E(1, 2, 1), E(2, 1, 1)]
    if line == 21:  # stabiliser of Z = 0
        return [E(0, 1, 1), E(1, 0, 1), E(0, 2, 1), E(1, 2, 1)]
    if line == 22:
        C = companion(1, 1, 0)              # x^3 + x + 1
        frob = _mat([[1, 0, 0], [0, 0, 1], [0, 1, 1]])  # x -> x^2 in basis 1, x, x^2
        return [C, frob]
    if line == 23:  # upper unitriangular
        return [E(0, 1, 1), E(1, 2, 1)]
    if line == 24:
        return [companion(1, 1, 0)]
    if line == 25:
        return [_mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]]), _mat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])]
    if line == 26:
        return [_mat([[1, 1, 1], [0, 1, 1], [0, 0, 1]])]
    if line == 27:
        return [E(0, 1, 1), E(0, 2, 1)]
    if line == 28:
        return [E(0, 2, 1), E(1, 2, 1)]
    if line == 29:
        return [_mat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])]
    if line == 30:
        return [E(0, 2, 1)]
    if line == 31:
        return []
    raise UnsupportedLine(f"line {line} is not in 1..31")


def line_rep(line: int, p: int, cap: int = DEFAULT_CAP) -> SubgroupRec:
    if not (is_prime(p) and p > 2):
        raise InvalidQ("p must be an odd prime")
    q = 2 ** p
    if q > 128:
        raise InvalidQ("q = 2^p must be at most 128")
    if not 1 <= line <= 31:
        raise UnsupportedLine(f"line {line} is not in 1..31")
    from ..psl3.table4 import line as closed_line
    expected = closed_line(line, p).order.eval_int(q)
    if expected > cap:
        raise TooLarge(f"line {line} at q={q} has order {expected} > {cap}")
    ctx = projective(q)
    gens = [ctx.elem(m) for m in line_generators(line, q)]
    if not gens:
        gens = [ctx.identity]
    try:
        H = closure(gens, cap=cap, ctx=ctx, tag=line)
    except CapExceeded:
        raise TooLarge(f"line {line} at q={q} exceeds {cap} elements") from None
    H.generators = [g for g in gens if not g.is_identity()]
    return H
