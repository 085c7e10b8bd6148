"""Geometric classification of collineations of PG(2,q) by their fixed
structure (number of fixed points and lines, element order)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import GElem

TAGS = ("Identity", "Elation", "OrderFourUnipotent", "Homology", "MixedOrder",
        "TriangleDiagonal", "QuadraticSemisimple", "SingerType")


@dataclass(frozen=True)
class ElementClass:
    tag: str
    order: int
    fixed_points: int
    fixed_lines: int
    center: int | None = None
    axis: int | None = None


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def classify(g: GElem) -> ElementClass:
    ctx = g.ctx
    plane = ctx.plane
    q, p = ctx.q, ctx.F.p
    ids = np.arange(ctx.n)
    fpts = np.flatnonzero(g.perm == ids)
    lperm = plane.line_perm_from_points(g.perm)
    flines = np.flatnonzero(lperm == ids)
    order = g.order()
    nfp, nfl = len(fpts), len(flines)

    if order == 1:
        return ElementClass("Identity", 1, nfp, nfl)
    if nfp == q + 1 and order == p:
        # axis: the line through the fixed points; center: where the fixed lines meet
        axis = plane.join(int(fpts[0]), int(fpts[1]))
        center = plane.meet(int(flines[0]), int(flines[1]))
        return ElementClass("Elation", order, nfp, nfl, center, axis)
    if nfp == q + 2:
        fset = set(fpts.tolist())
        axis = center = None
        for l in flines:
            on = plane.points_on(int(l))
            if all(int(x) in fset for x in on):
                axis = int(l)
                break
        rest = fset - set(plane.points_on(axis).tolist())
        center = rest.pop()
        return ElementClass("Homology", order, nfp, nfl, center, axis)
    if nfp == 1 and _is_power_of(order, p):
        return ElementClass("OrderFourUnipotent", order, nfp, nfl)
    if nfp == 3:
        return ElementClass("TriangleDiagonal", order, nfp, nfl)
    if nfp == 2:
        return ElementClass("MixedOrder", order, nfp, nfl)
    if nfp == 1:
        return ElementClass("QuadraticSemisimple", order, nfp, nfl)
    if nfp == 0:
        return ElementClass("SingerType", order, nfp, nfl)
    raise AssertionError(f"unexpected fixed structure: order {order}, {nfp} points")


def fixed_point_counts(perms: np.ndarray) -> np.ndarray:
    """Number of fixed points of each row of a permutation array."""
    return (perms == np.arange(perms.shape[1], dtype=perms.dtype)).sum(1)
