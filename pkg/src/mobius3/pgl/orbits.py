"""Orbits and stabilisers for the action on points, lines and tuples."""

from __future__ import annotations

import numpy as np

from .group import GElem, SubgroupRec, closure

ACTIONS = ("points", "lines", "flag")


def line_perms(ctx, perms: np.ndarray) -> np.ndarray:
    """Induced line permutations for an (m, n) array of point permutations."""
    plane = ctx.plane
    a, b = plane._two_points_per_line()
    C = plane.coords
    pa, pb = C[perms[:, a]], C[perms[:, b]]
    F = ctx.F
    M, A, N = F.mul_table, F.add_table, F.neg_table

    def cr(i, j):
        return A[M[pa[..., i], pb[..., j]], N[M[pa[..., j], pb[..., i]]]]

    q = ctx.q
    return plane.vec2pt[(cr(1, 2) * q + cr(2, 0)) * q + cr(0, 1)]


def _images(ctx, perms, seed, action):
    """Rows: image of the seed under each permutation."""
    if action == "points":
        return perms[:, list(seed)]
    if action == "lines":
        return line_perms(ctx, perms)[:, list(seed)]
    if action == "flag":
        P, L = seed
        return np.stack([perms[:, P], line_perms(ctx, perms)[:, L]], axis=1)
    raise ValueError(f"unknown action {action!r}")


def _normalise_seed(seed, action):
    if action == "flag":
        P, L = seed
        return (int(P), int(L))
    if isinstance(seed, (int, np.integer)):
        return (int(seed),)
    return tuple(int(x) for x in seed)


def orbit_stabilizer(group, seed, action: str = "points"):
    """Orbit of ``seed`` (a point/line id, a tuple of ids, or a (point, line)
    flag) and its stabiliser.

    ``group`` is a materialised SubgroupRec or a list of generators; in the
    latter case the orbit is found by breadth-first search and the
    stabiliser is generated by Schreier generators."""
    seed = _normalise_seed(seed, action)
    if isinstance(group, SubgroupRec) and group.materialized and group.perms is not None:
        ctx = group.ctx
        imgs = _images(ctx, group.perms, seed, action)
        orbit = sorted({tuple(int(x) for x in row) for row in imgs})
        fix = np.all(imgs == np.array(seed), axis=1)
        codes = group.codes[fix]
        stab = SubgroupRec(ctx, [], codes, group.perms[fix], len(codes))
        return orbit, stab

    gens = list(group.generators if isinstance(group, SubgroupRec) else group)
    ctx = gens[0].ctx
    gperms = np.stack([g.perm for g in gens])
    transversal = {seed: ctx.identity}
    queue = [seed]
    while queue:
        pt = queue.pop()
        imgs = _images(ctx, gperms, pt, action)
        for g, row in zip(gens, imgs):
            im = tuple(int(x) for x in row)
            if im not in transversal:
                transversal[im] = g * transversal[pt]
                queue.append(im)
    # Schreier generators u_{g(o)}^-1 g u_o, added only when new
    stab = closure([ctx.identity], ctx=ctx)
    for pt, u in transversal.items():
        imgs = _images(ctx, gperms, pt, action)
        for g, row in zip(gens, imgs):
            s = transversal[tuple(int(x) for x in row)].inverse() * g * u
            if s not in stab:
                stab = closure(stab.generators + [s], ctx=ctx)
    stab.generators = [h for h in stab.generators if not h.is_identity()]
    return sorted(transversal), stab
