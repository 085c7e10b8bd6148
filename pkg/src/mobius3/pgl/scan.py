"""Full-group scans: normalisers and transporter counts.

The ambient group is streamed as left cosets t_x P of the stabiliser P of
the point (1:0:0), one coset per point x, so PSL(3,8) (16.5M elements) is
never held in memory; only P (225,792 elements) is.  For g = t p and a
generator h the frame images of g h g^-1 are t[P[h[P^-1[t^-1[frame]]]]],
which are looked up in a dense bitmask table over the code space, one bit
per target subgroup.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from math import gcd

import numpy as np

from .constructors import maximal_constructor
from .group import GElem, Projective, SubgroupRec, TooLarge, closure, projective

MAX_SCAN = 20_000_000


class NonIntegralCount(ArithmeticError):
    pass


def _inverse_perms(perms):
    inv = np.empty_like(perms)
    rows = np.arange(len(perms))[:, None]
    inv[rows, perms] = np.arange(perms.shape[1], dtype=perms.dtype)[None, :]
    return inv


def threads_hint(default: int = 1) -> int:
    try:
        return max(1, int(os.environ.get("MOBIUS3_THREADS", default)))
    except ValueError:
        return default


class GroupStream:
    """A group presented as cosets t_i * base, each coset a chunk."""

    def __init__(self, ctx: Projective, base: SubgroupRec, reps: list, order: int):
        self.ctx = ctx
        self.P = base.perms
        self.Pinv = _inverse_perms(base.perms)
        self.reps = [(np.asarray(t.perm), np.asarray(t.inverse().perm)) for t in reps]
        self.order = order

    def __len__(self):
        return self.order

    def chunks(self):
        return self.reps

    def codes(self, t, rows=None):
        f = self.ctx.frame
        P = self.P if rows is None else self.P[rows]
        return self.ctx.codes(t[P[:, f]])


def _coset_reps(ctx: Projective):
    """For each point x a matrix whose first column spans x."""
    F = ctx.F
    reps = []
    for x in range(ctx.n):
        v = [int(a) for a in ctx.plane.coords[x]]
        for i, j in ((1, 2), (0, 2), (0, 1)):
            cols = [v, [int(k == i) for k in range(3)], [int(k == j) for k in range(3)]]
            mat = tuple(cols[c][r] for r in range(3) for c in range(3))
            try:
                reps.append(ctx.elem(mat))
                break
            except ValueError:
                continue
    return reps


def full_stream(q: int, kind: str = "psl3") -> GroupStream:
    """PGL(3,q) or PSL(3,q) as a coset stream (or a single chunk if small)."""
    ctx = projective(q)
    if kind not in ("psl3", "pgl3"):
        raise ValueError(f"unknown group kind {kind!r}")
    order = ctx.psl_order if kind == "psl3" else ctx.pgl_order
    if order > MAX_SCAN:
        raise TooLarge(f"|G| = {order} exceeds the scan budget")
    if kind == "psl3" and gcd(3, q - 1) == 3:
        G = closure(ctx.sl_generators(), ctx=ctx)
        return stream_of(G)
    P = maximal_constructor("point_stab", q)
    return GroupStream(ctx, P, _coset_reps(ctx), order)


def stream_of(G: SubgroupRec) -> GroupStream:
    """A materialised group as a one-chunk stream."""
    return GroupStream(G.ctx, G, [G.ctx.identity], G.order)


def _bit_table(ctx, targets):
    if not ctx.dense:
        raise TooLarge("dense code tables need q <= 8")
    dtype = np.uint8 if len(targets) <= 8 else np.uint16 if len(targets) <= 16 else np.uint32 if len(targets) <= 32 else np.uint64
    if len(targets) > 64:
        raise ValueError("at most 64 targets per scan")
    table = np.zeros(ctx.code_space, dtype=dtype)
    for i, K in enumerate(targets):
        if K.full:
            table[:] |= dtype(1 << i)
        else:
            table[K.elements] |= dtype(1 << i)
    return table


def _chunk_scan(stream, t, tinv, gens, table, nbits, collect):
    ctx = stream.ctx
    f = ctx.frame
    m = len(stream.P)
    rows = np.arange(m)
    acc = None
    for h in gens:
        if acc is not None:
            keep = acc != 0
            rows, acc = rows[keep], acc[keep]
            if not len(rows):
                break
        y = stream.Pinv[rows[:, None], tinv[f][None, :]]
        w = stream.P[rows[:, None], h.perm[y]]
        bits = table[ctx.codes(t[w])]
        acc = bits if acc is None else acc & bits
    counts = np.zeros(nbits, dtype=np.int64)
    found = []
    if acc is None:  # trivial H: every element transports
        counts[:] = m
        acc = np.full(m, ~table.dtype.type(0))
    for i in range(nbits):
        hit = (acc & table.dtype.type(1 << i)) != 0
        counts[i] = int(hit.sum())
        if collect is not None and i == collect:
            found.append(stream.codes(t, rows[hit]))
    return counts, found


def transporter_counts(stream: GroupStream, h_gens, targets, collect: int | None = None,
                       threads: int | None = None):
    """#{g in G : g H g^-1 <= K} for each target K, where H = <h_gens>.

    With ``collect=i`` the transporting elements for target i are also
    returned (as sorted codes)."""
    ctx = stream.ctx
    gens = [h for h in h_gens if not h.is_identity()]
    table = _bit_table(ctx, targets)
    nbits = len(targets)
    total = np.zeros(nbits, dtype=np.int64)
    found = []
    threads = threads or threads_hint()
    work = stream.chunks()
    if threads > 1 and len(work) > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(lambda tt: _chunk_scan(stream, tt[0], tt[1], gens, table, nbits, collect), work))
    else:
        results = [_chunk_scan(stream, t, tinv, gens, table, nbits, collect) for t, tinv in work]
    for c, fnd in results:
        total += c
        found += fnd
    counts = [int(x) for x in total]
    if collect is not None:
        codes = np.sort(np.concatenate(found)) if found else np.empty(0, np.int64)
        return counts, codes
    return counts


def normalizer(ambient, h: SubgroupRec, threads: int | None = None) -> SubgroupRec:
    """N_ambient(h).  ``ambient`` is a GroupStream or a materialised SubgroupRec."""
    stream = ambient if isinstance(ambient, GroupStream) else stream_of(ambient)
    ctx = stream.ctx
    gens = h.generators or [ctx.identity]
    if h.order == 1:
        gens = [ctx.identity]
    _, codes = transporter_counts(stream, gens, [h], collect=0, threads=threads)
    N = SubgroupRec(ctx, [], codes, None, len(codes))
    return N


def transporter_count(stream: GroupStream, h: SubgroupRec, k: SubgroupRec, threads=None) -> int:
    return transporter_counts(stream, h.generators, [k], threads=threads)[0]


def count_conjugates_containing(G_order: int, h: SubgroupRec, k: SubgroupRec, n_k: int,
                                stream: GroupStream | None = None) -> int:
    """Number of conjugates of k that contain h: #{g : h^g <= k} / n_k."""
    if k.full:
        return 1
    if stream is None:
        stream = full_stream(h.ctx.q)
    if len(stream) != G_order:
        raise ValueError("stream order does not match G_order")
    t = transporter_count(stream, h, k)
    c, r = divmod(t, n_k)
    if r:
        raise NonIntegralCount(f"transporter count {t} not divisible by {n_k}")
    return c


def conjugate_counts(stream: GroupStream, h: SubgroupRec, targets, n_orders):
    """Vector version: conjugates of each target containing h."""
    ts = transporter_counts(stream, h.generators, targets)
    out = []
    for t, n_k in zip(ts, n_orders):
        c, r = divmod(t, n_k)
        if r:
            raise NonIntegralCount(f"transporter count {t} not divisible by {n_k}")
        out.append(c)
    return out
