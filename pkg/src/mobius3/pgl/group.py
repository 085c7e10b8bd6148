"""Elements and subgroups of PGL(3,q) acting on PG(2,q).

Every element is stored twice: as a canonical 3x3 matrix (scaled so the
first nonzero entry in row-major order is 1) and as the permutation it
induces on point ids.  Bulk code works on permutation arrays only.

An element of PGL(3,q) is determined by the images of the four frame points
(1:0:0), (0:1:0), (0:0:1), (1:1:1); the integer built from those four point
ids in base n = q^2+q+1 is the element's *code*.  Codes are the canonical
element keys used for sorting, hashing and membership tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from ..gf import FieldSpec
from .plane import build_plane

DENSE_CODE_LIMIT = 60_000_000


class Singular(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class TooLarge(RuntimeError):
    pass


# -- 3x3 matrices over GF(q), row-major 9-tuples -----------------------------

def mat_mul(F: FieldSpec, A, B):
    out = []
    for i in range(3):
        for j in range(3):
            out.append(F.sum(F.mul(A[3 * i + k], B[3 * k + j]) for k in range(3)))
    return tuple(out)


def det(F: FieldSpec, A):
    a, b, c, d, e, f, g, h, i = A
    m = F.mul
    t1 = m(a, F.sub(m(e, i), m(f, h)))
    t2 = m(b, F.sub(m(d, i), m(f, g)))
    t3 = m(c, F.sub(m(d, h), m(e, g)))
    return F.add(F.sub(t1, t2), t3)


def adjugate(F: FieldSpec, A):
    a, b, c, d, e, f, g, h, i = A
    m, s = F.mul, F.sub
    return (s(m(e, i), m(f, h)), s(m(c, h), m(b, i)), s(m(b, f), m(c, e)),
            s(m(f, g), m(d, i)), s(m(a, i), m(c, g)), s(m(c, d), m(a, f)),
            s(m(d, h), m(e, g)), s(m(b, g), m(a, h)), s(m(a, e), m(b, d)))


def canonical(F: FieldSpec, A):
    for x in A:
        if x:
            inv = F.inv(x)
            return tuple(F.mul(inv, y) for y in A)
    raise Singular("zero matrix")


def identity_mat():
    return (1, 0, 0, 0, 1, 0, 0, 0, 1)


def elementary(i: int, j: int, a: int):
    """I + a E_ij."""
    m = list(identity_mat())
    m[3 * i + j] = a
    return tuple(m)


def diag(a, b, c):
    return (a, 0, 0, 0, b, 0, 0, 0, c)


def perm_order(perm: np.ndarray) -> int:
    seen = np.zeros(len(perm), dtype=bool)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


class Projective:
    """Per-q context: plane, frame, code arithmetic, element factories."""

    def __init__(self, q: int):
        self.plane = build_plane(q)
        self.F = self.plane.F
        self.q = q
        self.n = self.plane.n
        pid = self.plane.point_id
        self.frame = np.array([pid((1, 0, 0)), pid((0, 1, 0)), pid((0, 0, 1)), pid((1, 1, 1))])
        self.dtype = np.uint8 if self.n <= 256 else np.uint16
        self.code_space = self.n ** 4
        self.dense = self.code_space <= DENSE_CODE_LIMIT
        self.identity = self.elem(identity_mat())

    def __repr__(self):
        return f"Projective(q={self.q})"

    @property
    def pgl_order(self) -> int:
        q = self.q
        return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)

    @property
    def psl_order(self) -> int:
        return self.pgl_order // gcd(3, self.q - 1)

    # codes
    def codes(self, fimg: np.ndarray) -> np.ndarray:
        """Codes from an (m, 4) array of frame images."""
        n = self.n
        f = fimg.astype(np.int64)
        return ((f[:, 0] * n + f[:, 1]) * n + f[:, 2]) * n + f[:, 3]

    def codes_of(self, perms: np.ndarray) -> np.ndarray:
        return self.codes(perms[:, self.frame])

    def frame_of(self, code: int):
        n = self.n
        d = code % n
        code //= n
        c = code % n
        code //= n
        b = code % n
        return code // n, b, c, d

    # elements
    def elem(self, mat) -> "GElem":
        mat = tuple(int(x) for x in mat)
        if det(self.F, mat) == 0:
            raise Singular(f"singular matrix {mat}")
        mat = canonical(self.F, mat)
        perm = self.plane.point_perm(mat).astype(self.dtype)
        return GElem(self, mat, perm)

    def mat_from_frame(self, a: int, b: int, c: int, d: int):
        """The canonical matrix mapping the standard frame to (a, b, c, d)."""
        F = self.F
        C = self.plane.coords
        cols = [[int(x) for x in C[v]] for v in (a, b, c)]
        rhs = [int(x) for x in C[d]]
        basis = tuple(cols[j][i] for i in range(3) for j in range(3))
        D = det(F, basis)
        if D == 0:
            raise Singular("frame images are collinear")
        adj = adjugate(F, basis)
        Dinv = F.inv(D)
        s = [F.mul(Dinv, F.sum(F.mul(adj[3 * i + k], rhs[k]) for k in range(3))) for i in range(3)]
        if 0 in s:
            raise Singular("frame images are not in general position")
        mat = tuple(F.mul(s[j], cols[j][i]) for i in range(3) for j in range(3))
        return canonical(F, mat)

    def elem_from_code(self, code: int) -> "GElem":
        return self.elem(self.mat_from_frame(*self.frame_of(int(code))))

    def elem_from_perm(self, perm) -> "GElem":
        perm = np.asarray(perm)
        return self.elem(self.mat_from_frame(*(int(perm[f]) for f in self.frame)))

    def pgl_generators(self):
        """Transvections over an additive basis of GF(q), plus a diagonal."""
        F = self.F
        basis = [F.p ** i for i in range(F.k)]
        gens = [self.elem(elementary(i, j, a))
                for (i, j) in ((0, 1), (1, 0), (1, 2), (2, 1)) for a in basis]
        if gcd(3, self.q - 1) == 3:
            gens.append(self.elem(diag(F.primitive, 1, 1)))
        return gens

    def sl_generators(self):
        F = self.F
        basis = [F.p ** i for i in range(F.k)]
        return [self.elem(elementary(i, j, a))
                for (i, j) in ((0, 1), (1, 0), (1, 2), (2, 1)) for a in basis]


@lru_cache(maxsize=None)
def projective(q: int) -> Projective:
    return Projective(q)


@dataclass(frozen=True, eq=False)
class GElem:
    ctx: Projective = field(repr=False)
    mat: tuple
    perm: np.ndarray = field(repr=False)

    @property
    def key(self) -> bytes:
        return bytes(self.mat)

    @property
    def code(self) -> int:
        return int(self.ctx.codes(self.perm[self.ctx.frame][None, :])[0])

    def __eq__(self, other):
        return isinstance(other, GElem) and self.ctx.q == other.ctx.q and self.mat == other.mat

    def __hash__(self):
        return hash((self.ctx.q, self.mat))

    def __mul__(self, other: "GElem") -> "GElem":
        F = self.ctx.F
        mat = canonical(F, mat_mul(F, self.mat, other.mat))
        return GElem(self.ctx, mat, self.perm[other.perm])

    def inverse(self) -> "GElem":
        F = self.ctx.F
        mat = canonical(F, adjugate(F, self.mat))
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm), dtype=self.perm.dtype)
        return GElem(self.ctx, mat, inv)

    def __pow__(self, e: int) -> "GElem":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.identity
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self, x: "GElem") -> "GElem":
        """x self x^-1."""
        return x * self * x.inverse()

    def order(self) -> int:
        return perm_order(self.perm)

    def is_identity(self) -> bool:
        return self.mat == identity_mat()

    def det(self) -> int:
        return det(self.ctx.F, self.mat)


@dataclass(eq=False)
class SubgroupRec:
    """A subgroup of PGL(3,q): generators plus (when materialised) the
    ascending array of element codes and the aligned permutation array.

    ``full=True`` marks the whole of PGL(3,q) handled by streaming rather
    than materialisation."""

    ctx: Projective = field(repr=False)
    generators: list = field(repr=False)
    codes: np.ndarray | None = field(default=None, repr=False)
    perms: np.ndarray | None = field(default=None, repr=False)
    order: int = 0
    tag: object = None
    full: bool = False

    def __post_init__(self):
        if self.codes is not None and not self.order:
            self.order = len(self.codes)

    @property
    def materialized(self) -> bool:
        return self.codes is not None

    @property
    def elements(self) -> np.ndarray:
        if self.codes is None:
            raise TooLarge(f"subgroup of order {self.order} is not materialised")
        return self.codes

    @property
    def key(self) -> bytes:
        return self.elements.tobytes()

    def __len__(self):
        return self.order

    def __contains__(self, g) -> bool:
        if self.full:
            return True
        code = g.code if isinstance(g, GElem) else int(g)
        i = np.searchsorted(self.elements, code)
        return bool(i < len(self.codes) and self.codes[i] == code)

    def contains_codes(self, codes: np.ndarray) -> np.ndarray:
        if self.full:
            return np.ones(len(codes), dtype=bool)
        i = np.searchsorted(self.elements, codes)
        i[i == len(self.codes)] = 0
        return self.codes[i] == codes

    def membership_table(self) -> np.ndarray:
        """Dense boolean table over the code space (small q only)."""
        if not self.ctx.dense:
            raise TooLarge("code space too large for a dense table")
        table = np.zeros(self.ctx.code_space, dtype=bool)
        table[self.elements] = True
        return table

    def element(self, i: int) -> GElem:
        if self.perms is None:
            return self.ctx.elem_from_code(int(self.elements[i]))
        return self.ctx.elem_from_perm(self.perms[i])

    def __iter__(self):
        for i in range(self.order):
            yield self.element(i)

    def is_subgroup_of(self, other: "SubgroupRec") -> bool:
        if other.full:
            return True
        return bool(other.contains_codes(self.elements).all())

    def intersection(self, other: "SubgroupRec") -> "SubgroupRec":
        codes, ia, _ = np.intersect1d(self.elements, other.elements,
                                      assume_unique=True, return_indices=True)
        return SubgroupRec(self.ctx, [], codes, self.perms[ia], len(codes))


def closure(gens, cap: int | None = None, ctx: Projective | None = None, tag=None) -> SubgroupRec:
    """Breadth-first generation of <gens>, elements sorted by code.

    Raises CapExceeded as soon as more than ``cap`` elements are found."""
    gens = list(gens)
    if ctx is None:
        ctx = gens[0].ctx
    n = ctx.n
    frame = ctx.frame
    gperms = [g.perm for g in gens if not g.is_identity()]
    ident = np.arange(n, dtype=ctx.dtype)[None, :]

    dense = ctx.dense
    if dense:
        seen = np.zeros(ctx.code_space, dtype=bool)
    else:
        known = np.empty(0, dtype=np.int64)
    id_code = ctx.codes_of(ident)
    if dense:
        seen[id_code] = True
    else:
        known = id_code.copy()

    chunks = [ident]
    frontier = ident
    total = 1
    while len(frontier) and gperms:
        fimg = frontier[:, frame]
        cand_codes = np.concatenate([ctx.codes(gp[fimg]) for gp in gperms])
        codes, first = np.unique(cand_codes, return_index=True)
        if dense:
            new = ~seen[codes]
        else:
            pos = np.searchsorted(known, codes)
            pos[pos == len(known)] = 0
            new = known[pos] != codes if len(known) else np.ones(len(codes), bool)
        codes, first = codes[new], first[new]
        if not len(codes):
            break
        prev = frontier
        which, row = np.divmod(first, len(prev))
        frontier = np.empty((len(codes), n), dtype=ctx.dtype)
        for gi, gp in enumerate(gperms):
            sel = which == gi
            if sel.any():
                frontier[sel] = gp[prev[row[sel]]]
        total += len(codes)
        if cap is not None and total > cap:
            raise CapExceeded(f"subgroup exceeds cap {cap}")
        if dense:
            seen[codes] = True
        else:
            known = np.union1d(known, codes)
        chunks.append(frontier)
    perms = np.concatenate(chunks)
    codes = ctx.codes_of(perms)
    order = np.argsort(codes)
    return SubgroupRec(ctx, gens, codes[order], perms[order], len(codes), tag=tag)


MATERIALIZE_LIMIT = 2_000_000


def group(q: int, kind: str = "psl3", cap: int = MATERIALIZE_LIMIT) -> SubgroupRec:
    """PSL(3,q) or PGL(3,q); materialised when the order is at most ``cap``,
    otherwise a generator-only record with ``full=True``."""
    ctx = projective(q)
    if kind == "psl3":
        gens, order = ctx.sl_generators(), ctx.psl_order
    elif kind == "pgl3":
        gens, order = ctx.pgl_generators(), ctx.pgl_order
    else:
        raise ValueError(f"unknown group kind {kind!r}")
    if order > cap:
        return SubgroupRec(ctx, gens, None, None, order, tag=kind, full=kind == "pgl3" or gcd(3, q - 1) == 1)
    G = closure(gens, ctx=ctx, tag=kind)
    G.full = kind == "pgl3" or gcd(3, q - 1) == 1
    return G
