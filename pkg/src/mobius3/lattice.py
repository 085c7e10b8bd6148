"""Subgroup lattices of small groups (order <= ~65,000), their conjugacy
classes of subgroups, the Moebius function, and the generation-counting
formulas derived from it.

Elements of the ambient group G are relabelled by local indices 0..N-1 in
ascending code order; a subgroup is an ascending index array, and its
bytes are its canonical key.

Enumeration works up to conjugacy.  Starting from {1}, each class
representative H is joined with one cyclic subgroup from every orbit of
N_G(H) on the cyclic subgroups not inside H.  This reaches every class: a
subgroup K is generated by any maximal subgroup M of K together with one
element outside M, and replacing (M, <x>) by a conjugate pair only moves
<M, x> inside its class.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .pgl.group import SubgroupRec
from .pgl.scan import _inverse_perms


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Budget:
    max_group_order: int = 65_000
    max_subgroups: int = 5_000_000
    max_chain_group: int = 1000


@dataclass
class ConjClass:
    rep: np.ndarray                  # local indices of a representative
    size: int
    normalizer_order: int
    order: int
    mu: int | None = None
    fingerprint: tuple | None = None
    gens: list = field(default_factory=list, repr=False)
    members: np.ndarray | None = field(default=None, repr=False)  # (size, order)


@dataclass
class LatticeModel:
    group_order: int
    classes: list
    containment: np.ndarray          # [h, k] = conjugates of class k containing rep(h)
    q: int | None = None
    kind: str | None = None
    local: object = field(default=None, repr=False)

    @property
    def total_subgroups(self) -> int:
        return sum(c.size for c in self.classes)

    def index_of_top(self) -> int:
        return 0


class Local:
    """The elements of a materialised group with local indices."""

    def __init__(self, G: SubgroupRec):
        if G.perms is None:
            raise ValueError("group must be materialised")
        ctx = G.ctx
        self.ctx = ctx
        self.G = G
        self.N = G.order
        self.perms = G.perms
        self.codes = G.codes
        self.fr = G.perms[:, ctx.frame]
        if ctx.dense:
            lookup = np.full(ctx.code_space, -1, dtype=np.int32)
            lookup[G.codes] = np.arange(self.N, dtype=np.int32)
            self._lookup = lookup
        else:
            self._lookup = None
        self.e = int(self.index(ctx.codes_of(np.arange(ctx.n, dtype=ctx.dtype)[None, :]))[0])
        self.inv = self.index(ctx.codes_of(_inverse_perms(G.perms)))
        self.orders = self._element_orders()
        self.gens = [int(i) for i in self.index(np.array([g.code for g in G.generators], dtype=np.int64))] \
            if G.generators else []
        self.gens = [g for g in self.gens if g != self.e]

    def index(self, codes: np.ndarray) -> np.ndarray:
        if self._lookup is not None:
            idx = self._lookup[codes]
        else:
            idx = np.searchsorted(self.codes, codes)
            idx[idx >= self.N] = 0
            idx = np.where(self.codes[idx] == codes, idx, -1)
        if (idx < 0).any():
            raise ValueError("element outside the group")
        return idx

    def mul(self, a, b):
        """Indices of a_i * b_i (composition: apply b first)."""
        a = np.asarray(a)
        b = np.asarray(b)
        f = self.perms[a[..., None], self.fr[b]]
        return self.index(self.ctx.codes(f.reshape(-1, 4))).reshape(np.broadcast(a, b).shape)

    def conj_map(self, g: int) -> np.ndarray:
        """i -> g i g^-1 for every element i."""
        a = self.fr[self.inv[g]]
        b = self.perms[:, a]
        return self.index(self.ctx.codes(self.perms[g][b]))

    def _element_orders(self):
        orders = np.zeros(self.N, dtype=np.int64)
        cur = np.arange(self.N)
        k = 1
        alive = np.ones(self.N, dtype=bool)
        while alive.any():
            done = alive & (cur == self.e)
            orders[done] = k
            alive &= ~done
            cur = np.where(alive, self.mul(cur, np.arange(self.N)), cur)
            k += 1
        return orders

    def closure(self, gens, cap: int | None = None) -> np.ndarray:
        gens = [int(g) for g in gens if int(g) != self.e]
        seen = np.zeros(self.N, dtype=bool)
        seen[self.e] = True
        if not gens:
            return np.array([self.e])
        fg = self.fr[np.array(gens)]
        frontier = np.array([self.e])
        total = 1
        codes = self.ctx.codes
        while len(frontier):
            f = self.perms[frontier[:, None, None], fg[None, :, :]]
            cand = self.index(codes(f.reshape(-1, 4)))
            cand = np.unique(cand[~seen[cand]])
            seen[cand] = True
            total += len(cand)
            if cap is not None and total > cap:
                raise BudgetExceeded(f"subgroup exceeds {cap}")
            frontier = cand
        return np.flatnonzero(seen)

    def small_gens(self, elems: np.ndarray) -> list:
        """A short generating list for the subgroup with these elements:
        add elements of largest order first while they are new."""
        elems = np.asarray(elems)
        target = len(elems)
        order = elems[np.lexsort((elems, -self.orders[elems]))]
        gens = []
        mask = np.zeros(self.N, dtype=bool)
        mask[self.e] = True
        cur = 1
        for x in order:
            if cur == target:
                break
            if not mask[x]:
                gens.append(int(x))
                S = self.closure(gens)
                mask[:] = False
                mask[S] = True
                cur = len(S)
        return gens

    def commute_mask(self, elems, g):
        elems = np.asarray(elems)
        return self.mul(elems, np.full(len(elems), g)) == self.mul(np.full(len(elems), g), elems)


def _subgroup_normalizer(L: Local, elems: np.ndarray, gens) -> np.ndarray:
    """Elements of G normalising the subgroup (vectorised over all of G)."""
    mask = np.zeros(L.N, dtype=bool)
    mask[elems] = True
    ok = np.ones(L.N, dtype=bool)
    allg = np.arange(L.N)
    b = L.perms[L.inv[allg][:, None], L.ctx.frame[None, :]]  # g^-1[f]
    for h in gens:
        # frames of g h g^-1 at f: g[h[g^-1[f]]]
        d = L.perms[allg[:, None], L.perms[h][b]]
        ok &= mask[L.index(L.ctx.codes(d))]
    return np.flatnonzero(ok)


def _cyclic_reps(L: Local):
    """For each element the smallest generator of the cyclic subgroup it generates."""
    N = L.N
    rep = np.arange(N)
    cur = np.arange(N)
    k = 1
    maxo = int(L.orders.max())
    while k < maxo:
        cur = L.mul(cur, np.arange(N))
        k += 1
        cop = (np.gcd(k, L.orders) == 1) & (k < L.orders)
        rep = np.where(cop, np.minimum(rep, cur), rep)
    return rep


def _orbits_under(L: Local, gens, items: np.ndarray, cyc_rep: np.ndarray):
    """Orbit representatives of the group <gens> acting by conjugation on the
    cyclic subgroups labelled by ``items`` (smallest generators)."""
    if not len(items):
        return items
    pos = {int(c): i for i, c in enumerate(items)}
    rows, cols = [], []
    for g in gens:
        cm = L.conj_map(g)
        img = cyc_rep[cm[items]]
        rows.append(np.arange(len(items)))
        cols.append(np.array([pos[int(x)] for x in img]))
    if not rows:
        return items
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    A = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(len(items), len(items)))
    _, labels = connected_components(A, directed=True, connection="weak")
    _, first = np.unique(labels, return_index=True)
    return items[np.sort(first)]


def _class_orbit(L: Local, elems: np.ndarray, cmaps):
    """All G-conjugates of a subgroup, via the generator conjugation maps."""
    start = np.sort(np.asarray(elems, dtype=np.int64))
    seen = {start.tobytes(): start}
    queue = [start]
    while queue:
        S = queue.pop()
        for cm in cmaps:
            T = np.sort(cm[S])
            k = T.tobytes()
            if k not in seen:
                seen[k] = T
                queue.append(T)
    members = np.stack(list(seen.values()))
    order = np.lexsort(members.T[::-1])
    return members[order], seen.keys()


def enumerate_lattice(G: SubgroupRec, budget: Budget = Budget(), q=None, kind=None,
                      progress=None) -> LatticeModel:
    if G.order > budget.max_group_order:
        raise BudgetExceeded(f"|G| = {G.order} exceeds {budget.max_group_order}")
    L = Local(G)
    N = L.N
    dtype = np.uint16 if N <= 65535 else np.int32
    cmaps = [L.conj_map(g).astype(np.int64) for g in L.gens]
    cyc_rep = _cyclic_reps(L)
    cyclic = np.unique(cyc_rep)

    known: dict = {}
    classes: list = []

    def register(elems, gens):
        members, keys = _class_orbit(L, elems, cmaps)
        cid = len(classes)
        for k in keys:
            known[k] = cid
        if len(known) > budget.max_subgroups:
            raise BudgetExceeded("too many subgroups")
        rep = np.sort(np.asarray(elems, dtype=np.int64))
        c = ConjClass(rep=rep, size=len(members), normalizer_order=N // len(members),
                      order=len(rep), gens=list(gens), members=members.astype(dtype))
        classes.append(c)
        return cid

    register(np.array([L.e]), [])
    i = 0
    while i < len(classes):
        H = classes[i]
        # work with the stored (unsorted-class) representative; its generators
        # are those that built it
        elems = H.rep
        gens = H.gens
        if H.order < N:
            norm = _subgroup_normalizer(L, elems, gens) if gens else np.arange(N)
            ngens = L.small_gens(norm)
            inH = np.zeros(N, dtype=bool)
            inH[elems] = True
            outside = cyclic[~inH[cyclic]]
            for c in _orbits_under(L, ngens, outside, cyc_rep):
                K = L.closure(gens + [int(c)])
                if K.tobytes() in known:
                    continue
                register(K, gens + [int(c)])
        if progress:
            progress(i, len(classes), len(known))
        i += 1

    # canonical order: by descending order, then smallest member key
    perm = sorted(range(len(classes)),
                  key=lambda j: (-classes[j].order, classes[j].members[0].astype(np.int64).tobytes()))
    classes = [classes[j] for j in perm]
    for c in classes:
        c.rep = c.members[0].astype(np.int64)
        c.gens = L.small_gens(c.rep)
    model = LatticeModel(N, classes, _containment(L, classes), q=q, kind=kind, local=L)
    return model


def _containment(L: Local, classes) -> np.ndarray:
    m = len(classes)
    C = np.zeros((m, m), dtype=object)
    for k, K in enumerate(classes):
        B = np.zeros((K.size, L.N), dtype=bool)
        rows = np.repeat(np.arange(K.size), K.order)
        B[rows, K.members.ravel().astype(np.int64)] = True
        for h, H in enumerate(classes):
            if H.order < K.order and K.order % H.order == 0:
                C[h, k] = int(B[:, H.rep].all(1).sum())
            elif h == k:
                C[h, k] = 1
    return C


def moebius(model: LatticeModel) -> LatticeModel:
    cl = model.classes
    C = model.containment
    for h in range(len(cl)):
        if cl[h].order == model.group_order:
            cl[h].mu = 1
            continue
        s = 0
        for k in range(h):
            if cl[k].order > cl[h].order and C[h, k]:
                s += C[h, k] * cl[k].mu
        cl[h].mu = -s
    return model


def recursion_residuals(model: LatticeModel) -> list:
    out = []
    C = model.containment
    for h, H in enumerate(model.classes):
        if H.order == model.group_order:
            out.append(H.mu - 1)
            continue
        out.append(H.mu + sum(C[h, k] * K.mu for k, K in enumerate(model.classes)
                              if K.order > H.order))
    return out


def maximal_classes(model: LatticeModel) -> list:
    C = model.containment
    top = [k for k, K in enumerate(model.classes) if K.order == model.group_order]
    out = []
    for h, H in enumerate(model.classes):
        if H.order == model.group_order:
            continue
        over = [k for k, K in enumerate(model.classes) if K.order > H.order and C[h, k]]
        if over == top:
            out.append(h)
    return out


def intersection_of_maximals(model: LatticeModel, h: int) -> np.ndarray:
    """Intersection of all maximal subgroups containing rep(h)."""
    L = model.local
    H = model.classes[h]
    acc = np.ones(L.N, dtype=bool)
    for m in maximal_classes(model):
        M = model.classes[m]
        for row in M.members:
            row = row.astype(np.int64)
            mask = np.zeros(L.N, dtype=bool)
            mask[row] = True
            if mask[H.rep].all():
                acc &= mask
    return np.flatnonzero(acc)


def intersection_check(model: LatticeModel) -> list:
    """Classes with mu != 0 whose representative is not an intersection of
    maximal subgroups (expected: none)."""
    bad = []
    for h, H in enumerate(model.classes):
        if H.order == model.group_order or not H.mu:
            continue
        if not np.array_equal(intersection_of_maximals(model, h), np.sort(H.rep)):
            bad.append(h)
    return bad


# -- explicit poset oracle -------------------------------------------------------

def all_subgroups(model: LatticeModel):
    subs = []
    for c, K in enumerate(model.classes):
        for row in K.members:
            subs.append((c, row.astype(np.int64)))
    return subs


def chain_mu(model: LatticeModel, h: int, budget: Budget = Budget()) -> int:
    """mu(rep(h)) as the alternating count of chains rep(h) = H_0 < ... < H_k = G
    in the explicit poset of all subgroups."""
    if model.group_order > budget.max_chain_group:
        raise BudgetExceeded("chain counting is limited to small groups")
    L = model.local
    H = model.classes[h]
    subs = [s for c, s in all_subgroups(model)]
    # the interval [H, G]
    interval = []
    for s in subs:
        m = np.zeros(L.N, dtype=bool)
        m[s] = True
        if m[H.rep].all():
            interval.append(m)
    interval.sort(key=lambda m: -int(m.sum()))
    sizes = [int(m.sum()) for m in interval]
    n = len(interval)
    # counts[i][k] = number of chains of length k from interval[i] up to G
    counts = [None] * n
    for i in range(n):
        if sizes[i] == model.group_order:
            counts[i] = Counter({0: 1})
            continue
        c = Counter()
        for j in range(i):
            if sizes[j] > sizes[i] and interval[j][interval[i]].all():
                for k, v in counts[j].items():
                    c[k + 1] += v
        counts[i] = c
    start = next(i for i in range(n) if sizes[i] == H.order)
    return sum((-1) ** k * v for k, v in counts[start].items())


# -- fingerprints -----------------------------------------------------------------

def _abelian_invariants(L: Local, elems) -> tuple:
    orders = L.orders[elems]
    n = len(elems)
    inv = []
    p = 2
    m = n
    while m > 1:
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            # number of cyclic factors of order >= p^j is log_p(|Omega_j| / |Omega_{j-1}|)
            prev = 1
            logs = []
            for j in range(1, a + 1):
                cnt = int(np.sum((p ** j) % orders == 0))
                r = 0
                t = cnt // prev
                while t > 1:
                    t //= p
                    r += 1
                logs.append(r)
                prev = cnt
            for j, r in enumerate(logs):
                nxt = logs[j + 1] if j + 1 < len(logs) else 0
                inv += [p ** (j + 1)] * (r - nxt)
        p += 1
    return tuple(sorted(inv))


def _commutator(L: Local, a, b):
    return int(L.mul(L.mul(L.inv[a], L.inv[b]), L.mul(a, b)))


def derived_subgroup(L: Local, gens, elems) -> tuple:
    comms = [_commutator(L, a, b) for a, b in combinations(gens, 2)]
    dgens = [c for c in comms if c != L.e]
    D = L.closure(dgens)
    mask = np.zeros(L.N, dtype=bool)
    mask[D] = True
    changed = True
    while changed:
        changed = False
        for k in gens:
            for d in list(dgens):
                c = int(L.mul(L.mul(k, d), L.inv[k]))
                if not mask[c]:
                    dgens.append(c)
                    D = L.closure(dgens)
                    mask[:] = False
                    mask[D] = True
                    changed = True
    return dgens, D


def fingerprint(L: Local, elems, gens) -> tuple:
    elems = np.asarray(elems, dtype=np.int64)
    orders = L.orders[elems]
    exponent = int(np.lcm.reduce(orders)) if len(orders) else 1
    center = np.ones(len(elems), dtype=bool)
    for g in gens:
        center &= L.commute_mask(elems, g)
    abelian = bool(center.all())
    inv = _abelian_invariants(L, elems) if abelian else None
    # derived length, -1 when the series stalls above {1}
    dl = 0
    g_, e_ = list(gens), elems
    while len(e_) > 1:
        dg, de = derived_subgroup(L, g_, e_)
        if len(de) == len(e_):
            dl = -1
            break
        dl += 1
        g_, e_ = dg, de
    hist = tuple(sorted(Counter(int(o) for o in orders).items()))
    return (len(elems), exponent, inv, dl, int(center.sum()), hist)


def add_fingerprints(model: LatticeModel) -> LatticeModel:
    for c in model.classes:
        c.fingerprint = fingerprint(model.local, c.rep, c.gens)
    return model


# -- Hall formulas ------------------------------------------------------------------

def eulerian_phi(model: LatticeModel, n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(c.size * c.mu * c.order ** n for c in model.classes)


def gen_probability(model: LatticeModel, n: int) -> Fraction:
    return Fraction(eulerian_phi(model, n), model.group_order ** n)


def a_coeffs(model: LatticeModel) -> dict:
    a: dict = {}
    for c in model.classes:
        idx = model.group_order // c.order
        a[idx] = a.get(idx, 0) + c.size * c.mu
    return dict(sorted(a.items()))


def d_k(model: LatticeModel, k: int, aut_order: int) -> Fraction:
    if aut_order <= 0:
        raise ValueError("aut_order must be positive")
    return Fraction(eulerian_phi(model, k), aut_order)


# -- export ----------------------------------------------------------------------------

def _num(x):
    x = int(x)
    return str(x) if abs(x) > 2 ** 53 else x


def to_dict(model: LatticeModel) -> dict:
    classes = []
    for c in model.classes:
        fp = c.fingerprint
        fpd = None
        if fp is not None:
            fpd = {"order": fp[0], "exponent": fp[1],
                   "abelian_invariants": list(fp[2]) if fp[2] is not None else None,
                   "derived_length": fp[3], "center_order": fp[4],
                   "element_orders": {str(k): v for k, v in fp[5]}}
        classes.append({"order": c.order, "size": c.size, "normalizer_order": c.normalizer_order,
                        "mu": _num(c.mu), "fingerprint": fpd})
    return {"group": {"q": model.q, "kind": model.kind, "order": model.group_order},
            "classes": classes,
            "a": {str(k): _num(v) for k, v in a_coeffs(model).items()}}


def to_json(model: LatticeModel) -> str:
    return json.dumps(to_dict(model), indent=1)


def to_csv(model: LatticeModel) -> str:
    lines = ["order,size,normalizer_order,mu"]
    for c in model.classes:
        lines.append(f"{c.order},{c.size},{c.normalizer_order},{c.mu}")
    return "\n".join(lines) + "\n"


def lattice_of(G: SubgroupRec, q=None, kind=None, budget: Budget = Budget(),
               fingerprints: bool = True, progress=None) -> LatticeModel:
    """enumerate + moebius (+ fingerprints)."""
    model = moebius(enumerate_lattice(G, budget, q=q, kind=kind, progress=progress))
    if fingerprints:
        add_fingerprints(model)
    return model


def sylow_counts(model: LatticeModel) -> dict:
    """prime -> number of Sylow subgroups."""
    n = model.group_order
    out = {}
    p = 2
    m = n
    while m > 1:
        if m % p == 0:
            pk = 1
            while m % p == 0:
                m //= p
                pk *= p
            out[p] = sum(c.size for c in model.classes if c.order == pk)
        p += 1
    return out


def cyclic_subgroups_present(model: LatticeModel) -> bool:
    L = model.local
    keys = set()
    for c in model.classes:
        for row in c.members:
            keys.add(row.astype(np.int64).tobytes())
    for x in np.unique(_cyclic_reps(L)):
        if L.closure([int(x)]).astype(np.int64).tobytes() not in keys:
            return False
    return True

