"""Euler characteristics of the poset L_r of nontrivial r-subgroups of PGL(3,q).

Three routes: the closed forms (one per case of the pair (q, r)), a brute
force over elementary abelian r-subgroups, where a subgroup E_{r^s}
contributes (-1)^s r^{C(s,2)}, and a plain alternating count of chains in
the full poset for tiny q.  Values follow the convention of the closed
forms: chi = sum_{k>=0} (-1)^k f_k over nonempty chains, so the empty
poset gives 0.  The reduced characteristic is this minus one.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

import numpy as np

from .gf import is_prime, prime_power
from .lattice import BudgetExceeded, Local
from .pgl.classify import classify
from .pgl.group import SubgroupRec, group, projective

R_CASES = ("NotDividing", "DividesQ", "DividesQ2Q1_not3", "DividesQplus1_not2",
           "DividesQminus1_not23", "Two_Qodd", "Three_divQminus1")

MAX_Q = 128
CHAIN_LIMIT = 10_000


class InvalidInput(ValueError):
    pass


class InvalidQ(ValueError):
    pass


@dataclass(frozen=True)
class RCase:
    tag: str


@dataclass
class ElemAbelianRecord:
    rank: int
    count: int
    subgroups: list        # sorted local index arrays
    r: int = 0

    @property
    def contribution(self) -> int:
        """Sum of mu(1, E) over these subgroups E."""
        return self.count * (-1) ** self.rank * self.r ** comb(self.rank, 2)


def pgl_order(q: int) -> int:
    return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)


def _check(q, r):
    try:
        prime_power(q)
    except Exception:
        raise InvalidInput(f"q = {q} is not a prime power") from None
    if q > MAX_Q:
        raise InvalidInput(f"q = {q} exceeds {MAX_Q}")
    if not (isinstance(r, int) and is_prime(r)):
        raise InvalidInput(f"r = {r} is not prime")


def r_case(q: int, r: int) -> RCase:
    _check(q, r)
    if pgl_order(q) % r:
        return RCase("NotDividing")
    if q % r == 0:
        return RCase("DividesQ")
    if r == 3 and (q - 1) % 3 == 0:
        return RCase("Three_divQminus1")
    if r == 2 and q % 2:
        return RCase("Two_Qodd")
    if (q - 1) % r == 0:
        return RCase("DividesQminus1_not23")
    if (q + 1) % r == 0:
        return RCase("DividesQplus1_not2")
    return RCase("DividesQ2Q1_not3")


def chi_closed(q: int, r: int) -> int:
    tag = r_case(q, r).tag
    if tag == "NotDividing":
        return 0
    if tag == "DividesQ":
        return -(q ** 3 - 1)
    if tag == "Three_divQminus1":
        v = -q ** 2 * (q ** 6 - q ** 4 + 7 * q ** 3 - 7 * q - 8)
        assert v % 8 == 0
        return v // 8
    if tag in ("Two_Qodd", "DividesQminus1_not23"):
        v = -q ** 2 * (q ** 2 + q + 1) * (q ** 2 + q - 3)
        assert v % 3 == 0
        return v // 3
    if tag == "DividesQplus1_not2":
        return q ** 3 * (q ** 3 - 1) // 2
    v = q ** 3 * (q - 1) ** 2 * (q + 1)
    assert v % 3 == 0
    return v // 3


# -- elementary abelian r-subgroups ------------------------------------------------

def _local(G) -> Local:
    if isinstance(G, Local):
        return G
    if G.perms is None:
        raise BudgetExceeded("group is not materialised")
    return Local(G)


def elem_abelian(G, r: int, max_subgroups: int = 2_000_000) -> list:
    """All elementary abelian r-subgroups of G (rank >= 1), grouped by rank.

    Rank s+1 groups are grown from rank s groups by one commuting element
    of order r; candidates for a group are inherited from its parent and
    filtered by the new generator, and elements already swept into a
    found extension are skipped."""
    L = _local(G)
    X = np.flatnonzero(L.orders == r)
    if not len(X):
        return []
    out = []
    grow = L.N % (r * r) == 0   # no E_{r^2} otherwise
    # rank 1: one subgroup per set of r-1 generators
    seen = np.zeros(L.N, dtype=bool)
    level = []
    for x in X:
        if seen[x]:
            continue
        pw = [L.e, int(x)]
        for _ in range(r - 2):
            pw.append(int(L.mul(pw[-1], int(x))))
        elems = np.sort(np.array(pw))
        seen[elems] = True
        cand = X[L.commute_mask(X, int(x))] if grow else X[:0]
        level.append((elems, cand))
    rank = 1
    while level:
        out.append(ElemAbelianRecord(rank, len(level), [e for e, _ in level], r))
        nxt = {}
        for elems, cand in level:
            inA = np.zeros(L.N, dtype=bool)
            inA[elems] = True
            covered = inA.copy()
            for x in cand:
                if covered[x]:
                    continue
                x = int(x)
                cosets = [elems]
                for _ in range(r - 1):
                    cosets.append(L.mul(cosets[-1], np.full(len(elems), x)))
                B = np.sort(np.concatenate(cosets))
                covered[B] = True
                key = B.tobytes()
                if key not in nxt:
                    c2 = cand[~inA[cand]]
                    c2 = c2[L.commute_mask(c2, x)]
                    nxt[key] = (B, c2)
                    if len(nxt) > max_subgroups:
                        raise BudgetExceeded("too many elementary abelian subgroups")
        level = [nxt[k] for k in sorted(nxt)]
        rank += 1
    return out


def chi_from_records(records) -> int:
    return -sum(rec.contribution for rec in records)


def chi_bruteforce(G, r: int) -> int:
    return chi_from_records(elem_abelian(G, r))


# -- the full poset ------------------------------------------------------------------

def r_subgroups(G, r: int, limit: int = CHAIN_LIMIT) -> list:
    """All nontrivial r-subgroups of G as sorted local index arrays, by order."""
    L = _local(G)
    o = L.orders
    relts = np.flatnonzero(o > 1)
    v = o[relts].copy()
    while True:
        m = (v % r == 0)
        if not m.any():
            break
        v[m] //= r
    relts = relts[v == 1]  # nontrivial r-elements
    found = {}
    level = {}
    for x in relts:
        S = L.closure([int(x)])
        if len(S) == r:
            level.setdefault(S.tobytes(), S)
    while level:
        found.update(level)
        if len(found) > limit:
            raise BudgetExceeded(f"more than {limit} r-subgroups")
        nxt = {}
        for S in level.values():
            inS = np.zeros(L.N, dtype=bool)
            inS[S] = True
            gens = L.small_gens(S)
            cand = relts[~inS[relts]]
            # x normalises S
            ok = np.ones(len(cand), dtype=bool)
            for h in gens:
                xh = L.mul(cand, np.full(len(cand), h))
                conj = L.mul(xh, L.inv[cand])
                ok &= inS[conj]
            cand = cand[ok]
            # x^r in S
            p = cand.copy()
            for _ in range(r - 1):
                p = L.mul(p, cand)
            cand = cand[inS[p]]
            covered = inS.copy()
            for x in cand:
                if covered[x]:
                    continue
                B = L.closure(gens + [int(x)])
                covered[B] = True
                nxt.setdefault(B.tobytes(), B)
        level = {k: v for k, v in nxt.items() if k not in found}
    return sorted(found.values(), key=lambda s: (len(s), s.tobytes()))


def chi_chaincount(G=None, r: int | None = None, poset=None, limit: int = CHAIN_LIMIT) -> int:
    """Alternating count of nonempty chains, sum_k (-1)^k f_k, of the poset
    of nontrivial r-subgroups (given explicitly or built from G)."""
    subs = poset if poset is not None else r_subgroups(G, r, limit)
    if len(subs) > limit:
        raise BudgetExceeded(f"poset has {len(subs)} > {limit} elements")
    if not subs:
        return 0
    universe = np.unique(np.concatenate(subs))
    col = {int(x): i for i, x in enumerate(universe)}
    M = np.zeros((len(subs), len(universe)), dtype=np.float32)
    for i, s in enumerate(subs):
        M[i, [col[int(x)] for x in s]] = 1
    inter = M @ M.T
    sizes = np.array([len(s) for s in subs])
    below = (inter == sizes[:, None]) & (sizes[:, None] < sizes[None, :])   # [y, x]: y < x
    # g(x): signed count of chains with top x; g(x) = 1 - sum_{y<x} g(y)
    order = np.argsort(sizes, kind="stable")
    g = np.zeros(len(subs), dtype=object)
    for x in order:
        ys = np.flatnonzero(below[:, x])
        g[x] = 1 - sum(g[ys]) if len(ys) else 1
    return int(sum(g))


# -- Gaussian coefficients and the elation census ------------------------------------

def gaussian_binomial(n: int, k: int, r: int) -> int:
    if not 0 <= k <= n:
        raise InvalidInput("need 0 <= k <= n")
    num = den = 1
    for i in range(k):
        num *= r ** (n - i) - 1
        den *= r ** (i + 1) - 1
    return num // den


def elation_formulas(q: int) -> dict:
    r, d = prime_power(q)
    npts = q * q + q + 1
    ac = {i: npts * (q + 1) * gaussian_binomial(d, i, r) for i in range(1, d + 1)}
    a = {i: npts * (gaussian_binomial(2 * d, i, r) - (q + 1) * (gaussian_binomial(d, i, r) if i <= d else 0))
         for i in range(1, 2 * d + 1)}
    return {"r": r, "d": d, "N_ac": ac, "N_a": a}


def _elation_subgroups(ctx, elems):
    """Subgroups of an elementary abelian group given as GElems (identity
    first), as bitmasks over the list, grouped by rank."""
    m = len(elems)
    P = np.stack([e.perm for e in elems])
    codes = np.array([e.code for e in elems], dtype=np.int64)
    srt = np.argsort(codes)
    prod = ctx.codes(P[np.arange(m)[:, None, None], P[:, ctx.frame][None, :, :]].reshape(-1, 4))
    table = srt[np.searchsorted(codes[srt], prod)].reshape(m, m).tolist()

    def extend(S, x):
        # abelian: <S, x> is the union of the cosets S x^i
        members = [i for i in range(m) if S >> i & 1]
        out, y = S, x
        while not out >> y & 1:
            for i in members:
                out |= 1 << table[i][y]
            y = table[y][x]
        return out

    levels = [{1}]
    while True:
        nxt = set()
        for S in levels[-1]:
            covered = S
            for x in range(1, m):
                if not covered >> x & 1:
                    B = extend(S, x)
                    covered |= B
                    nxt.add(B)
        if not nxt:
            break
        levels.append(nxt)
    return levels


def elation_census(q: int) -> dict:
    """Counts of elation subgroups E_{r^i} with a common centre and axis
    (N_ac), a common axis only (N_a) and a common centre only (N_c), by
    direct enumeration, next to the Gaussian-coefficient formulas."""
    try:
        r, d = prime_power(q)
    except Exception:
        raise InvalidQ(f"q = {q} is not a prime power") from None
    if q > 8:
        raise InvalidQ("elation census needs q <= 8")
    ctx = projective(q)
    plane, F = ctx.plane, ctx.F
    N_ac, N_a, N_c = {}, {}, {}

    def mat(c, u):
        return tuple(int(F.add(int(i == j), F.mul(int(c[i]), int(u[j])))) for i in range(3) for j in range(3))

    for dual in (False, True):
        for obj in range(ctx.n):
            fixed = plane.coords[obj]
            if not dual:
                # axis obj: centres are the points on it
                pts = plane.points_on(obj)
                pairs = [(F.mul(lam, 1), c) for c in pts for lam in range(1, q)]
                mats = [mat([F.mul(lam, int(x)) for x in plane.coords[c]], fixed) for lam, c in pairs]
            else:
                # centre obj: axes are the lines through it
                lns = [l for l in range(ctx.n) if plane.on(obj, l)]
                mats = [mat(fixed, [F.mul(lam, int(x)) for x in plane.coords[l]])
                        for l in lns for lam in range(1, q)]
            elems = [ctx.identity] + sorted({ctx.elem(m_).code: ctx.elem(m_) for m_ in mats}.values(),
                                            key=lambda e: e.code)
            centres = [None] + [classify(e).center for e in elems[1:]]
            axes = [None] + [classify(e).axis for e in elems[1:]]
            levels = _elation_subgroups(ctx, elems)
            for rank, subs in enumerate(levels):
                if rank == 0:
                    continue
                for S in subs:
                    idx = [i for i in range(1, len(elems)) if S >> i & 1]
                    same_c = len({centres[i] for i in idx}) == 1
                    same_a = len({axes[i] for i in idx}) == 1
                    if same_c and same_a:
                        if not dual:
                            N_ac[rank] = N_ac.get(rank, 0) + 1
                    elif same_a:
                        N_a[rank] = N_a.get(rank, 0) + 1
                    elif same_c:
                        N_c[rank] = N_c.get(rank, 0) + 1
    formulas = elation_formulas(q)
    ranks = range(1, 2 * d + 1)
    N_ac = {i: N_ac.get(i, 0) for i in ranks}
    N_a = {i: N_a.get(i, 0) for i in ranks}
    N_c = {i: N_c.get(i, 0) for i in ranks}
    f_ac = {i: formulas["N_ac"].get(i, 0) for i in ranks}
    return {"q": q, "r": r, "d": d, "N_ac": N_ac, "N_a": N_a, "N_c": N_c,
            "formula_N_ac": f_ac, "formula_N_a": formulas["N_a"],
            "agree": N_ac == f_ac and N_a == formulas["N_a"] and N_c == N_a}


# -- convenience ---------------------------------------------------------------------

def pgl(q: int) -> SubgroupRec:
    return group(q, "pgl3")


def prime_divisors(n: int) -> list:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_report(q: int, r: int, methods=("closed",)) -> dict:
    _check(q, r)
    vals = {"closed": chi_closed(q, r)}
    if "brute" in methods or "chain" in methods:
        G = pgl(q)
        L = Local(G)
        if "brute" in methods:
            vals["brute"] = chi_bruteforce(L, r)
        if "chain" in methods:
            vals["chain"] = chi_chaincount(L, r)
    return {"q": q, "r": r, "case_tag": r_case(q, r).tag, "values": vals,
            "agree": len(set(vals.values())) == 1}
