"""Verification profiles: a list of named checks, each returning (ok, detail)."""

from __future__ import annotations

import time

QUICK_Q = (2, 3, 4)


def _pairs_generating(model) -> int:
    """Ordered pairs (a, b) with <a, b> = G, by closing every pair."""
    L = model.local
    N = L.N
    count = 0
    for a in range(N):
        for b in range(N):
            if len(L.closure([a, b])) == N:
                count += 1
    return count


def check_plane_and_group():
    from .pgl.group import group
    from .pgl.plane import build_plane
    bad = []
    for q in (2, 3, 4, 5, 8):
        if build_plane(q).n != q * q + q + 1:
            bad.append(f"points({q})")
    for q in QUICK_Q:
        if group(q, "pgl3").order != q ** 3 * (q ** 3 - 1) * (q ** 2 - 1):
            bad.append(f"|PGL(3,{q})|")
    if group(4, "psl3").order != 20160:
        bad.append("|PSL(3,4)|")
    return not bad, ", ".join(bad) or "orders as expected"


def check_psl32_lattice():
    from .lattice import chain_mu, lattice_of, recursion_residuals, intersection_check
    from .pgl.group import group
    m = lattice_of(group(2), q=2, kind="psl3")
    res = [r for r in recursion_residuals(m) if r]
    chain = [i for i in range(len(m.classes)) if chain_mu(m, i) != m.classes[i].mu]
    t21 = intersection_check(m)
    ok = not res and not chain and not t21
    return ok, f"{len(m.classes)} classes, {m.total_subgroups} subgroups"


def check_psl33_lattice():
    from .lattice import intersection_check, lattice_of, recursion_residuals
    from .pgl.group import group
    m = lattice_of(group(3), q=3, kind="psl3", fingerprints=False)
    ok = not any(recursion_residuals(m)) and not intersection_check(m)
    return ok, f"{len(m.classes)} classes, {m.total_subgroups} subgroups"


def check_hall_psl32():
    from .lattice import eulerian_phi, gen_probability, lattice_of
    from .pgl.group import group
    m = lattice_of(group(2), q=2, kind="psl3", fingerprints=False)
    phi2 = eulerian_phi(m, 2)
    exhaustive = _pairs_generating(m)
    probs = [gen_probability(m, n) for n in range(1, 5)]
    ok = (phi2 == exhaustive and eulerian_phi(m, 1) == 0 and eulerian_phi(m, 0) == 0
          and all(0 <= p <= 1 for p in probs) and all(a <= b for a, b in zip(probs, probs[1:])))
    return ok, f"phi_2 = {phi2}, pairs = {exhaustive}"


def check_global_sum():
    from .psl3.table4 import global_sum_check
    sym = global_sum_check("symbolic")
    nums = {p: global_sum_check("numeric", p) for p in (3, 5, 7)}
    return sym.is_zero() and not any(nums.values()), f"symbolic {sym}, numeric {nums}"


def check_tables():
    from .psl3.table4 import consistency_table1_vs_table4, integrality_report, mann_check
    rep = consistency_table1_vs_table4()
    integ = {p: integrality_report(p) for p in (3, 5, 7)}
    mann = {p: mann_check(p)["max_ratio"] for p in (3, 5, 7)}
    ok = rep["ok"] and not any(integ.values()) and all(v <= 1 for v in mann.values())
    return ok, f"table1 rows {rep['rows']}, mann max {max(mann.values())}"


def check_euler(qs=QUICK_Q, chain_qs=(2, 3)):
    from .eulerchar import chi_bruteforce, chi_chaincount, chi_closed, pgl, pgl_order, prime_divisors
    from .lattice import Local
    bad = []
    for q in qs:
        L = Local(pgl(q))
        for r in prime_divisors(pgl_order(q)):
            c = chi_closed(q, r)
            if c != chi_bruteforce(L, r) or (q in chain_qs and c != chi_chaincount(L, r)):
                bad.append((q, r))
    return not bad, f"mismatches {bad}" if bad else f"q in {list(qs)} agree"


def check_table2():
    from .lattice import lattice_of
    from .pgl.group import group
    from .psl3.table4 import match_table2
    m = lattice_of(group(4), q=4, kind="psl3")
    rep = match_table2(m.classes)
    return rep["ok"], f"{len(m.classes)} classes, {m.total_subgroups} subgroups"


def check_normalizers():
    from .pgl.constructors import line_rep
    from .pgl.scan import full_stream, normalizer
    from .psl3.table4 import line
    stream = full_stream(8)
    bad = []
    for lid in (17, 23, 25, 26, 29, 30):
        n = normalizer(stream, line_rep(lid, 3)).order
        if n != line(lid, 3).normalizer_order.eval_int(8):
            bad.append((lid, n))
    return not bad, f"mismatches {bad}" if bad else "all six match"


def check_census():
    from .psl3.census import census
    bad = [r.line_id for r in (census(lid, 3) for lid in range(1, 32)) if not r.ok]
    return not bad, f"nonzero residual at {bad}" if bad else "all 31 residuals zero"


PROFILES = {
    "quick": [("plane-group", check_plane_and_group), ("psl32-lattice", check_psl32_lattice),
              ("psl33-lattice", check_psl33_lattice),
              ("hall", check_hall_psl32), ("global-sum", check_global_sum),
              ("tables", check_tables), ("eulerchar", check_euler)],
}
PROFILES["full"] = PROFILES["quick"] + [("table2", check_table2), ("normalizers", check_normalizers),
                                        ("census", check_census)]


def run(profile: str = "quick", progress=None) -> list:
    out = []
    for name, fn in PROFILES[profile]:
        t = time.time()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        row = {"check": name, "ok": bool(ok), "detail": detail, "seconds": round(time.time() - t, 1)}
        if progress:
            progress(row)
        out.append(row)
    return out
