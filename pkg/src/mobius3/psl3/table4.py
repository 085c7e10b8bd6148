"""Closed-form data for PSL(3,2^p), p an odd prime: the 31 classes of
intersections of maximal subgroups with their normalisers and Moebius
values, the nonzero-mu summary with Aschbacher classes, the PSL(3,4)
fixture, and the arithmetic checks built on them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from ..gf import is_prime
from .qpoly import QPoly, q


class InvalidP(ValueError):
    pass


G_ORDER = q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)


@dataclass(frozen=True)
class ClosedFormLine:
    line_id: int
    name: str
    order: QPoly
    normalizer_name: str
    normalizer_order: QPoly
    mu: QPoly
    aschbacher: str | None = None
    stabilized_objects: str = ""

    @property
    def class_size(self) -> QPoly:
        return G_ORDER / self.normalizer_order

    def evaluate(self, p: int) -> dict:
        Q = 2 ** p
        return {"line": self.line_id, "name": self.name,
                "order": self.order.eval_int(Q),
                "normalizer_order": self.normalizer_order.eval_int(Q),
                "class_size": self.class_size.eval_int(Q),
                "mu": self.mu.eval_int(Q)}


H = None  # marker: normaliser equals the subgroup itself

# (line, structure, order, normaliser structure, normaliser order or H, mu,
#  Aschbacher classes (nonzero-mu lines only), stabilised objects)
_C = QPoly.const
_ROWS = [
    (1, "E_{q^2}:GL(2,q) = G_P", q ** 3 * (q - 1) ** 2 * (q + 1), "H", H, _C(-1),
     "C1", "an F_q-rational point"),
    (2, "E_{q^2}:GL(2,q) = G_l", q ** 3 * (q - 1) ** 2 * (q + 1), "H", H, _C(-1),
     "C1", "an F_q-rational line"),
    (3, "(C_{q-1})^2:Sym(3) = G_T", 6 * (q - 1) ** 2, "H", H, _C(-1),
     "C2", "an F_q-rational triangle"),
    (4, "C_{q^2+q+1}:C_3 = G_T~", 3 * (q ** 2 + q + 1), "H", H, _C(-1),
     "C3", "an F_{q^3}-rational triangle not defined over F_q"),
    (5, "PSL(3,2) = G_Pi", _C(168), "H", H, _C(-1),
     "C5", "a subplane of order 2"),
    (6, "E_q^{1+2}:(C_{q-1})^2", q ** 3 * (q - 1) ** 2, "H", H, _C(1),
     "C1 (N)", "a point P and a line l with P on l"),
    (7, "GL(2,q)", q * (q - 1) ** 2 * (q + 1), "H", H, _C(1),
     "C1 (N)", "a point P and a line l with P not on l"),
    (8, "E_{q^2}:(C_{q-1})^2 = G_{P,Q}", q ** 2 * (q - 1) ** 2, "H:C_2", 2 * q ** 2 * (q - 1) ** 2, _C(0),
     None, "two points"),
    (9, "E_{q^2}:(C_{q-1})^2 = G_{l,r}", q ** 2 * (q - 1) ** 2, "H:C_2", 2 * q ** 2 * (q - 1) ** 2, _C(0),
     None, "two lines"),
    (10, "E_{q^2}:C_{q-1} = G_{P_1,...,P_{q+1}}", q ** 2 * (q - 1), "E_{q^2}:GL(2,q)",
     q ** 3 * (q - 1) ** 2 * (q + 1), _C(0), None, "the points of a line"),
    (11, "E_{q^2}:C_{q-1} = G_{l_1,...,l_{q+1}}", q ** 2 * (q - 1), "E_{q^2}:GL(2,q)",
     q ** 3 * (q - 1) ** 2 * (q + 1), _C(0), None, "the lines through a point"),
    (12, "E_q:(C_{q-1})^2", q * (q - 1) ** 2, "H", H, _C(-1),
     "C1 (N)", "two points and two lines"),
    (13, "(C_{q-1})^2:C_2", 2 * (q - 1) ** 2, "H", H, _C(1),
     "C1, C2 (N)", "a triangle and one of its vertices"),
    (14, "(C_{q-1})^2", (q - 1) ** 2, "(C_{q-1})^2:Sym(3)", 6 * (q - 1) ** 2, _C(0),
     None, "a triangle, vertexwise"),
    (15, "E_q:C_{q-1} = G_{P_1,...,P_{q+1},l}", q * (q - 1), "E_{q^2}:(C_{q-1})^2",
     q ** 2 * (q - 1) ** 2, _C(0), None, "the points of a line and another line"),
    (16, "E_q:C_{q-1} = G_{l_1,...,l_{q+1},P}", q * (q - 1), "E_{q^2}:(C_{q-1})^2",
     q ** 2 * (q - 1) ** 2, _C(0), None, "the lines through a point and another point"),
    (17, "C_{2(q-1)}", 2 * (q - 1), "E_q x C_{q-1}", q * (q - 1), _C(0), None, ""),
    (18, "E_q = G_{P_1,...,P_{q+1},l_1,...,l_{q+1}}", q, "E_q^{1+2}:(C_{q-1})^2",
     q ** 3 * (q - 1) ** 2, _C(0), None, "elations with fixed centre and axis"),
    (19, "C_{q-1} = G_{P_1,...,P_{q+1},l_1,...,l_{q+1}}", q - 1, "GL(2,q)",
     q * (q - 1) ** 2 * (q + 1), _C(0), None, "homologies with fixed centre and axis"),
    (20, "Sym(4) = G_{P,Pi}", _C(24), "H", H, _C(1),
     "C1, C5 (N)", "a subplane Pi of order 2 and a point of Pi"),
    (21, "Sym(4) = G_{l,Pi}", _C(24), "H", H, _C(1),
     "C1, C5 (N)", "a subplane Pi of order 2 and a line of Pi"),
    (22, "C_7:C_3", _C(21), "H", H, _C(1),
     "C2, C5 (N)", "a subplane Pi of order 2 and a triangle not in Pi"),
    (23, "D_8", _C(8), "E_q . E_4", 4 * q, -q / 2,
     "C1, C5 (N)", "a subplane Pi of order 2, a point P and a line l, P on l"),
    (24, "C_7 <= G_{T,Pi}", _C(7), "C_{q^2+q+1}:C_3", 3 * (q ** 2 + q + 1), _C(0), None, ""),
    (25, "Sym(3)", _C(6), "H x C_{q-1}", 6 * (q - 1), _C(0), None, ""),
    (26, "C_4", _C(4), "E_q . E_{2q}", 2 * q ** 2, _C(0), None, ""),
    (27, "E_4 <= G_{l_1,l_2,l_3}", _C(4), "E_{q^2}:Sym(3)", 6 * q ** 2, _C(0), None, ""),
    (28, "E_4 <= G_{P_1,P_2,P_3}", _C(4), "E_{q^2}:Sym(3)", 6 * q ** 2, _C(0), None, ""),
    (29, "C_3", _C(3), "C_{q^2-1}:C_2", 2 * (q ** 2 - 1), _C(0), None, ""),
    (30, "C_2", _C(2), "E_q^{1+2}:C_{q-1}", q ** 3 * (q - 1), _C(0), None, ""),
    (31, "{1}", _C(1), "G", G_ORDER, _C(0), None, ""),
]

LINE24_P3 = ("(C_7)^2:C_3", _C(147))

NONZERO_LINES = (1, 2, 3, 4, 5, 6, 7, 12, 13, 20, 21, 22, 23)


def _check_p(p):
    if not (isinstance(p, int) and is_prime(p) and p != 2):
        raise InvalidP("p must be an odd prime")


def table4(p: int | None = None, symbolic: bool = False):
    """The 31 lines.  With ``symbolic`` the polynomial data is returned
    (line 24 uses the generic p > 3 normaliser unless p = 3 is given);
    otherwise each line is evaluated at q = 2^p."""
    if p is not None:
        _check_p(p)
    elif not symbolic:
        raise InvalidP("p is required unless symbolic")
    lines = []
    for (lid, name, order, nname, norder, mu, asch, stab) in _ROWS:
        if norder is None:
            norder = order
        ln = ClosedFormLine(lid, name, order, nname, norder, mu, asch, stab)
        if lid == 24 and p == 3:
            ln = replace(ln, normalizer_name=LINE24_P3[0], normalizer_order=LINE24_P3[1])
        lines.append(ln)
    if symbolic:
        return lines
    return [ln.evaluate(p) for ln in lines]


def line(lid: int, p: int | None = None) -> ClosedFormLine:
    return table4(p, symbolic=True)[lid - 1]


def integrality_report(p: int) -> list:
    """Failures of the integrality invariants at q = 2^p (empty when all hold)."""
    _check_p(p)
    Q = 2 ** p
    g = G_ORDER.eval_int(Q)
    bad = []
    for ln in table4(p, symbolic=True):
        try:
            o = ln.order.eval_int(Q)
            n = ln.normalizer_order.eval_int(Q)
            ln.mu.eval_int(Q)
        except ArithmeticError as exc:
            bad.append((ln.line_id, str(exc)))
            continue
        if g % o:
            bad.append((ln.line_id, "order does not divide |G|"))
        if g % n or n % o:
            bad.append((ln.line_id, "normaliser order does not divide |G| or is not a multiple of |H|"))
        if g // n <= 0:
            bad.append((ln.line_id, "class size not positive"))
    return bad


# -- the global identity mu({1}) = 0 -------------------------------------------------

def global_sum_symbolic() -> QPoly:
    """sum over G and all 31 lines of class_size * mu (expected: zero)."""
    total = QPoly.const(1)  # G itself
    for ln in table4(symbolic=True):
        if not ln.mu.is_zero():
            total = total + ln.class_size * ln.mu
    return total


def _numeric_terms(Q: int):
    """Independent integer evaluation of (class size, mu) for the nonzero lines,
    written out directly rather than through the polynomial table."""
    g = Q ** 3 * (Q ** 3 - 1) * (Q ** 2 - 1)
    return [
        (1, 1),                                                 # G
        (Q * Q + Q + 1, -1),                                    # point stabilisers
        (Q * Q + Q + 1, -1),                                    # line stabilisers
        (Q ** 3 * (Q + 1) * (Q * Q + Q + 1) // 6, -1),          # triangles
        (Q ** 3 * (Q - 1) ** 2 * (Q + 1) // 3, -1),             # Singer normalisers
        (g // 168, -1),                                         # subplanes
        ((Q * Q + Q + 1) * (Q + 1), 1),                         # flags
        ((Q * Q + Q + 1) * Q * Q, 1),                           # anti-flags
        ((Q * Q + Q + 1) * (Q * Q + Q) * Q, -1),
        ((Q * Q + Q + 1) * Q ** 3 * (Q + 1) // 2, 1),
        (g // 24, 1),
        (g // 24, 1),
        (g // 21, 1),
        (Q * Q * (Q ** 3 - 1) * (Q * Q - 1) // 4, -Q // 2),
    ]


def global_sum_check(mode: str = "symbolic", p: int | None = None):
    """Residual of mu({1}) = 0 unfolded: a QPoly (symbolic) or an integer at q = 2^p."""
    if mode == "symbolic":
        return global_sum_symbolic()
    if mode != "numeric":
        raise ValueError("mode is 'symbolic' or 'numeric'")
    _check_p(p)
    Q = 2 ** p
    a = sum(s * m for s, m in _numeric_terms(Q))
    b = global_sum_symbolic().eval_int(Q)
    if a != b:
        raise AssertionError(f"numeric paths disagree at p={p}: {a} vs {b}")
    return a


def a_n_closed(p: int) -> dict:
    _check_p(p)
    Q = 2 ** p
    g = G_ORDER.eval_int(Q)
    a = {1: 1}
    for ln in table4(p, symbolic=True):
        mu = ln.mu.eval_int(Q)
        if mu:
            idx = g // ln.order.eval_int(Q)
            a[idx] = a.get(idx, 0) + ln.class_size.eval_int(Q) * mu
    return dict(sorted(a.items()))


def mann_check(p: int) -> dict:
    """|mu(H)| <= [G:H] for every line; reports the largest ratio."""
    _check_p(p)
    Q = 2 ** p
    g = G_ORDER.eval_int(Q)
    ratios = {}
    for ln in table4(p, symbolic=True):
        ratios[ln.line_id] = Fraction(abs(ln.mu.eval_int(Q)), g // ln.order.eval_int(Q))
    worst = max(ratios, key=ratios.get)
    return {"p": p, "max_ratio": ratios[worst], "argmax_line": worst,
            "ok": all(r <= 1 for r in ratios.values()), "ratios": ratios}


# -- fixtures -------------------------------------------------------------------------

TABLE1 = [
    # (line, structure, Aschbacher, stabilised, normaliser, mu)
    (0, "G", "-", "-", "H", _C(1)),
    (1, "E_{q^2}:GL(2,q)", "C1", "an F_q-rational point", "H", _C(-1)),
    (2, "E_{q^2}:GL(2,q)", "C1", "an F_q-rational line", "H", _C(-1)),
    (3, "(C_{q-1})^2:Sym(3)", "C2", "an F_q-rational triangle", "H", _C(-1)),
    (4, "C_{q^2+q+1}:C_3", "C3", "an F_{q^3}-rational triangle not defined over F_q", "H", _C(-1)),
    (5, "PSL(3,2)", "C5", "a subplane of order 2", "H", _C(-1)),
    (6, "E_q^{1+2}:(C_{q-1})^2", "C1 (N)", "a point P and a line l with P on l", "H", _C(1)),
    (7, "GL(2,q)", "C1 (N)", "a point P and a line l with P not on l", "H", _C(1)),
    (12, "E_q:(C_{q-1})^2", "C1 (N)", "two points and two lines", "H", _C(-1)),
    (13, "(C_{q-1})^2:C_2", "C1, C2 (N)", "a triangle and one of its vertices", "H", _C(1)),
    (20, "Sym(4)", "C1, C5 (N)", "a subplane Pi of order 2 and a point of Pi", "H", _C(1)),
    (21, "Sym(4)", "C1, C5 (N)", "a subplane Pi of order 2 and a line of Pi", "H", _C(1)),
    (22, "C_7:C_3", "C2, C5 (N)", "a subplane Pi of order 2 and a triangle not in Pi", "H", _C(1)),
    (23, "D_8", "C1, C5 (N)", "a subplane Pi of order 2, a point P and a line l, P on l",
     "E_q . E_4", -q / 2),
]

# (label, order, conjugacy classes, mu) for PSL(3,4), nonzero mu only
TABLE2 = [
    ("G", 20160, 1, 1),
    ("E_16 . SL(2,4)", 960, 2, -1),
    ("Alt(6)", 360, 3, -1),
    ("PSL(3,2)", 168, 3, -1),
    ("PSU(3,2)", 72, 1, -1),
    ("E_4^{1+2}:C_3", 192, 1, 1),
    ("Alt(5)", 60, 7, 1),
    ("E_9:C_4", 36, 3, 2),
    ("Sym(4)", 24, 6, 2),
    ("C_7:C_3", 21, 1, 2),
    ("Alt(4)", 12, 6, -2),
    ("Alt(4)", 12, 1, -1),
    ("D_10", 10, 1, -3),
    ("Q_8", 8, 1, 2),
    ("D_8", 8, 3, -4),
    ("Sym(3)", 6, 1, -14),
    ("C_4", 4, 3, -8),
    ("C_3", 3, 1, 24),
    ("C_2", 2, 1, 544),
    ("{1}", 1, 1, -120960),
]

# element-order histograms of the small labels (standard group data) used to
# tell same-order rows apart
LABEL_ORDERS = {
    "Sym(4)": {1: 1, 2: 9, 3: 8, 4: 6},
    "C_7:C_3": {1: 1, 3: 14, 7: 6},
    "Alt(4)": {1: 1, 2: 3, 3: 8},
    "D_10": {1: 1, 2: 5, 5: 4},
    "Q_8": {1: 1, 2: 1, 4: 6},
    "D_8": {1: 1, 2: 5, 4: 2},
    "Sym(3)": {1: 1, 2: 3, 3: 2},
    "C_4": {1: 1, 2: 1, 4: 2},
    "C_3": {1: 1, 3: 2},
    "C_2": {1: 1, 2: 1},
    "{1}": {1: 1},
    "Alt(5)": {1: 1, 2: 15, 3: 20, 5: 24},
    "Alt(6)": {1: 1, 2: 45, 3: 80, 4: 90, 5: 144},
    "PSL(3,2)": {1: 1, 2: 21, 3: 56, 4: 42, 7: 48},
}


def table1_fixture():
    return list(TABLE1)


def table2_fixture():
    return list(TABLE2)


def _base_name(name: str) -> str:
    return name.split(" = ")[0].split(" <= ")[0]


def consistency_table1_vs_table4() -> dict:
    lines = {ln.line_id: ln for ln in table4(symbolic=True)}
    nonzero = [0] + [lid for lid in sorted(lines) if not lines[lid].mu.is_zero()]
    rows = [r[0] for r in TABLE1]
    problems = []
    if rows != nonzero:
        problems.append(f"row sets differ: {rows} vs {nonzero}")
    for lid, struct, asch, stab, nname, mu in TABLE1:
        if lid == 0:
            continue
        ln = lines[lid]
        if _base_name(ln.name) != struct:
            problems.append(f"line {lid}: structure {ln.name!r} vs {struct!r}")
        if ln.aschbacher != asch:
            problems.append(f"line {lid}: Aschbacher {ln.aschbacher!r} vs {asch!r}")
        if ln.mu != mu:
            problems.append(f"line {lid}: mu {ln.mu} vs {mu}")
        if nname == "H":
            if ln.normalizer_order != ln.order:
                problems.append(f"line {lid}: normaliser is not H")
        elif ln.normalizer_name != nname:
            problems.append(f"line {lid}: normaliser {ln.normalizer_name!r} vs {nname!r}")
    return {"rows": len(TABLE1), "nonzero_lines": len(nonzero), "ok": not problems,
            "problems": problems}


def match_table2(classes) -> dict:
    """Compare lattice classes (objects with order, size, mu, fingerprint)
    with the PSL(3,4) fixture, bucketed by (order, mu)."""
    from collections import Counter
    got = Counter((c.order, c.mu) for c in classes if c.mu)
    want = Counter()
    for label, order, ncl, mu in TABLE2:
        want[(order, mu)] += ncl
    rows = []
    for label, order, ncl, mu in TABLE2:
        cls = [c for c in classes if c.order == order and c.mu == mu]
        iso_ok = None
        if label in LABEL_ORDERS and cls and cls[0].fingerprint is not None:
            iso_ok = all(dict(c.fingerprint[5]) == LABEL_ORDERS[label] for c in cls)
        rows.append({"label": label, "order": order, "mu": mu, "classes_expected": ncl,
                     "classes_found": len(cls), "iso_ok": iso_ok,
                     "ok": len(cls) == ncl and iso_ok is not False})
    extra = sorted(set(got) - set(want))
    return {"rows": rows, "extra": extra,
            "ok": all(r["ok"] for r in rows) and not extra and got == want}
