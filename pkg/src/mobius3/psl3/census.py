"""Empirical overgroup census inside PSL(3,2^p).

For a line H (its representative from ``line_rep``) and each candidate
line K we count the conjugates of K containing H as
#{g : H^g <= K} / |N(K)|, scanning the whole group, and check the
recursion mu(H) + 1 + sum count(H,K) mu(K) = 0 (the 1 is G itself).
Reference overgroup counts (the inventories behind the closed forms) are attached as
claims and compared, never used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from ..pgl.constructors import line_rep
from ..pgl.group import TooLarge, projective
from ..pgl.scan import NonIntegralCount, full_stream, normalizer, transporter_counts
from .qpoly import QPoly, q
from .table4 import NONZERO_LINES, InvalidP, table4

MAXIMAL = (1, 2, 3, 4, 5)
SIX_SEVEN = (6, 7)
CENSUS_P = (3,)


def _binom2(x):
    return x * (x - 1) / 2


# Printed overgroup inventories: line -> [(group of lines, count)].  Counts
# are QPolys in q unless they only hold at a specific p (then an int).
STATED = {
    6: [(MAXIMAL, QPoly.const(2))],
    7: [(MAXIMAL, QPoly.const(2))],
    8: [(MAXIMAL, QPoly.const(3))],
    10: [(MAXIMAL, q + 2), ((6,), q + 1)],
    12: [(MAXIMAL, QPoly.const(4)), ((6,), QPoly.const(3)), ((7,), QPoly.const(1))],
    13: [(MAXIMAL, QPoly.const(3)), ((7,), QPoly.const(1))],
    14: [(MAXIMAL, QPoly.const(7)), ((6,), QPoly.const(6)), ((7,), QPoly.const(3)),
         ((13,), QPoly.const(3)), ((12,), QPoly.const(6))],
    15: [(MAXIMAL, q + 3), (SIX_SEVEN, 2 * q + 2), ((12,), q)],
    17: [(MAXIMAL, q + 4), (SIX_SEVEN, QPoly.const(4)), ((12,), QPoly.const(1)), ((13,), q)],
    18: [(MAXIMAL, 2 * q + 2), (SIX_SEVEN, (q + 1) ** 2), ((12,), q ** 2)],
    19: [(MAXIMAL, 2 * q + 4 + _binom2(q + 1)), (SIX_SEVEN, (q + 2) ** 2),
         ((12,), (q + 1) ** 2 + (q + 1) * q), ((13,), _binom2(q + 1) + (q + 1) * q)],
    20: [(MAXIMAL, QPoly.const(2))],
    21: [(MAXIMAL, QPoly.const(2))],
    22: [(MAXIMAL, QPoly.const(2))],
    23: [(MAXIMAL, 2 + q / 2), ((6,), QPoly.const(1)), ((20,), q / 2), ((21,), q / 2)],
    25: [(MAXIMAL, 2 * q), ((7,), QPoly.const(1)), ((20,), q + 1), ((21,), q + 1)],
    26: [(MAXIMAL, (q ** 2 + 8) / 4), ((6,), QPoly.const(1)), ((20,), q ** 2 / 4),
         ((21,), q ** 2 / 4), ((23,), q / 2)],
    27: [(MAXIMAL, (q ** 2 + 4 * q + 8) / 4), ((6,), q + 1), ((20,), q ** 2 / 4),
         ((21,), 3 * q ** 2 / 4), ((23,), 3 * q / 2)],
    29: [(MAXIMAL, (4 * q ** 2 + 2) / 3), ((7,), QPoly.const(1)), ((20,), (q ** 2 - 1) / 3),
         ((21,), (q ** 2 - 1) / 3), ((22,), 2 * (q ** 2 - 1) / 3)],
    30: [(MAXIMAL, 2 * q + 2 + q ** 3 * (q - 1) / 2 + q ** 3 * (q - 1) / 8),
         ((6,), 2 * q + 1), ((7,), q ** 2), ((12,), q ** 2), ((13,), q ** 3 * (q - 1) / 2),
         ((20,), 3 * q ** 3 * (q - 1) / 8), ((21,), 3 * q ** 3 * (q - 1) / 8),
         ((23,), 5 * q ** 2 * (q - 1) / 4)],
    31: [((1,), q ** 2 + q + 1), ((2,), q ** 2 + q + 1),
         ((3,), q ** 3 * (q + 1) * (q ** 2 + q + 1) / 6),
         ((4,), q ** 3 * (q - 1) ** 2 * (q + 1) / 3),
         ((5,), q ** 3 * (q ** 3 - 1) * (q ** 2 - 1) / 168),
         ((6,), (q ** 2 + q + 1) * (q + 1)), ((7,), (q ** 2 + q + 1) * q ** 2),
         ((12,), (q ** 2 + q + 1) * (q ** 2 + q) * q),
         ((13,), (q ** 2 + q + 1) * q ** 3 * (q + 1) / 2),
         ((20,), q ** 3 * (q ** 3 - 1) * (q ** 2 - 1) / 24),
         ((21,), q ** 3 * (q ** 3 - 1) * (q ** 2 - 1) / 24),
         ((22,), q ** 3 * (q ** 3 - 1) * (q ** 2 - 1) / 21),
         ((23,), q ** 2 * (q ** 3 - 1) * (q ** 2 - 1) / 4)],
}

# the p = 3 inventory of line 24 (the generic one needs 7 | q^2+q+1 differently)
STATED_24_P3 = [(MAXIMAL, 14), ((6,), 6), ((7,), 3), ((12,), 6), ((13,), 3), ((22,), 7)]
STATED_24_GENERIC = [(MAXIMAL, 1 + (q ** 2 + q + 1) / 7), ((22,), q ** 2 + q + 1)]

NOTES = {
    23: ("Known discrepancy: a reading of the printed inventory (2+q/2, 1, q/2, q/2) "
         "as giving mu = 1 - q/2.  Unfolded, mu(H) = -(1 - (2+q/2) + 1 + q/2 + q/2) "
         "= -q/2, so the printed counts and the tabulated mu agree."),
    25: ("The printed inventory has q+1 Sym(4) overgroups of each type; with those "
         "counts the recursion gives mu = -4 instead of 0."),
    24: "The normaliser order for p = 3 is checked by a full scan.",
    17: ("H fixes a point D and the line b off it pointwise up to the homology; the "
         "invariant triangles are {D, X, Y} with {X, Y} an elation-swapped pair on b, "
         "q/2 of them, so the triangle count among the maximals and the line 13 count "
         "are q/2, not q.  Both readings close the recursion."),
    30: ("An invariant triangle of an elation with centre C and axis a has one vertex on "
         "a minus C and two swapped vertices on a line through C: q^3/2 triangles, so "
         "the triangle and line 13 counts are q^3/2 rather than q^3(q-1)/2.  The two "
         "errors cancel in the recursion."),
}


@dataclass
class CensusReport:
    line_id: int
    p: int
    mu: int
    counts: dict                      # overgroup line -> conjugates containing rep(H)
    stated: list = field(default_factory=list)   # [(lines, stated, empirical, agree)]
    recursion_residual: int = 0
    normalizer_order: int | None = None
    normalizer_order_expected: int | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        ok = self.recursion_residual == 0
        if self.normalizer_order is not None:
            ok = ok and self.normalizer_order == self.normalizer_order_expected
        return ok

    def to_dict(self) -> dict:
        return {"line": self.line_id, "p": self.p, "mu": self.mu,
                "counts": {str(k): v for k, v in self.counts.items()},
                "stated": [{"lines": list(ls), "stated": st, "empirical": em, "agree": ag}
                                 for ls, st, em, ag in self.stated],
                "recursion_residual": self.recursion_residual,
                "normalizer_order": self.normalizer_order,
                "normalizer_order_expected": self.normalizer_order_expected,
                "notes": list(self.notes), "ok": self.ok}


_REPS: dict = {}


def _rep(lid, p):
    key = (lid, p)
    if key not in _REPS:
        _REPS[key] = line_rep(lid, p)
    return _REPS[key]


_STREAMS: dict = {}


def _stream(Q):
    if Q not in _STREAMS:
        _STREAMS[Q] = full_stream(Q)
    return _STREAMS[Q]


def _against(which):
    if which in (None, "nonzero"):
        return list(NONZERO_LINES)
    if which == "all":
        return list(range(1, 31))
    return sorted(int(x) for x in which)


def stated_counts(line_id: int, p: int):
    Q = 2 ** p
    if line_id == 24:
        rows = STATED_24_P3 if p == 3 else STATED_24_GENERIC
    else:
        rows = STATED.get(line_id, [])
    out = []
    for lines, c in rows:
        v = c if isinstance(c, int) else c(Q)
        out.append((lines, int(v) if Fraction(v).denominator == 1 else v))
    return out


def census(line_id: int, p: int = 3, against="nonzero", check_normalizer: bool | None = None,
           threads: int | None = None) -> CensusReport:
    """Overgroup census of line ``line_id`` at q = 2^p."""
    if not 1 <= line_id <= 31:
        raise ValueError("line_id must be in 1..31")
    if p not in CENSUS_P:
        if p == 2 or p < 2:
            raise InvalidP("p must be an odd prime")
        raise TooLarge(f"census is limited to p in {CENSUS_P}")
    Q = 2 ** p
    lines = {ln.line_id: ln for ln in table4(p, symbolic=True)}
    mu = {lid: ln.mu.eval_int(Q) for lid, ln in lines.items()}
    H = _rep(line_id, p)
    stream = _stream(Q)
    requested = [k for k in _against(against) if k != line_id]
    # a line whose order is not a proper multiple of |H| has no conjugate above H
    cands = [k for k in requested if lines[k].order.eval_int(Q) > H.order
             and lines[k].order.eval_int(Q) % H.order == 0]
    targets = [_rep(k, p) for k in cands]
    counts = {k: 0 for k in requested}
    if targets:
        # at most 64 targets per pass
        for i in range(0, len(targets), 32):
            ts = transporter_counts(stream, H.generators, targets[i:i + 32], threads=threads)
            for k, t in zip(cands[i:i + 32], ts):
                n_k = lines[k].normalizer_order.eval_int(Q)
                c, r = divmod(t, n_k)
                if r:
                    raise NonIntegralCount(f"line {line_id} in line {k}: {t} / {n_k}")
                counts[k] = c
    residual = mu[line_id] + 1 + sum(c * mu[k] for k, c in counts.items())
    rep = CensusReport(line_id, p, mu[line_id], counts, recursion_residual=residual)
    for ls, st in stated_counts(line_id, p):
        if all(k in counts for k in ls):
            em = sum(counts[k] for k in ls)
            rep.stated.append((ls, st, em, st == em))
        else:
            rep.stated.append((ls, st, None, None))
    if line_id in NOTES:
        rep.notes.append(NOTES[line_id])
    bad = [(ls, st, em) for ls, st, em, ag in rep.stated if ag is False]
    for ls, st, em in bad:
        rep.notes.append(f"lines {list(ls)}: printed {st}, empirical {em}")
    if rep.stated and all(ag is not None for *_, ag in rep.stated):
        if bad:
            rep.notes.append(f"resolution: printed counts differ from the scan; the empirical "
                             f"counts close the recursion with residual {residual}")
        else:
            rep.notes.append(f"resolution: every printed count matches the scan; residual {residual}")
    if check_normalizer is None:
        check_normalizer = line_id == 24
    if check_normalizer:
        N = normalizer(stream, H, threads=threads)
        rep.normalizer_order = N.order
        rep.normalizer_order_expected = lines[line_id].normalizer_order.eval_int(Q)
    return rep


def census_all(p: int = 3, lines=None, against="nonzero", progress=None) -> list:
    out = []
    for lid in (lines or range(1, 32)):
        r = census(lid, p, against)
        if progress:
            progress(r)
        out.append(r)
    return out
