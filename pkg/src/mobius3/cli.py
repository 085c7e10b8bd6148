"""Command line entry point.

Exit codes: 0 ok, 2 invalid input, 3 verification mismatch, 4 budget
exceeded.  Output goes to stdout, or to --out, which is only written when
the command succeeds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_BUDGET = 0, 2, 3, 4
BIG = 2 ** 53


class Mismatch(Exception):
    """A verification failed; carries the text to print."""

    def __init__(self, text):
        super().__init__("verification mismatch")
        self.text = text


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        kw.setdefault("allow_abbrev", False)
        super().__init__(*a, **kw)

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def jsonable(x):
    """Exact JSON: big integers become decimal strings, fractions "a/b"."""
    from fractions import Fraction
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int) or (hasattr(x, "dtype") and getattr(x, "ndim", 1) == 0):
        x = int(x)
        return str(x) if abs(x) > BIG else x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "tolist"):
        return jsonable(x.tolist())
    return str(x)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=1) + "\n"


def _csv(header, rows) -> str:
    out = [",".join(header)]
    out += [",".join(str(r[h]) for h in header) for r in rows]
    return "\n".join(out) + "\n"


# -- commands: each returns the text to emit ---------------------------------------

def cmd_field(a):
    from .gf import field_for
    F = field_for(a.q)
    return dumps({"q": F.q, "p": F.p, "k": F.k, "modulus": list(F.modulus),
                  "primitive": F.primitive})


def cmd_group(a):
    from .pgl.group import group
    G = group(a.q, a.kind)
    if a.order_only:
        return f"{G.order}\n"
    return dumps({"q": a.q, "kind": a.kind, "order": G.order, "materialized": G.materialized,
                  "generators": [list(g.mat) for g in G.generators]})


def cmd_classify(a):
    from .pgl.classify import classify
    from .pgl.group import projective
    ctx = projective(a.q)
    try:
        mat = tuple(int(x) for x in a.mat.split(","))
    except ValueError:
        raise ValueError("--mat takes 9 comma-separated integers") from None
    if len(mat) != 9 or not all(0 <= x < a.q for x in mat):
        raise ValueError(f"--mat takes 9 field indices in 0..{a.q - 1}")
    c = classify(ctx.elem(mat))
    return dumps({"tag": c.tag, "order": c.order, "fixed_points": c.fixed_points,
                  "fixed_lines": c.fixed_lines, "center": c.center, "axis": c.axis})


def cmd_linerep(a):
    from .pgl.constructors import line_rep
    from .psl3.table4 import line
    H = line_rep(a.line, a.p)
    out = {"line": a.line, "p": a.p, "q": 2 ** a.p,
           "generators": [list(g.mat) for g in H.generators], "order": H.order,
           "normalizer_order": line(a.line, a.p).normalizer_order.eval_int(2 ** a.p)}
    if a.scan:
        from .pgl.scan import full_stream, normalizer
        out["normalizer_order_scan"] = normalizer(full_stream(2 ** a.p), H).order
        if out["normalizer_order_scan"] != out["normalizer_order"]:
            raise Mismatch(dumps(out))
    return dumps(out)


def _model(a, fingerprints=True):
    from .lattice import Budget, lattice_of
    from .pgl.group import group
    budget = Budget(max_group_order=a.max_order)
    G = group(a.q, a.group)
    return lattice_of(G, q=a.q, kind=a.group, budget=budget, fingerprints=fingerprints)


def cmd_lattice(a):
    from .lattice import recursion_residuals, to_dict
    m = _model(a)
    if any(recursion_residuals(m)):
        raise Mismatch(dumps(to_dict(m)))
    return dumps(to_dict(m))


def cmd_moebius(a):
    from .lattice import to_csv, to_dict
    m = _model(a, fingerprints=a.format == "json")
    return to_csv(m) if a.format == "csv" else dumps(to_dict(m))


def cmd_hall(a):
    from .lattice import eulerian_phi, gen_probability
    if a.n < 0:
        raise ValueError("--n must be nonnegative")
    m = _model(a, fingerprints=False)
    return dumps({"q": a.q, "group": a.group, "n": a.n, "phi": eulerian_phi(m, a.n),
                  "probability": gen_probability(m, a.n)})


def cmd_table4(a):
    from .psl3.table4 import table4
    if a.symbolic:
        lines = table4(a.p, symbolic=True)
        rows = [{"line": ln.line_id, "name": ln.name, "order": str(ln.order),
                 "normalizer_order": str(ln.normalizer_order), "class_size": str(ln.class_size),
                 "mu": str(ln.mu)} for ln in lines]
    else:
        if a.p is None:
            raise ValueError("--p is required unless --symbolic")
        rows = table4(a.p)
    if a.format == "csv":
        return _csv(["line", "order", "normalizer_order", "class_size", "mu"], rows)
    return dumps(rows)


def cmd_check(a):
    import importlib
    t4 = importlib.import_module("mobius3.psl3.table4")
    if a.what == "global-sum":
        if a.p is not None and not a.symbolic:
            r = t4.global_sum_check("numeric", a.p)
            text = f"residual: {r}\n"
            bad = r != 0
        else:
            r = t4.global_sum_check("symbolic")
            text = f"residual: {r}\n"
            bad = not r.is_zero()
    elif a.what == "mann":
        if a.p is None:
            raise ValueError("--p is required")
        rep = t4.mann_check(a.p)
        text = dumps({"p": a.p, "max_ratio": rep["max_ratio"], "argmax_line": rep["argmax_line"],
                      "ok": rep["ok"]})
        bad = not rep["ok"]
    else:
        rep = t4.consistency_table1_vs_table4()
        integ = {p: t4.integrality_report(p) for p in (3, 5, 7)}
        rep["integrality"] = {str(p): v for p, v in integ.items()}
        rep["table2_rows"] = len(t4.table2_fixture())
        text = dumps(rep)
        bad = not rep["ok"] or any(integ.values()) or rep["table2_rows"] != 20
    if bad:
        raise Mismatch(text)
    return text


def cmd_census(a):
    from .psl3.census import census
    against = a.against
    if against not in ("all", "nonzero"):
        against = [int(x) for x in against.split(",")]
    rep = census(a.line, a.p, against, check_normalizer=a.normalizer or None)
    text = dumps(rep.to_dict())
    if not rep.ok:
        raise Mismatch(text)
    return text


def cmd_eulerchar(a):
    from .eulerchar import euler_report
    methods = ("closed", "brute", "chain") if a.method == "all" else (a.method,)
    rep = euler_report(a.q, a.r, methods)
    if a.format == "json":
        text = dumps(rep)
    else:
        text = "".join(f"{k}: {v}\n" for k, v in rep["values"].items())
    if not rep["agree"]:
        raise Mismatch(text)
    return text


def cmd_verify(a):
    from .verify import run
    rows = run(a.profile, progress=lambda r: print(
        f"{'PASS' if r['ok'] else 'FAIL'}  {r['check']:<14} {r['seconds']:>7}s  {r['detail']}",
        file=sys.stderr))
    text = dumps(rows) if a.format == "json" else "".join(
        f"{'PASS' if r['ok'] else 'FAIL'} {r['check']}: {r['detail']}\n" for r in rows)
    if not all(r["ok"] for r in rows):
        failed = ", ".join(r["check"] for r in rows if not r["ok"])
        raise Mismatch(text + f"failed: {failed}\n")
    return text


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    P = _Parser(prog="mobius3", description="Moebius functions of subgroup lattices of PSL(3,q) "
                "and Euler characteristics of r-subgroup posets of PGL(3,q).")
    P.add_argument("--threads", type=int, default=None, help="worker pool hint")
    sub = P.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, **kw):
        s = sub.add_parser(name, **kw)
        s.set_defaults(fn=fn)
        s.add_argument("--out", default=None, help="write output here instead of stdout")
        return s

    s = add("field", cmd_field, help="field parameters")
    s.add_argument("--q", type=int, required=True)
    s = add("group", cmd_group, help="PGL(3,q) or PSL(3,q) by closure")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--kind", choices=("pgl3", "psl3"), default="psl3")
    s.add_argument("--order-only", action="store_true")
    s = add("classify", cmd_classify, help="geometric type of a matrix")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--mat", required=True)
    s = add("linerep", cmd_linerep, help="representative of a line of the closed-form table")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--line", type=int, required=True)
    s.add_argument("--scan", action="store_true", help="also compute the normaliser by a full scan")
    for name, fn, h in (("lattice", cmd_lattice, "subgroup classes with mu"),
                        ("moebius", cmd_moebius, "mu per subgroup class"),
                        ("hall", cmd_hall, "Eulerian function and generation probability")):
        s = add(name, fn, help=h)
        s.add_argument("--q", type=int, required=True)
        s.add_argument("--group", choices=("psl3", "pgl3"), default="psl3")
        s.add_argument("--max-order", type=int, default=65000)
        if name == "moebius":
            s.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "hall":
            s.add_argument("--n", type=int, required=True)
    s = add("table4", cmd_table4, help="closed-form table at q = 2^p")
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--symbolic", action="store_true")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s = add("check", cmd_check, help="arithmetic checks on the closed forms")
    s.add_argument("what", choices=("global-sum", "mann", "tables"))
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--symbolic", action="store_true")
    s = add("census", cmd_census, help="overgroup census of one line at q = 2^p")
    s.add_argument("--p", type=int, default=3)
    s.add_argument("--line", type=int, required=True)
    s.add_argument("--against", default="nonzero", help="nonzero, all, or a comma list of lines")
    s.add_argument("--normalizer", action="store_true", help="also scan for the normaliser")
    s = add("eulerchar", cmd_eulerchar, help="Euler characteristic of the r-subgroup poset")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--method", choices=("closed", "brute", "chain", "all"), default="closed")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s = add("verify", cmd_verify, help="run a verification profile")
    s.add_argument("profile", choices=("quick", "full"))
    s.add_argument("--format", choices=("text", "json"), default="text")
    return P


def _exit_code(exc) -> int:
    from .lattice import BudgetExceeded
    from .pgl import constructors, group, scan
    budget = (BudgetExceeded, group.TooLarge, group.CapExceeded, constructors.TooLarge)
    if isinstance(exc, budget):
        return EXIT_BUDGET
    if isinstance(exc, (ValueError, ArithmeticError)):
        return EXIT_INVALID if not isinstance(exc, scan.NonIntegralCount) else EXIT_MISMATCH
    raise exc


def main(argv=None) -> int:
    P = build_parser()
    try:
        a = P.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if a.threads is not None:
        if a.threads < 1:
            print("mobius3: --threads must be positive", file=sys.stderr)
            return EXIT_INVALID
        # an explicit MOBIUS3_THREADS wins over the flag
        os.environ.setdefault("MOBIUS3_THREADS", str(a.threads))
    try:
        text = a.fn(a)
    except Mismatch as exc:
        sys.stdout.write(exc.text)
        print("mobius3: verification mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    except Exception as exc:
        code = _exit_code(exc)
        print(f"mobius3: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
