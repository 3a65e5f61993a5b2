"""Command-line front end.

Exit codes: 0 when every check passed, 1 when a residual or comparison
failed, 2 for usage errors (bad flags, unparsable expressions, parameters
outside the supported range).
"""

from __future__ import annotations

import argparse
import json
import platform
import sys

from . import __version__
from .config import get_config, reset_config, set_config

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GQ_CLOSED_FORM = "((1-s)*(1-t)*(1-s*t)+s*t)/((1-s)**2*(1-t)**2*(1-s*t))"


class UsageError(Exception):
    pass


class Result:
    """One line of a report."""

    def __init__(self, name, passed, detail=""):
        self.name, self.passed, self.detail = name, bool(passed), str(detail)

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _versions():
    out = {"qtrace": __version__, "python": platform.python_version()}
    try:
        import flint

        out["python-flint"] = flint.__version__
    except (ImportError, AttributeError):
        pass
    return out


def _multidegree(text):
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# ---------------------------------------------------------------------------
# commands; each returns (results, text body or None, table or None)


def cmd_nf(args):
    from .parser import parse_and_evaluate

    value = parse_and_evaluate(args.expr, args.N, args.m, 1 if args.classical else None)
    return [Result("nf", True, str(value))], str(value), None


def cmd_verify(args):
    from .matrixops import CATALOG, verify, verify_all

    qval = 1 if args.classical else None
    if args.name == "all":
        reports = [r for r in verify_all(qval)
                   if args.N in (None, r.params["N"]) and args.m in (None, r.params["m"])]
    else:
        if args.name not in CATALOG:
            raise UsageError(f"unknown identity {args.name!r}; known: all, {', '.join(CATALOG)}")
        reports = [verify(args.name, args.N, args.m, qval)]
    results = []
    lines = []
    for r in reports:
        label = f"{r.name} (N={r.params['N']}, m={r.params['m']})"
        detail = f"residual = {r.residual_rendered()}" + (f"; {r.detail}" if r.detail else "")
        results.append(Result(label, r.passed, detail))
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {label}  {detail}  [{r.wall_time * 1000:.1f} ms]")
    return results, "\n".join(lines), None


def cmd_hilbert(args):
    from .hilbert import hilbert_series, series_compare

    table = hilbert_series(args.N, args.m, args.which, args.cap)
    results = [Result("series", True, table.label)]
    text = table.to_text()
    if args.compare:
        ok = series_compare(table, args.compare)
        results.append(Result(f"matches {args.compare}", ok))
        text += f"\ncompare with {args.compare}: {'match' if ok else 'MISMATCH'}"
    return results, text, table


def cmd_span(args):
    from .hilbert import hilbert_series
    from .matrixops import qtrace_span_rank

    d = args.deg
    if len(d) != args.m:
        raise UsageError(f"--deg needs {args.m} components, got {len(d)}")
    got = qtrace_span_rank(args.N, args.m, d)
    expected = hilbert_series(args.N, args.m, "R", sum(d))[d]
    detail = f"rank {got['rank']} from {got['generators_used']} products; invariant dimension {expected}"
    return [Result(f"span {d}", got["rank"] == expected, detail)], detail, None


def _table_results(reports):
    return [Result(r.name, r.passed, f"residual = {r.residual_rendered()}" if not r.detail else r.detail)
            for r in reports]


def cmd_present(args):
    from . import trace22

    reports = trace22.verify_presentation() + [trace22.verify_xye()] + trace22.rq_commutativity()
    reports.append(trace22.noncentral_witness())
    results = _table_results(reports)
    indep = trace22.rq_independence(args.cap)
    results.append(Result("R_q(2,2) generators independent", all(n == r for n, r in indep.values()),
                          ", ".join(f"{d}:{r}/{n}" for d, (n, r) in indep.items())))
    ok, table = trace22.freeness_check(args.cap, detail=True)
    results.append(Result("free on I, X, Y, XY", ok,
                          ", ".join(f"{d}:{r}/{h}" for d, (n, r, h) in table.items())))
    text = trace22.format_table(reports) + "\n" + "\n".join(
        f"{r.name}: {'ok' if r.passed else 'FAIL'} ({r.detail})" for r in results[-2:])
    return results, text, None


def cmd_iso(args):
    from . import trace22

    reports = trace22.verify_iso()
    return _table_results(reports), trace22.format_table(reports), None


def cmd_gq(args):
    from .hilbert import gq_hilbert, series_compare

    table = gq_hilbert(args.cap)
    form = args.compare or GQ_CLOSED_FORM
    ok = series_compare(table, form)
    text = table.to_text() + f"\ncompare with {form}: {'match' if ok else 'MISMATCH'}"
    return [Result(f"matches {form}", ok)], text, table


def cmd_selftest(args):
    from .algebras import antipode_residuals, build_Aq, build_FqGL, gl_is_zero
    from .hilbert import multidegrees
    from .matrixops import verify_all
    from .rewrite import dimension_audit
    from .rmatrix import braid_sides, build_R, derived, hecke_residual

    results = []
    for N in (1, 2, 3):
        R = build_R(N)
        left, right = braid_sides(R)
        rt2 = derived(R, "t2")
        results.append(Result(f"R-matrix N={N}: Hecke", hecke_residual(R).is_zero()))
        results.append(Result(f"R-matrix N={N}: braid", left == right))
        results.append(Result(f"R-matrix N={N}: R~ inverts R^t2",
                              (derived(derived(R, "rtilde"), "t2") @ rt2).is_identity()))
    for N, m, cap in args.audits:
        rs = build_Aq(N, m).rs
        ok = True
        for d in multidegrees(m, cap):
            a = dimension_audit(rs, d, samples=args.samples)
            ok = ok and a["normal_count"] == a["expected_count"] and a["closure_ok"]
        results.append(Result(f"PBW audit N={N} m={m} degree<={cap}", ok))
    results.append(Result("antipode S(T)T = TS(T) = I", all(gl_is_zero(r[3], build_FqGL(2)) for r in antipode_residuals())))
    for qval, tag in ((None, ""), (1, " at q=1")):
        for r in verify_all(qval):
            results.append(Result(f"{r.name} (N={r.params['N']}, m={r.params['m']}){tag}", r.passed,
                                  f"residual = {r.residual_rendered()}"))
    text = "R for N=2:\n" + build_R(2).pretty() + "\n" + "\n".join(
        f"{'PASS' if r.passed else 'FAIL'}  {r.name}" for r in results)
    return results, text, None


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--degree-cap", type=int, default=None, help="overrides QTR_DEGREE_CAP")
    common.add_argument("--memory-budget", default=None, help="bytes with optional K/M/G suffix; overrides QTR_MEMORY_BUDGET")

    p = argparse.ArgumentParser(prog="qtrace", description="Exact computations in quantized trace rings.")
    p.add_argument("--version", action="version", version=f"qtrace {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    s.add_argument("--N", type=int, default=2)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--classical", action="store_true", help="evaluate at q = 1")
    s.add_argument("expr")
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("verify", parents=[common], help="run identity catalog entries")
    s.add_argument("--name", default="all")
    s.add_argument("--N", type=int, default=None)
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--classical", action="store_true", help="specialize q = 1")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("hilbert", parents=[common], help="Hilbert series table")
    s.add_argument("--N", type=int, default=2)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--which", choices=("A", "R", "T"), default="R")
    s.add_argument("--cap", type=int, default=4)
    s.add_argument("--compare", default=None, help="closed form in s, t, ... to compare against")
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("span", parents=[common], help="rank of q-trace products in one multidegree")
    s.add_argument("--N", type=int, default=2)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--deg", type=_multidegree, required=True, help="e.g. 1,1")
    s.set_defaults(func=cmd_span)

    s = sub.add_parser("present-t22", parents=[common], help="presentation of the 2x2 two-copy trace ring")
    s.add_argument("--cap", type=int, default=4)
    s.set_defaults(func=cmd_present)

    s = sub.add_parser("iso-t22", parents=[common], help="images of the relations in the classical ring")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("gq-hilbert", parents=[common], help="Hilbert series of the algebra generated by X, Y")
    s.add_argument("--cap", type=int, default=5)
    s.add_argument("--compare", default=None)
    s.set_defaults(func=cmd_gq)

    s = sub.add_parser("selftest", parents=[common], help="R-matrix checks, PBW audits and the full catalog")
    s.add_argument("--samples", type=int, default=50, help="random words per audited multidegree")
    s.set_defaults(func=cmd_selftest, audits=((2, 1, 4), (2, 2, 4), (3, 1, 3)))
    return p


def _emit(args, params, results, text, table, out):
    if args.format == "json":
        payload = {"command": args.command, "params": params,
                   "results": [r.to_dict() for r in results], "versions": _versions()}
        if table is not None:
            payload["table"] = json.loads(table.to_json())
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        if table is not None:
            out.write(table.to_csv())
        else:
            import csv

            w = csv.writer(out, lineterminator="\n")
            w.writerow(["name", "passed", "detail"])
            for r in results:
                w.writerow([r.name, r.passed, r.detail])
    else:
        if text:
            out.write(text + "\n")
        bad = [r for r in results if not r.passed]
        if bad:
            out.write(f"{len(bad)} of {len(results)} checks FAILED\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        set_config(args.degree_cap, args.memory_budget)
    except ValueError as e:
        print(f"qtrace: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(args).items()
              if k not in ("func", "command", "format", "audits")}
    params["degree_cap"] = get_config().degree_cap
    from .parser import ParseError

    try:
        results, text, table = args.func(args)
    except (UsageError, ParseError, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"qtrace: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        reset_config()
    _emit(args, params, results, text, table, out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
