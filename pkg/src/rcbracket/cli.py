"""Command line front end: ``python -m rcbracket <subcommand> ...``.

Subcommands: ``singular-vector``, ``verify``, ``bracket``, ``branching``,
``scan``.  Exit codes: 0 pass, 1 verification failure, 2 usage error,
3 degenerate parameters.  The second copy of Fourier variables is called
``eta`` (the weight nu = lambda + mu - 2N keeps its name).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import platform
import sys
from typing import List, Optional

from . import __version__
from .algebra import LAM, MU, ParamPoly
from .bracket import OutputWeightError, apply_bracket, build_bracket, equivariance_sweep, infer_output_weight
from .operators import x_space
from .serialize import ParseError, fraction_str, parse_parameter, parse_poly, scalar_to_dict
from .singular import (
    DegenerateParameterError,
    branching_decomposition,
    clear_denominators,
    closed_form_coeff,
    coeff_diagonal,
    coeff_first_row,
    hyp_four_term_residual,
    in_exclusion_set,
    random_points,
    recurrence_checks,
    scan_point,
    solve_recurrence,
    special_value_scan,
    triangle,
    verify_annihilation,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, table=True):
    if table:
        p.add_argument("--n", type=int, required=True, help="dimension n >= 3")
        p.add_argument("--N", type=int, required=True, help="homogeneity N >= 0")
    p.add_argument("--lambda", dest="lam", default="symbolic", help="p/q or 'symbolic'")
    p.add_argument("--mu", dest="mu", default="symbolic", help="p/q or 'symbolic'")
    p.add_argument("--symbolic", action="store_true", help="keep lambda and mu symbolic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--allow-degenerate", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rcbracket", description="Exact singular vectors and Rankin-Cohen type brackets.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("singular-vector", help="emit the coefficient table, normalized and cleared")
    _common(p)
    p = sub.add_parser("verify", help="recurrence, annihilation and hypergeometric checks")
    _common(p)
    p.add_argument("--perturb", default=None, help=argparse.SUPPRESS)
    p = sub.add_parser("bracket", help="build B_N and optionally apply it to a pair of polynomials")
    _common(p)
    p.add_argument("--f", default=None, help="polynomial in x1..xn")
    p.add_argument("--g", default=None, help="polynomial in x1..xn")
    p.add_argument("--input", default=None, help='JSON file with keys "f" and "g"')
    p.add_argument("--check-degree", type=int, default=None, help="infer the output weight and sweep generators up to this degree")
    p = sub.add_parser("branching", help="weights of the diagonal branching")
    _common(p, table=False)
    p.add_argument("--jmax", type=int, required=True)
    p = sub.add_parser("scan", help="probe the special parameter values")
    _common(p)
    return parser


# -- helpers ------------------------------------------------------------------


def _point(args):
    if args.symbolic:
        return None
    lam, mu = parse_parameter(args.lam), parse_parameter(args.mu)
    if (lam is None) != (mu is None):
        raise UsageError("give both --lambda and --mu as rationals, or neither")
    return None if lam is None else (lam, mu)


def _check_table_args(args):
    if args.n < 3:
        raise UsageError("--n must be >= 3")
    if args.N < 0:
        raise UsageError("--N must be >= 0")


def _provenance(args, point) -> dict:
    return {
        "version": __version__,
        "python": platform.python_version(),
        "lambda": "symbolic" if point is None else fraction_str(point[0]),
        "mu": "symbolic" if point is None else fraction_str(point[1]),
    }


def _degenerate(args, point) -> Optional[str]:
    if point is None:
        return None
    for name, x in zip(("lambda", "mu"), point):
        if in_exclusion_set(x, args.n):
            return f"{name}={fraction_str(x)} lies in the exclusion set {{m - n/2 : m = 0, 1, 2, ...}}"
    return None


def _coefficients(table) -> list:
    out = []
    for (i, j) in triangle(table.N):
        d = {"i": i, "j": j}
        d.update(scalar_to_dict(table[(i, j)]))
        out.append(d)
    return out


def _cleared(table) -> dict:
    c = clear_denominators(table)
    return {
        "factor": str(c.factor),
        "coefficients": [{"i": i, "j": j, "poly": str(c.entries[(i, j)])} for (i, j) in triangle(table.N)],
    }


def _table_report(args, point, table, checks, status, extra=None) -> dict:
    report = {
        "n": args.n,
        "N": args.N,
        "normalization": "A00=1",
        "coefficients": _coefficients(table),
        "cleared": _cleared(table),
        "checks": checks,
        "seed": args.seed,
        "status": status,
    }
    if extra:
        report.update(extra)
    report["provenance"] = _provenance(args, point)
    return report


def _degenerate_report(args, point, message, extra=None) -> dict:
    report = {
        "n": getattr(args, "n", None),
        "N": getattr(args, "N", None),
        "normalization": "A00=1",
        "coefficients": [],
        "checks": {"recurrence": None, "annihilation": None, "hypergeometric": None},
        "seed": args.seed,
        "status": "degenerate",
        "error": message,
    }
    if extra:
        report.update(extra)
    report["provenance"] = _provenance(args, point)
    return report


def _hypergeometric(n: int, N: int, table, point, seed: int) -> dict:
    """Closed form, first row, diagonal and four-term identities against ``table``."""
    pts = [point] if point is not None else random_points(seed, 3, n)
    four = all(
        not hyp_four_term_residual(n, N, i, j, *pt) for pt in pts for i in range(1, N + 1) for j in range(i, N + 1)
    )
    if point is None:
        closed = all(closed_form_coeff(n, N, *ij) == table[ij] for ij in triangle(N))
        row = all(coeff_first_row(n, N, j) == table[(1, j)] for j in range(1, N + 1))
        diag = all(coeff_diagonal(n, N, i) == table[(i, i)] for i in range(N // 2 + 1))
    else:
        closed = all(closed_form_coeff(n, N, *ij, *point) == table[ij] for ij in triangle(N))
        row = all(coeff_first_row(n, N, j, *point) == table[(1, j)] for j in range(1, N + 1))
        diag = all(coeff_diagonal(n, N, i, *point) == table[(i, i)] for i in range(N // 2 + 1))
    return {"closed_form": closed, "first_row": row, "diagonal": diag, "four_term": four}


# -- subcommands --------------------------------------------------------------


def _solve(args, point):
    if point is None:
        return solve_recurrence(args.n, args.N)
    return solve_recurrence(args.n, args.N, *point)


def cmd_singular_vector(args):
    _check_table_args(args)
    point = _point(args)
    msg = _degenerate(args, point)
    if msg and not args.allow_degenerate:
        return _degenerate_report(args, point, msg), EXIT_DEGENERATE
    try:
        table = _solve(args, point)
    except DegenerateParameterError as exc:
        sp = scan_point(args.n, args.N, *point)
        return _degenerate_report(args, point, str(exc), {"scan": sp.as_dict()}), EXIT_DEGENERATE
    rec = recurrence_checks(table)["passed"]
    checks = {"recurrence": rec, "annihilation": None, "hypergeometric": None}
    status = "pass" if rec else "fail"
    return _table_report(args, point, table, checks, status), EXIT_PASS if rec else EXIT_FAIL


def cmd_verify(args):
    _check_table_args(args)
    point = _point(args)
    msg = _degenerate(args, point)
    if msg and not args.allow_degenerate:
        return _degenerate_report(args, point, msg), EXIT_DEGENERATE
    try:
        table = _solve(args, point)
    except DegenerateParameterError as exc:
        sp = scan_point(args.n, args.N, *point)
        return _degenerate_report(args, point, str(exc), {"scan": sp.as_dict()}), EXIT_DEGENERATE
    if args.perturb:
        try:
            i, j = (int(x) for x in args.perturb.split(","))
        except ValueError:
            raise UsageError("--perturb expects i,j") from None
        if (i, j) not in table.entries:
            raise UsageError(f"--perturb index ({i}, {j}) outside the triangle")
        table = table.perturbed((i, j), 1)
    rec = recurrence_checks(table)
    if point is None:
        ann = verify_annihilation(table)
    else:
        try:
            ann = verify_annihilation(table, "specialized", point)
        except DegenerateParameterError as exc:
            return _degenerate_report(args, point, str(exc)), EXIT_DEGENERATE
    hyp = _hypergeometric(args.n, args.N, table, point, args.seed)
    checks = {"recurrence": rec["passed"], "annihilation": ann.passed, "hypergeometric": all(hyp.values())}
    status = "pass" if all(checks.values()) else "fail"
    extra = {
        "details": {
            "recurrence": {
                "equations": rec["equations"],
                "rfe_nonzero": [list(x) for x in rec["rfe_nonzero"]],
                "system_nonzero": [[t, list(m)] for t, m in rec["system_nonzero"]],
            },
            "annihilation": ann.as_dict(),
            "hypergeometric": hyp,
        }
    }
    return _table_report(args, point, table, checks, status, extra), EXIT_PASS if status == "pass" else EXIT_FAIL


def _read_pair(args):
    f, g = args.f, args.g
    if args.input:
        try:
            with open(args.input) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
        f, g = data.get("f", f), data.get("g", g)
    if (f is None) != (g is None):
        raise UsageError("give both --f and --g")
    return f, g


def cmd_bracket(args):
    _check_table_args(args)
    point = _point(args)
    msg = _degenerate(args, point)
    if msg and not args.allow_degenerate:
        return _degenerate_report(args, point, msg), EXIT_DEGENERATE
    try:
        table = _solve(args, point)
    except DegenerateParameterError as exc:
        return _degenerate_report(args, point, str(exc)), EXIT_DEGENERATE
    B = build_bracket(table)
    extra = {"symbol": str(B.symbol)}
    f, g = _read_pair(args)
    if f is not None:
        sp = x_space(args.n)
        try:
            pf, pg = parse_poly(f, sp), parse_poly(g, sp)
        except ParseError as exc:
            raise UsageError(str(exc)) from None
        extra["f"], extra["g"] = str(pf), str(pg)
        extra["result"] = str(apply_bracket(B, pf, pg))
    status = "pass"
    checks = {"recurrence": recurrence_checks(table)["passed"], "annihilation": None, "hypergeometric": None}
    if args.check_degree is not None:
        if args.check_degree < args.N + 1:
            raise UsageError("--check-degree must be >= N + 1")
        try:
            w = infer_output_weight(B, args.check_degree)
            rep = equivariance_sweep(B, args.check_degree, w)
            extra["output_weight"] = str(w)
            extra["equivariance"] = {"checked": rep.checked, "failures": len(rep.failures)}
            ok = rep.passed
        except OutputWeightError as exc:
            extra["output_weight"] = None
            extra["equivariance"] = {"error": str(exc)}
            ok = False
        checks["equivariance"] = ok
        status = "pass" if ok else "fail"
    if not checks["recurrence"]:
        status = "fail"
    return _table_report(args, point, table, checks, status, extra), EXIT_PASS if status == "pass" else EXIT_FAIL


def cmd_branching(args):
    if args.jmax < 0:
        raise UsageError("--jmax must be >= 0")
    if args.symbolic:
        lam, mu = LAM, MU
    else:
        lv, mv = parse_parameter(args.lam), parse_parameter(args.mu)
        lam = LAM if lv is None else lv
        mu = MU if mv is None else mv
    rep = branching_decomposition(lam, mu, args.jmax)
    report = {
        "lambda": str(lam) if isinstance(lam, ParamPoly) else fraction_str(lam),
        "mu": str(mu) if isinstance(mu, ParamPoly) else fraction_str(mu),
        "jmax": args.jmax,
        "weights": [str(w) if isinstance(w, ParamPoly) else fraction_str(w) for w in rep.weights],
        "multiplicities": [m for _, m in rep.summands],
        "seed": args.seed,
        "status": "pass",
    }
    report["provenance"] = {"version": __version__, "python": platform.python_version()}
    return report, EXIT_PASS


def cmd_scan(args):
    _check_table_args(args)
    if args.N < 1:
        raise UsageError("scan needs --N >= 1")
    rep = special_value_scan(args.n, args.N, args.seed)
    report = rep.as_dict()
    report["flagged"] = [[fraction_str(p.lam), fraction_str(p.mu)] for p in rep.flagged()]
    report["status"] = "pass"
    report["provenance"] = {"version": __version__, "python": platform.python_version()}
    return report, EXIT_PASS


COMMANDS = {
    "singular-vector": cmd_singular_vector,
    "verify": cmd_verify,
    "bracket": cmd_bracket,
    "branching": cmd_branching,
    "scan": cmd_scan,
}


# -- rendering ----------------------------------------------------------------


def _csv(command: str, report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if command == "branching":
        w.writerow(["j", "weight", "multiplicity"])
        for j, (wt, m) in enumerate(zip(report["weights"], report["multiplicities"])):
            w.writerow([j, wt, m])
    elif command == "scan":
        w.writerow(["lambda", "mu", "varied", "dimension", "normalized_solvable", "flagged", "closed_form_defined"])
        for p in report["points"]:
            w.writerow([p["lambda"], p["mu"], p["varied"], p["dimension"], p["normalized_solvable"], p["flagged"], p["closed_form_defined"]])
    elif "cleared" in report:
        w.writerow(["i", "j", "cleared"])
        for c in report["cleared"]["coefficients"]:
            w.writerow([c["i"], c["j"], c["poly"]])
    else:
        w.writerow(["status", "error"])
        w.writerow([report.get("status"), report.get("error", "")])
    return buf.getvalue()


def _text(command: str, report: dict) -> str:
    lines = [f"{command}: {report.get('status')}"]
    if "error" in report:
        lines.append(f"  {report['error']}")
    if command == "branching":
        lines.append("  weights: " + ", ".join(report["weights"]))
    elif command == "scan":
        lines.append(f"  n={report['n']} N={report['N']} seed={report['seed']}")
        for p in report["points"]:
            mark = "FLAG" if p["flagged"] else "ok  "
            lines.append(
                f"  {mark} lambda={p['lambda']:>8} mu={p['mu']:>8} dim={p['dimension']} "
                f"normalized={p['normalized_solvable']} closed_form={p['closed_form_defined']}"
            )
    else:
        if report.get("coefficients"):
            lines.append(f"  n={report['n']} N={report['N']} (A_00 = 1)")
            for c in report["coefficients"]:
                lines.append(f"  A[{c['i']},{c['j']}] = {c['expr']}")
            lines.append(f"  cleared by {report['cleared']['factor']}:")
            for c in report["cleared"]["coefficients"]:
                lines.append(f"  P[{c['i']},{c['j']}] = {c['poly']}")
        for k, v in report.get("checks", {}).items():
            if v is not None:
                lines.append(f"  check {k}: {'pass' if v else 'FAIL'}")
        for k in ("symbol", "result", "output_weight"):
            if k in report:
                lines.append(f"  {k}: {report[k]}")
    return "\n".join(lines) + "\n"


def render(command: str, report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        return _csv(command, report)
    return _text(command, report)


def _join_values(argv: List[str]) -> List[str]:
    # argparse mistakes "-1/7" for an option; glue parameter values to their flag
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--lambda", "--mu"):
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def run_cli(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    argv = _join_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        report, code = COMMANDS[args.command](args)
    except (UsageError, ParseError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    text = render(args.command, report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
