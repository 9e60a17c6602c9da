"""Command-line front end.

Single-shot subcommands for batch use:

  build      construct a polynomial from a graph, matroid, builtin, or E_{r,n}
  check      scan P(c-y)^(-beta) for negative Taylor coefficients (exit 0/1/2)
  classify   recognizers for graphs; inertia/beta-set for quadratic forms
  bisect     bracket the smallest beta with no negative coefficient found
  verify     numerical checks of the explicit Laplace-transform identities
  psd        semigroup positive-definiteness sampling of det(A)^(-beta)
  rayleigh   exact C-Rayleigh inequality check at sample points
  hpp        numeric search for a zero in the right-half-plane product

Exit codes for `check`: 0 = no negative found up to N, 1 = negative witness,
2 = inconclusive or error.  Exact parameters are written p/q; floats are
rejected where exactness is required.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .cmengine import (beta_bisect, c_rayleigh_check, cm_scan, default_c_grid,
                       hpp_falsify, semigroup_psd_test)
from .graphs import Multigraph, has_no_k3_minor, is_series_parallel, spanning_tree_poly
from .laplace import (verify_E23, verify_E2n, verify_det_integral_m2,
                      verify_series_kernel)
from .matroids import RepMatroid, basis_poly, basis_poly_quat, builtin, elementary_symmetric
from .polyseries import MultiPoly, ShiftVector
from .quadform import QuadForm, e2n_quadform, quad_classify


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _write_out(payload, out: str | None):
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load_graph(path: str) -> Multigraph:
    text = Path(path).read_text()
    if path.endswith(".dot") or text.lstrip().startswith(("graph", "strict")):
        return jsonio.graph_from_dot(text)
    return jsonio.graph_from_json(json.loads(text))


def _load_poly(path: str) -> MultiPoly:
    return jsonio.poly_from_json(_load_json(path))


def _grid(spec: str, nvars: int, seed: int):
    if spec == "default":
        return default_c_grid(nvars, seed)
    if spec.startswith("file:"):
        data = _load_json(spec[5:])
        return [ShiftVector([jsonio.frac_from_json(v) for v in row]) for row in data]
    raise ValueError("--grid must be 'default' or 'file:PATH'")


# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    if args.graph:
        G = _load_graph(args.graph)
        P = spanning_tree_poly(G)
        payload = jsonio.poly_to_json(P, var_names=G.edge_ids())
    elif args.matroid:
        M = jsonio.matroid_from_json(_load_json(args.matroid))
        payload = jsonio.poly_to_json(basis_poly(M), var_names=M.ground)
    elif args.builtin:
        name = args.builtin
        obj = builtin(name, p=args.p) if name == "K_p" else builtin(name)
        if name == "E26_QUAT":
            P = basis_poly_quat(obj)
            payload = jsonio.poly_to_json(P, var_names=[f"g{i+1}" for i in range(P.nvars)])
        else:
            payload = jsonio.poly_to_json(basis_poly(obj), var_names=obj.ground)
    elif args.ern:
        r, n = args.ern
        P = elementary_symmetric(r, n)
        payload = jsonio.poly_to_json(P, var_names=[f"x{i+1}" for i in range(n)])
    else:
        raise ValueError("one of --graph/--matroid/--builtin/--ern is required")
    _write_out(payload, args.out)
    return 0


def cmd_check(args) -> int:
    P = _load_poly(args.poly)
    beta = jsonio.parse_rat(args.beta)
    grid = _grid(args.grid, P.nvars, args.seed)
    rep = cm_scan(P, beta, grid, args.N, early_exit=not args.no_early_exit,
                  seed=args.seed, deadline_s=args.deadline)
    _write_out(jsonio.report_to_json(rep), args.out)
    if rep.verdict == "negative_found":
        return 1
    if rep.verdict == "nonnegative_up_to":
        return 0
    return 2


def cmd_classify(args) -> int:
    if args.graph:
        G = _load_graph(args.graph)
        payload = {"input": args.graph,
                   "no_K3_minor": has_no_k3_minor(G),
                   "series_parallel": is_series_parallel(G)}
    elif args.quadform:
        M = jsonio.matrix_from_json(_load_json(args.quadform))
        Q = QuadForm(M)
        payload = {"input": args.quadform,
                   "inertia": list(Q.inertia),
                   "beta_set": jsonio.report_to_json(quad_classify(Q))}
    elif args.ern_form:
        Q = e2n_quadform(args.ern_form)
        payload = {"input": f"E_2,{args.ern_form} quadratic form",
                   "inertia": list(Q.inertia),
                   "beta_set": jsonio.report_to_json(quad_classify(Q))}
    else:
        raise ValueError("one of --graph/--quadform/--ern-form is required")
    _write_out(payload, args.out)
    return 0


def cmd_bisect(args) -> int:
    P = _load_poly(args.poly)
    grid = _grid(args.grid, P.nvars, args.seed)
    est = beta_bisect(P, (jsonio.parse_rat(args.lo), jsonio.parse_rat(args.hi)),
                      args.N, grid, tol=jsonio.parse_rat(args.tol),
                      seed=args.seed, tag=args.tag)
    _write_out(jsonio.report_to_json(est), args.out)
    return 0


def _csv_row(chk) -> str:
    p = chk.params
    fields = [p.get("formula", ""), str(p.get("beta", "")),
              json.dumps(p.get("x", p.get("A", p.get("u", "")))),
              f"{chk.lhs:.12g}", f"{chk.rhs:.12g}", f"{chk.rel_err:.3e}",
              chk.method, str(chk.samples_or_cells), f"{chk.error_estimate:.3e}"]
    return ",".join(fields)


def cmd_verify(args) -> int:
    xs = [float(v) for v in args.x.split(",")] if args.x else None
    if args.formula == "E23":
        chk = verify_E23(args.beta, xs, tol=args.tol or 1e-6)
    elif args.formula == "E2n":
        chk = verify_E2n(args.n, args.beta, xs, tol=args.tol,
                         nsamples=args.samples, seed=args.seed)
    elif args.formula == "series_kernel":
        chk = verify_series_kernel(args.beta, args.lam, args.u, args.v,
                                   tol=args.tol or 1e-6)
    elif args.formula == "det_m2":
        if args.A == "I":
            A = [[1, 0], [0, 1]]
        else:
            A = json.loads(args.A)
        chk = verify_det_integral_m2(args.beta, A, tol=args.tol or 1e-6)
    else:
        raise ValueError(f"unknown formula {args.formula!r}")
    if args.csv:
        header = "formula,beta,input,lhs,rhs,rel_err,method,cells,error_estimate"
        text = header + "\n" + _csv_row(chk)
        if args.out:
            Path(args.out).write_text(text + "\n")
        else:
            print(text)
    else:
        _write_out(jsonio.report_to_json(chk), args.out)
    return 0


def cmd_psd(args) -> int:
    rep = semigroup_psd_test(args.m, args.beta, args.k, seed=args.seed,
                             restarts=args.restarts)
    _write_out(jsonio.report_to_json(rep), args.out)
    return 0


def cmd_rayleigh(args) -> int:
    P = _load_poly(args.poly)
    beta = jsonio.parse_rat(args.beta)
    if args.points:
        pts = [[jsonio.frac_from_json(v) for v in row] for row in _load_json(args.points)]
    else:
        pts = [list(c) for c in default_c_grid(P.nvars, args.seed)]
    rep = c_rayleigh_check(P, beta, pts)
    _write_out(jsonio.report_to_json(rep), args.out)
    return 0 if rep.holds else 1


def cmd_hpp(args) -> int:
    P = _load_poly(args.poly)
    wit = hpp_falsify(P, attempts=args.attempts, seed=args.seed)
    payload = {"witness": jsonio.report_to_json(wit) if wit else None,
               "note": "no interior zero found (evidence only)" if wit is None
               else "zero inside the open right-half-plane product"}
    _write_out(payload, args.out)
    return 1 if wit else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cmpoly", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--threads", type=int, default=1,
                    help="max worker hint (library runs single-process)")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a polynomial")
    b.add_argument("--graph")
    b.add_argument("--matroid")
    b.add_argument("--builtin", choices=["K_p", "U24", "AG23", "E26_QUAT"])
    b.add_argument("--p", type=int, help="p for --builtin K_p")
    b.add_argument("--ern", nargs=2, type=int, metavar=("R", "N"))
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="scan for negative Taylor coefficients")
    c.add_argument("poly")
    c.add_argument("--beta", required=True, help="exact rational p/q")
    c.add_argument("--N", type=int, default=10)
    c.add_argument("--grid", default="default")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--no-early-exit", action="store_true")
    c.add_argument("--deadline", type=float, default=None, help="seconds")
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    cl = sub.add_parser("classify", help="recognizers / quadratic-form beta set")
    cl.add_argument("--graph")
    cl.add_argument("--quadform")
    cl.add_argument("--ern-form", type=int, metavar="N")
    cl.add_argument("--out")
    cl.set_defaults(func=cmd_classify)

    bs = sub.add_parser("bisect", help="beta-threshold bracketing")
    bs.add_argument("poly")
    bs.add_argument("--lo", required=True)
    bs.add_argument("--hi", required=True)
    bs.add_argument("--N", type=int, required=True)
    bs.add_argument("--tol", default="1/16")
    bs.add_argument("--grid", default="default")
    bs.add_argument("--seed", type=int, default=0)
    bs.add_argument("--tag")
    bs.add_argument("--out")
    bs.set_defaults(func=cmd_bisect)

    v = sub.add_parser("verify", help="Laplace-transform identity checks")
    v.add_argument("formula", choices=["E23", "E2n", "series_kernel", "det_m2"])
    v.add_argument("--beta", type=float, required=True)
    v.add_argument("--x", help="comma-separated point, e.g. 1,1,1")
    v.add_argument("--n", type=int, help="n for E2n")
    v.add_argument("--lam", type=float, help="lambda for series_kernel")
    v.add_argument("--u", type=float)
    v.add_argument("--v", type=float)
    v.add_argument("--A", help="2x2 matrix as JSON, or I")
    v.add_argument("--tol", type=float)
    v.add_argument("--samples", type=int, default=800_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--csv", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("psd", help="semigroup positive-definiteness sampling")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_psd)

    r = sub.add_parser("rayleigh", help="exact C-Rayleigh check")
    r.add_argument("poly")
    r.add_argument("--beta", required=True)
    r.add_argument("--points", help="JSON file with rows of rationals")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_rayleigh)

    h = sub.add_parser("hpp", help="half-plane-property falsifier")
    h.add_argument("poly")
    h.add_argument("--attempts", type=int, default=60)
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--out")
    h.set_defaults(func=cmd_hpp)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
