"""Command-line front end.

Subcommands: complex (enumerate a cell or stratum poset and validate its
counts), obstruction (run the map-existence decision), equipart (equal-area /
equal-perimeter decompositions of a convex polygon), label (classify a point
configuration).  Exit codes: 0 success, 1 failed internal check or
non-convergence, 2 malformed input or enumeration budget exceeded.  Outputs
are written only after all computation succeeds, so a nonzero exit never
leaves a partial file, and identical invocations produce identical bytes.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import factorial
from pathlib import Path

from . import jsonio
from .equalize import equalize_perimeters
from .geometry import ConvexPolygon, polygon_area
from .labels import fox_neuwirth_label
from .obstruction import (expected_incidence_row, facet_ridge_class_counts,
                          obstruction_report, verify_coboundary_on_complex)
from .poset import (BudgetExceededError, KIND_COMPLEMENT, KIND_STRATIFICATION,
                    enumerate_cells, poset_to_json)
from .powerdiagram import Sites, perimeter_spread, power_diagram
from .svgout import render_power_diagram_svg
from .weights import WeightSolveError, solve_equal_measure_weights

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_INPUT = 2


def _fail(msg: str, code: int) -> int:
    print("error: %s" % msg, file=sys.stderr)
    return code


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_complex(args) -> int:
    try:
        poset = enumerate_cells(args.d, args.n, args.kind, budget=args.budget)
    except BudgetExceededError as e:
        return _fail(str(e), EXIT_INPUT)
    except ValueError as e:
        return _fail(str(e), EXIT_INPUT)
    fv = poset.f_vector()
    chi = poset.euler_characteristic()
    nfac = factorial(args.n)
    ok = True
    if args.kind == KIND_COMPLEMENT:
        top = (args.d - 1) * (args.n - 1)
        ok &= fv[0] == nfac
        ok &= fv[top] == nfac
        if top >= 1:
            ok &= fv[top - 1] == (args.n - 1) * nfac
        ok &= sum(fv) == nfac * args.d ** (args.n - 1)
        ok &= chi == (nfac if args.d % 2 == 1 else 0)
    else:
        ok &= fv[0] == 1
        ok &= fv[-1] == nfac
    print("kind=%s d=%d n=%d" % (args.kind, args.d, args.n))
    print("elements=%d covers=%d" % (len(poset.elements), len(poset.covers)))
    print("f_vector=%s" % (fv,))
    print("euler_characteristic=%d" % chi)
    print("checks=%s" % ("ok" if ok else "FAILED"))
    if args.output is not None or args.format == "csv":
        if args.format == "json":
            text = poset_to_json(poset)
        else:
            rows = ["index,dim,label"]
            for i, (lab, dim) in enumerate(zip(poset.elements, poset.dims)):
                rows.append("%d,%d,%s" % (i, dim, lab.to_string()))
            text = "\n".join(rows) + "\n"
        _emit(text, args.output)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_obstruction(args) -> int:
    try:
        rep = obstruction_report(args.d, args.n)
    except ValueError as e:
        return _fail(str(e), EXIT_INPUT)
    print("n=%d d=%d gcd=%d group=%s map_exists=%s"
          % (rep.n, rep.d, rep.gcd, rep.group, rep.map_exists))
    if rep.witness is not None:
        print("witness=%s" % (rep.witness.values,))
    verified = True
    if args.verify:
        try:
            counts = facet_ridge_class_counts(args.d, args.n, budget=args.budget)
            want = expected_incidence_row(args.n)
            if any(tuple(row) != want for row in counts):
                print("incidence check FAILED", file=sys.stderr)
                verified = False
            if rep.witness is not None and verified:
                vals = verify_coboundary_on_complex(args.d, args.n, rep.witness,
                                                    budget=args.budget)
                if any(v != 1 for v in vals.values()):
                    print("coboundary check FAILED", file=sys.stderr)
                    verified = False
        except (BudgetExceededError, ValueError) as e:
            return _fail(str(e), EXIT_INPUT)
        print("verify=%s" % ("ok" if verified else "FAILED"))
    out = {
        "d": rep.d,
        "n": rep.n,
        "gcd": rep.gcd,
        "prime_power": ({"p": rep.prime_power[0], "k": rep.prime_power[1]}
                        if rep.prime_power else None),
        "group": rep.group,
        "map_exists": rep.map_exists,
        "witness": list(rep.witness.values) if rep.witness else None,
    }
    if args.output is not None:
        _emit(jsonio.dumps(out), args.output)
    return EXIT_OK if verified else EXIT_CHECK


def _load_polygon(data) -> ConvexPolygon:
    verts = data.get("polygon")
    if (not isinstance(verts, list) or len(verts) < 3
            or any(not isinstance(v, list) or len(v) != 2 for v in verts)):
        raise ValueError("polygon must be a list of [x, y] pairs")
    pts = [(float(x), float(y)) for x, y in verts]
    if polygon_area(pts) < 0:
        pts.reverse()
    return ConvexPolygon(tuple(pts))


def _diagram_payload(diag, spread, iterations, converged) -> dict:
    return {
        "sites": [list(p) for p in diag.sites.points],
        "weights": list(diag.weights),
        "cells": [([list(v) for v in c.vertices] if c is not None else None)
                  for c in diag.cells],
        "areas": list(diag.areas),
        "perimeters": list(diag.perimeters),
        "spread": spread,
        "iterations": iterations,
        "converged": converged,
    }


def _payload_csv(payload) -> str:
    rows = ["index,site_x,site_y,weight,area,perimeter"]
    for i, site in enumerate(payload["sites"]):
        rows.append(",".join([str(i)] + [jsonio.format_real(v) for v in (
            site[0], site[1], payload["weights"][i],
            payload["areas"][i], payload["perimeters"][i])]))
    return "\n".join(rows) + "\n"


def cmd_equipart(args) -> int:
    try:
        data = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as e:
        return _fail("cannot read input: %s" % e, EXIT_INPUT)
    if not isinstance(data, dict):
        return _fail("input must be a JSON object", EXIT_INPUT)
    mode = data.get("mode")
    if mode not in ("weights", "equalize"):
        return _fail("mode must be 'weights' or 'equalize'", EXIT_INPUT)
    try:
        polygon = _load_polygon(data)
    except (ValueError, TypeError) as e:
        return _fail("bad polygon: %s" % e, EXIT_INPUT)
    seed = args.seed if args.seed is not None else int(data.get("seed", 0))

    if mode == "weights":
        tol = args.tol if args.tol is not None else float(data.get("tol", 1e-10))
        raw = data.get("sites")
        if not isinstance(raw, list) or not raw:
            return _fail("mode 'weights' needs sites", EXIT_INPUT)
        try:
            sites = Sites(tuple((float(x), float(y)) for x, y in raw))
        except (ValueError, TypeError) as e:
            return _fail("bad sites: %s" % e, EXIT_INPUT)
        converged = True
        try:
            wts, stats = solve_equal_measure_weights(polygon, sites, tol=tol,
                                                     return_stats=True)
            wvals = wts.values
            iters = stats["iterations"]
        except WeightSolveError as e:
            converged = False
            wvals = e.weights
            iters = e.iterations
        diag = power_diagram(polygon, sites, wvals)
        try:
            spread = perimeter_spread(diag)
        except ValueError:
            spread = None
        payload = _diagram_payload(diag, spread, iters, converged)
    else:
        tol = args.tol if args.tol is not None else float(data.get("tol", 1e-6))
        nparts = data.get("n")
        if not isinstance(nparts, int) or nparts < 2:
            return _fail("mode 'equalize' needs integer n >= 2", EXIT_INPUT)
        result = equalize_perimeters(polygon, nparts, tol=tol, seed=seed)
        converged = result.converged
        payload = _diagram_payload(result.diagram, result.spread,
                                   result.evaluations, result.converged)
        diag = result.diagram

    text = jsonio.dumps(payload) if args.format == "json" else _payload_csv(payload)
    _emit(text, args.output)
    if args.svg is not None:
        Path(args.svg).write_text(render_power_diagram_svg(diag))
    return EXIT_OK if converged else EXIT_CHECK


def cmd_label(args) -> int:
    try:
        data = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as e:
        return _fail("cannot read input: %s" % e, EXIT_INPUT)
    pts = data.get("points") if isinstance(data, dict) else None
    if (not isinstance(pts, list) or not pts
            or any(not isinstance(p, list) or not p for p in pts)):
        return _fail("input needs a nonempty 'points' list of coordinate lists",
                     EXIT_INPUT)
    try:
        cols = tuple(tuple(float(v) for v in p) for p in pts)
        lab = fox_neuwirth_label(cols)
    except (ValueError, TypeError) as e:
        return _fail("bad points: %s" % e, EXIT_INPUT)
    print(lab.to_string())
    if args.output is not None:
        out = {
            "label": lab.to_string(),
            "sigma": list(lab.sigma),
            "seps": list(lab.seps),
            "d": lab.d,
            "n": lab.n,
        }
        _emit(jsonio.dumps(out), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equicell")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("complex", help="enumerate a poset and validate counts")
    pc.add_argument("--d", type=int, required=True)
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--kind", choices=(KIND_COMPLEMENT, KIND_STRATIFICATION),
                    default=KIND_COMPLEMENT)
    pc.add_argument("--format", choices=("json", "csv"), default="json")
    pc.add_argument("--budget", type=int, default=None,
                    help="label budget (or set EQUICELL_BUDGET)")
    pc.add_argument("--output", default=None)
    pc.set_defaults(func=cmd_complex)

    po = sub.add_parser("obstruction", help="run the map-existence decision")
    po.add_argument("--n", type=int, required=True)
    po.add_argument("--d", type=int, default=2)
    po.add_argument("--verify", action="store_true",
                    help="re-check incidences and the coboundary on the complex")
    po.add_argument("--budget", type=int, default=None)
    po.add_argument("--output", default=None)
    po.set_defaults(func=cmd_obstruction)

    pe = sub.add_parser("equipart", help="equal-area (and equal-perimeter) cells")
    pe.add_argument("--input", required=True)
    pe.add_argument("--output", default=None)
    pe.add_argument("--svg", default=None)
    pe.add_argument("--format", choices=("json", "csv"), default="json")
    pe.add_argument("--tol", type=float, default=None)
    pe.add_argument("--seed", type=int, default=None)
    pe.set_defaults(func=cmd_equipart)

    pl = sub.add_parser("label", help="classify a point configuration")
    pl.add_argument("--input", required=True)
    pl.add_argument("--output", default=None)
    pl.set_defaults(func=cmd_label)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
