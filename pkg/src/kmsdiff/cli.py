"""Command line interface: ``kms <subcommand> ...``.

Exit status: 0 success, 1 invalid input, 2 a checked identity or estimate
failed, 3 usage error.  Errors are written to stderr as JSON.
"""
from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from . import errors as E
from .boundary import enumerate_boundary_graphs
from .covers import enumerate_covers, validate_cover
from .estimates import (goodness_violation, poincare_radial_integral, tube_integral,
                        tube_integral_estimates)
from .graphs import validate_enhanced_graph
from .io import dumps, export, graph_to_json, parse_cover, parse_graph, parse_model, parse_signature
from .metric import counterexample_model, curvature_blocks
from .prongs import slrt_parametrization_check, twist_report
from .residues import check_dimension_identity, pper_coordinate_shape
from .stratum import cover_signature, stratum_dimension


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="kms", description="Boundary combinatorics of strata of k-differentials.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, graph=True):
        sp.add_argument("--stratum", help='signature JSON, e.g. \'{"k":2,"g":2,"mu":[2,2]}\'')
        if graph:
            sp.add_argument("--graph", help="graph JSON (inline, path or @path)")
            sp.add_argument("--cover", help="cover JSON (inline, path or @path)")
            sp.add_argument("--mode", default=None,
                            help="two_level | one_horizontal | all_up_to(LEVELS,EDGES)")
            sp.add_argument("--max-levels", type=int, default=None)
            sp.add_argument("--max-edges", type=int, default=None)
        sp.add_argument("--format", default="json", choices=["json", "dot", "text"])
        sp.add_argument("--jobs", type=int, default=1)

    for name in ("validate", "boundary", "covers", "twist", "dims"):
        common(sub.add_parser(name))
    m = sub.add_parser("metric")
    common(m, graph=False)
    m.add_argument("check", nargs="?", choices=["poincare", "goodness", "tube", "blocks"])
    m.add_argument("--check", dest="check_opt", choices=["poincare", "goodness", "tube", "blocks"])
    m.add_argument("--eps", type=float, default=0.5)
    m.add_argument("--delta", type=float, default=None, help="tube parameter delta")
    m.add_argument("--log-delta", type=float, default=None, help="log of delta (for tiny delta)")
    m.add_argument("--cutoff", type=float, default=0.0)
    m.add_argument("--n", type=int, nargs="*", default=[100, 1000, 10000])
    m.add_argument("--model", default=None, help="metric model JSON")
    m.add_argument("--t", type=float, nargs="*", default=None)
    m.add_argument("--x", type=float, nargs="*", default=None)
    return p


def _emit(out, obj, fmt):
    out.write(export(obj, fmt).decode())


def _graphs(args, sig):
    if args.graph:
        G = parse_graph(args.graph, sig.k if sig else None)
        if sig is not None:
            validate_enhanced_graph(G, sig)
        return [G]
    if sig is None:
        raise UsageError("--stratum is required")
    return enumerate_boundary_graphs(sig, args.mode or "two_level", args.max_levels, args.max_edges)


def _covers(args, sig):
    if args.cover:
        C = parse_cover(args.cover, sig.k if sig else None)
        validate_cover(C, raise_on_error=True)
        yield C
        return
    for G in _graphs(args, sig):
        yield from enumerate_covers(G)


def _dims_line(C):
    rep = check_dimension_identity(C, raise_on_failure=False)
    if rep["pass"]:
        rep["pper"] = pper_coordinate_shape(C)
    rep["cover"] = {"d": list(C.d), "shifts": list(C.shifts)}
    return rep


def run(args, out):
    sig = parse_signature(args.stratum) if args.stratum else None
    cmd = args.command
    if cmd == "validate":
        if args.cover:
            C = parse_cover(args.cover, sig.k if sig else None)
            _emit(out, validate_cover(C, raise_on_error=True), args.format)
        elif args.graph:
            if sig is None:
                raise UsageError("--stratum is required to validate a graph")
            G = validate_enhanced_graph(parse_graph(args.graph, sig.k), sig)
            _emit(out, G if args.format == "dot" else {"valid": True, "graph": graph_to_json(G)}, args.format)
        elif sig is not None:
            report = {"valid": True, "signature": sig.to_json(), "finite_area": sig.finite_area,
                      "dimension": stratum_dimension(sig)}
            try:
                report["cover"] = cover_signature(sig).to_json()
            except E.NonIntegralGenus as exc:
                report["cover"] = exc.to_json()
            _emit(out, report, args.format)
        else:
            raise UsageError("nothing to validate")
        return 0
    if cmd == "boundary":
        for G in _graphs(args, sig):
            _emit(out, G, args.format)
        return 0
    if cmd == "covers":
        for C in _covers(args, sig):
            _emit(out, C, args.format)
        return 0
    if cmd == "twist":
        for C in _covers(args, sig):
            rep = twist_report(C)
            rep["slrt"] = slrt_parametrization_check(C)["pass"]
            rep["cover"] = {"d": list(C.d), "shifts": list(C.shifts)}
            _emit(out, rep, args.format if args.format != "dot" else "json")
        return 0
    if cmd == "dims":
        covers = list(_covers(args, sig))
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                reports = list(ex.map(_dims_line, covers))
        else:
            reports = [_dims_line(C) for C in covers]
        failed = 0
        for rep in reports:
            failed += not rep["pass"]
            _emit(out, rep, args.format if args.format != "dot" else "json")
        _emit(out, {"summary": {"covers": len(reports), "failed": failed}}, "json")
        if failed:
            raise E.IdentityViolation(f"{failed} of {len(reports)} covers fail the dimension identity")
        return 0
    if cmd == "metric":
        return _metric(args, out)
    raise UsageError("a subcommand is required")


def _metric(args, out):
    check = args.check_opt or args.check
    if check is None:
        raise UsageError("metric needs a check: poincare, goodness, tube or blocks")
    model = parse_model(args.model) if args.model else counterexample_model()
    if check == "poincare":
        rep = poincare_radial_integral(args.eps, args.cutoff)
        _emit(out, rep.to_json(), "json")
    elif check == "goodness":
        rows = goodness_violation(model, args.n)
        increasing = all(b["ratio"] > a["ratio"] for a, b in zip(rows, rows[1:]))
        _emit(out, {"rows": rows, "increasing": increasing}, "json")
        if not increasing:
            raise E.NonConvergent("ratios are not increasing")
    elif check == "tube":
        if args.delta is not None or args.log_delta is not None:
            ld = args.log_delta if args.log_delta is not None else math.log(args.delta)
            _emit(out, tube_integral(model, args.eps, ld).to_json(), "json")
        else:
            _emit(out, tube_integral_estimates(model, args.eps), "json")
    else:
        t = args.t or [0.5] * model.L
        x = args.x or [0.5] * model.n_x
        blocks = curvature_blocks(model, t, x)
        _emit(out, {k: v for k, v in blocks.items()}, "json")
    return 0


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        return run(args, out)
    except UsageError as exc:
        err.write(dumps({"error": "UsageError", "message": str(exc)}) + "\n")
        return 3
    except E.CheckFailure as exc:
        err.write(dumps(exc.to_json()) + "\n")
        return 2
    except E.ValidationError as exc:
        err.write(dumps(exc.to_json()) + "\n")
        return 1
    except ValueError as exc:
        err.write(dumps({"error": "ValidationError", "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
