"""Command-line interface: ``tropmle <command> --input problem.json [--json]``.

Exit codes: 0 success, 2 parse error, 3 invalid data, 4 incomplete (no
certifying triangulation), 1 anything else.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import io
from .affine import check_data_vector, contains_point, pluecker, tvec, vertex
from .critical import NoCertificate, solve, solve_by_triangulation, solve_curve, uniform_constant
from .errors import InvalidData, ParseError, TropicalMLEError
from .exact import format_rat
from .matroid import ModelMatrix
from .subdivision import maximal_cells, regular_triangulation, refines
from .tips import ScalingModel, reparametrize, tips_run

EXIT_CODES = {"parse": 2, "invalid-data": 3, "incomplete": 4}


def _need(problem, name):
    value = getattr(problem, name)
    if value is None:
        raise InvalidData(f"this command needs '{name}' in the problem file")
    return value


def _fmt_vec(v):
    return "(" + ", ".join(format_rat(x) for x in v) + ")"


def _fmt_set(s):
    return "{" + ",".join(str(i + 1) for i in s) + "}"


# each command returns (json payload, human-readable lines)


def cmd_bases(problem, args):
    model = ModelMatrix(problem.A)
    bases = [{"tau": io.subset_out(t), "vol": model.vol(t)} for t in model.matroid.bases]
    payload = {"n": model.n, "k": model.k, "count": len(bases),
               "volume": model.volume, "bases": bases}
    lines = [f"{len(bases)} bases of M(A), vol(Q_A) = {model.volume}"]
    lines += [f"  {_fmt_set(t)}  vol {model.vol(t)}" for t in model.matroid.bases]
    return payload, lines


def cmd_vertex(problem, args):
    model = ModelMatrix(problem.A)
    w = tvec(_need(problem, "w"))
    cone = vertex(model, w, _need(problem, "tau"))
    payload = {"tau": io.subset_out(cone.tau), "apex": io.vec_out(cone.apex),
               "free_directions": io.subset_out(cone.free_directions)}
    lines = [f"w^({_fmt_set(cone.tau)}) = {_fmt_vec(cone.apex)}",
             f"cone: apex + pos(e_i : i in {_fmt_set(cone.free_directions)})"]
    return payload, lines


def cmd_plucker(problem, args):
    model = ModelMatrix(problem.A)
    pi = pluecker(model, _need(problem, "w"))
    payload = {"ground_size": model.n + 1,
               "values": [{"gamma": io.subset_out(g), "pi": format_rat(v)} for g, v in pi.items()]}
    lines = [f"{len(pi)} bases of the free coextension (element {model.n + 1} homogenizes)"]
    lines += [f"  {_fmt_set(g)}  {format_rat(v)}" for g, v in pi.items()]
    return payload, lines


def cmd_membership(problem, args):
    model = ModelMatrix(problem.A)
    x = _need(problem, "x")
    member = contains_point(model, _need(problem, "w"), x)
    payload = {"x": io.vec_out(x), "member": member}
    return payload, [f"{_fmt_vec(x)} {'lies' if member else 'does not lie'} in L_(A,u)"]


def cmd_subdivision(problem, args):
    model = ModelMatrix(problem.A)
    omega = _need(problem, "omega")
    cells = maximal_cells(model, omega)
    payload = {"omega": io.vec_out(omega), "maximal_cells": [
        {"cell": io.subset_out(c), "functional": io.vec_out(psi)}
        for c, psi in zip(cells.maximal_cells, cells.functionals)]}
    lines = [f"{len(cells.maximal_cells)} maximal cells"]
    lines += [f"  {_fmt_set(c)}  psi = {_fmt_vec(psi)}"
              for c, psi in zip(cells.maximal_cells, cells.functionals)]
    return payload, lines


def cmd_triangulate(problem, args):
    model = ModelMatrix(problem.A)
    omega = problem.omega if problem.omega is not None else (0,) * model.n
    tri = regular_triangulation(model, omega)
    payload = {"omega": io.vec_out(tvec(omega)),
               "simplices": [{"tau": io.subset_out(t), "vol": model.vol(t)} for t in tri.simplices],
               "volume": tri.volume(model), "refines": refines(model, tri, omega)}
    lines = [f"{len(tri.simplices)} maximal simplices, total volume {tri.volume(model)}"]
    lines += [f"  {_fmt_set(t)}  vol {model.vol(t)}" for t in tri.simplices]
    return payload, lines


def _critical_lines(result):
    lines = [f"{len(result.points)} tropical critical point(s), total multiplicity "
             f"{result.total_multiplicity} ({result.method})"]
    for p in result.points:
        wit = " ".join(_fmt_set(t) for t in p.witnesses)
        lines.append(f"  {_fmt_vec(p.q)}  x{p.multiplicity}" + (f"  from {wit}" if wit else ""))
    return lines


def cmd_critical_points(problem, args):
    model = ModelMatrix(problem.A)
    w = check_data_vector(_need(problem, "w"), model.n)
    if problem.triangulation is not None:
        result = solve_by_triangulation(model, w, problem.triangulation, threads=args.threads)
        if result is None:
            from .critical import Attempt, Diagnostic, certify

            _, failures = certify(model, w, problem.triangulation)
            diag = Diagnostic((Attempt("given", (), problem.triangulation, failures),))
            raise NoCertificate("the given triangulation does not certify", diag)
    else:
        result = solve(model, w, max_triangulations=args.max_triangulations,
                       seed=args.seed, threads=args.threads)
    return io.critical_points_out(result, model, w), _critical_lines(result)


def cmd_curve(problem, args):
    model = ModelMatrix(problem.A)
    w = check_data_vector(_need(problem, "w"), model.n)
    result = solve_curve(model, w)
    return io.critical_points_out(result, model, w), _critical_lines(result)


def cmd_constant(problem, args):
    model = ModelMatrix(problem.A)
    if problem.O is not None:
        O = problem.O
    else:
        w = check_data_vector(_need(problem, "w"), model.n)
        O = tuple(i for i, x in enumerate(w) if x == 0)
    const = uniform_constant(model, O)
    value = format_rat(const.value) if const.value is not None else None
    payload = {
        "O": io.subset_out(O),
        "value": value,
        "triangulation": [io.subset_out(t) for t in const.triangulation.simplices],
        "terms": [{"tau": io.subset_out(t.tau), "i": t.i + 1, "plus": format_rat(t.plus),
                   "minus": format_rat(t.minus), "value": format_rat(t.value)}
                  for t in const.terms],
    }
    return payload, [f"c_(A,O) = {value} for O = {_fmt_set(O)}"]


def cmd_tips(problem, args):
    model = ModelMatrix(problem.A)
    w = tvec(_need(problem, "w"))
    settings = problem.tips
    if settings.reparametrization == "auto":
        S = reparametrize(model)
    else:
        S = ScalingModel.from_matrix(settings.reparametrization)
    max_iter = args.max_iter or settings.max_iter or 1000
    report = tips_run(S, w, settings.q0, max_iter, model=model)
    payload = {
        "scaling": {"A": [list(r) for r in S.A], "alpha": S.alpha},
        "status": report.status,
        "iterations": report.iterations,
        "limit": io.vec_out(report.limit) if report.limit is not None else None,
        "ratio": format_rat(report.ratio) if report.ratio is not None else None,
        "fixed_point": report.fixed_point,
        "critical": report.critical,
        "critical_source": report.critical_source,
        "trajectory": [io.vec_out(q) for q in report.trajectory],
    }
    lines = [f"tIPS with alpha = {S.alpha}: {report.status} after {report.iterations} step(s)"]
    if report.limit is not None:
        lines.append(f"  limit {_fmt_vec(report.limit)}"
                     + (f" (ratio {format_rat(report.ratio)})" if report.ratio is not None else ""))
    lines.append(f"  tropical critical point: {report.critical} (via {report.critical_source})")
    return payload, lines


COMMANDS = {
    "bases": cmd_bases,
    "vertex": cmd_vertex,
    "plucker": cmd_plucker,
    "membership": cmd_membership,
    "subdivision": cmd_subdivision,
    "triangulate": cmd_triangulate,
    "critical-points": cmd_critical_points,
    "curve": cmd_curve,
    "constant": cmd_constant,
    "tips": cmd_tips,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", required=True, metavar="PATH",
                        help="problem file (JSON); '-' reads stdin")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for alternative triangulation orders")
    common.add_argument("--max-iter", type=int, default=None, help="tIPS iteration cap")
    common.add_argument("--max-triangulations", type=int, default=32)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="tropmle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.input == "-":
            problem = io.loads_problem(sys.stdin.read())
        else:
            problem = io.load_problem(args.input)
        payload, lines = COMMANDS[args.command](problem, args)
    except NoCertificate as exc:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)
        if args.json:
            body = {"status": "incomplete", "complete": False,
                    "diagnostic": io.diagnostic_out(exc.diagnostic)}
            print(io.dumps(body))
        else:
            for a in exc.diagnostic.attempts:
                failed = " ".join(_fmt_set(f.tau) for f in a.failures)
                print(f"  tried {a.label} order {_fmt_set(a.order) if a.order else '-'}: "
                      f"failing simplices {failed}", file=sys.stderr)
        return EXIT_CODES["incomplete"]
    except (ParseError, InvalidData, TropicalMLEError) as exc:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.category, 1)
    if args.json:
        print(io.dumps(payload))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
