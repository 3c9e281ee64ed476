"""Command-line front end.

Every command reads JSON files (see :mod:`rbsystems.io`), runs one library
operation and prints a JSON report on stdout.  Exit codes: 0 when the
property holds or the computation succeeded, 1 when it fails, 2 on bad
input, an unmet precondition or an unknown command.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import algebra as alg
from . import deformation as dfm_
from . import io
from . import mc
from . import operators as ops
from . import rbs
from .errors import InputError, PreconditionError
from .exactla import GF, QQ, parse_rational
from .search import search_rbs_mod_p


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on errors already; keep messages on stderr."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


# loaders: each returns parsed objects with dimensions checked against the algebra

def _algebra(path, field=QQ):
    A = io.parse_algebra(io.load_json(path), field, where=str(path))
    return A


def _rep(path, A, field=QQ):
    return io.parse_rep(io.load_json(path), A.dim, field, where=str(path))


def _pair(path, A, rep, field=QQ):
    return io.parse_pair(io.load_json(path), (A.dim, rep.dim_v), field, where=str(path))


def _endo(path, dim, field=QQ):
    return io.parse_endomap(io.load_json(path), dim, field, where=str(path))


def _cochain(path, A, rep):
    return io.parse_cochain(io.load_json(path), A.dim, rep.dim_v, where=str(path))


def _deformation(path, A, rep):
    return io.parse_deformation(io.load_json(path), (A.dim, rep.dim_v), where=str(path))


def _ambient(args, field=QQ):
    A = _algebra(args.algebra, field)
    rep = _rep(args.rep, A, field)
    return A, rep


def _result(r):
    """(holds, data) from a CheckResult."""
    data = {"witness": r.witness}
    data.update(r.data)
    return r.holds, data


# command handlers return (holds or None, data)

def cmd_check_leibniz(args):
    return _result(alg.check_leibniz(_algebra(args.algebra)))


def cmd_check_rep(args):
    A, rep = _ambient(args)
    holds, data = _result(alg.check_representation(A, rep))
    data["semidirect_compatible"] = alg.semidirect_compatible(A, rep) if holds else None
    return holds, data


def cmd_check_quadratic(args):
    A = _algebra(args.algebra)
    form = io.parse_form(io.load_json(args.form), A.dim, where=str(args.form))
    r = alg.quadratic_structure(A, form)
    return r.holds, {"reason": r.reason, "witness": r.witness, "iso": r.iso}


def cmd_check_dialgebra(args):
    D = io.parse_dialgebra(io.load_json(args.dialgebra), where=str(args.dialgebra))
    holds, data = _result(alg.check_dialgebra(D))
    data["leibniz"] = alg.dialgebra_to_leibniz(D) if holds else None
    return holds, data


def cmd_check_rbs(args):
    A, rep = _ambient(args)
    return _result(rbs.check_rbs(A, rep, _pair(args.pair, A, rep)))


def cmd_check_nijenhuis(args):
    A = _algebra(args.algebra)
    if args.endomap is not None:
        return _result(rbs.nijenhuis_check(A, _endo(args.endomap, A.dim)))
    if args.rep is None or args.pair is None:
        raise InputError("check-nijenhuis needs --endomap, or --rep and --pair")
    rep = _rep(args.rep, A)
    pair = _pair(args.pair, A, rep)
    B = alg.semidirect_sum(A, rep)
    N = rbs.build_nijenhuis(pair)
    holds, data = _result(rbs.nijenhuis_check(B, N))
    data["operator"] = N
    return holds, data


def cmd_check_1cocycle(args):
    A, rep = _ambient(args)
    return _result(rbs.check_1cocycle_system(A, rep, _endo(args.phi, A.dim), _endo(args.psi, A.dim)))


def cmd_transport(args):
    A = _algebra(args.algebra)
    form = io.parse_form(io.load_json(args.form), A.dim, where=str(args.form))
    dual = alg.dual_regular_rep(A)
    pair = _pair(args.pair, A, dual)
    out = rbs.quadratic_transport(A, form, pair)
    return None, {"pair": out,
                  "input_passes": rbs.check_rbs(A, dual, pair).holds,
                  "output_passes": rbs.check_rbs(A, alg.regular_rep(A), out).holds}


def cmd_weighted(args):
    A = _algebra(args.algebra)
    r = ops.weighted_to_systems(A, _endo(args.op, A.dim), parse_rational(args.weight))
    return r["is_weighted"], r


def cmd_twisted(args):
    A = _algebra(args.algebra)
    r = ops.twisted_to_system(A, _endo(args.sigma, A.dim), _endo(args.op, A.dim))
    return r["sigma_is_morphism"] and r["is_twisted_rb"], r


def cmd_diff_rb(args):
    A = _algebra(args.algebra)
    r = ops.differential_rb_check(A, _endo(args.op, A.dim), _endo(args.d, A.dim),
                                  parse_rational(args.weight))
    return r["dR1"] and r["dR2"] and r["dR3"], r


def _override(items):
    out = {}
    for item in items or ():
        n, sep, v = item.partition("=")
        if not sep:
            raise InputError(f"--override expects n=value, got {item!r}")
        try:
            out[int(n)] = parse_rational(v)
        except ValueError as exc:
            raise InputError(f"--override: bad index {n!r}") from exc
    return out


def cmd_witt(args):
    r = ops.witt_window_check(args.q, args.window, _override(args.override))
    return r["holds"], r


def cmd_dialgebra_rb(args):
    D = io.parse_dialgebra(io.load_json(args.dialgebra), where=str(args.dialgebra))
    r = ops.dialgebra_rb(D, _endo(args.op, D.dim))
    return r["is_dialgebra_rb"], r


def cmd_pseudotwistor(args):
    A = _algebra(args.algebra)
    R = _endo(args.op, A.dim)
    if args.s is not None:
        T, tau = ops.system_twistor(A, R, _endo(args.s, A.dim))
    else:
        T, tau = ops.pseudotwistor_from_rb(A, R)
    r = ops.check_weak_pseudotwistor(A, T, tau)
    if r["holds"]:
        r["induced"] = ops.induced_bracket_twistor(A, T, tau)
    return r["holds"], r


def cmd_mc_check(args):
    A, rep = _ambient(args)
    pair = _pair(args.pair, A, rep)
    holds, data = _result(mc.mc_check(A, rep, pair))
    data["rbs_holds"] = rbs.check_rbs(A, rep, pair).holds
    return holds, data


def cmd_derived_bracket(args):
    A, rep = _ambient(args)
    a = _cochain(args.first, A, rep)
    b = _cochain(args.second, A, rep)
    return None, {"bracket": mc.derived_bracket(a, b, A, rep)}


def cmd_differential(args):
    A, rep = _ambient(args)
    cx = mc.CochainComplex(A, rep, _pair(args.base, A, rep))
    if args.cochain is not None:
        return None, {"image": cx.apply(_cochain(args.cochain, A, rep))}
    return None, {"degree": args.degree, "matrix": cx.matrix(args.degree)}


def cmd_cohomology(args):
    A, rep = _ambient(args)
    base = _pair(args.base, A, rep)
    if args.degree < 1:
        raise InputError("--degree must be at least 1")
    return None, mc.cohomology_dims(base, args.degree, A, rep, args.with_degree0)


def cmd_order_check(args):
    A, rep = _ambient(args)
    r = dfm_.check_order_n(A, rep, _deformation(args.deformation, A, rep))
    return r["holds"], r


def cmd_infinitesimal(args):
    A, rep = _ambient(args)
    c, r = dfm_.infinitesimal(_deformation(args.deformation, A, rep), A, rep)
    return r["is_cocycle"], {"infinitesimal": c, **r}


def cmd_equivalence(args):
    A, rep = _ambient(args)
    base = _pair(args.base, A, rep)
    r = dfm_.equivalence_solve(base, _cochain(args.first, A, rep), _cochain(args.second, A, rep), A, rep)
    return r["equivalent_at_degree1"], r


def cmd_obstruction(args):
    A, rep = _ambient(args)
    ob, r = dfm_.obstruction(_deformation(args.deformation, A, rep), A, rep)
    return r["is_2cocycle"], {"obstruction": ob, **r}


def cmd_extend(args):
    A, rep = _ambient(args)
    r = dfm_.extend_to_order(_deformation(args.deformation, A, rep), args.target, A, rep)
    return r["reached"] == args.target, {"reached": r["reached"], "target": args.target,
                                         "final": r["final"]}


def _mask(path, A, rep):
    obj = io.load_json(path)
    io._keys(obj, {"R", "S"}, str(path))
    out = []
    for key in "RS":
        m = np.asarray(obj[key])
        if m.shape != (A.dim, rep.dim_v) or m.dtype != bool:
            raise InputError(f"{path}.{key}: expected a {A.dim}x{rep.dim_v} array of booleans")
        out.append(m)
    return tuple(out)


def cmd_search(args):
    F = GF(args.field)
    A, rep = _ambient(args, F)
    mask = _mask(args.mask, A, rep) if args.mask else None
    pairs = search_rbs_mod_p(A, rep, args.field, budget=args.budget, mask=mask, workers=args.workers)
    return None, {"field": args.field, "count": len(pairs), "pairs": pairs}


def _add(sub, name, func, *positional, help=None):
    p = sub.add_parser(name, help=help)
    for arg in positional:
        p.add_argument(arg)
    p.set_defaults(func=func)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rbsystems", description="Exact checks for Rota-Baxter systems on Leibniz algebras.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    _add(sub, "check-leibniz", cmd_check_leibniz, "algebra", help="Leibniz identity")
    _add(sub, "check-rep", cmd_check_rep, "algebra", "rep", help="representation axioms")
    _add(sub, "check-quadratic", cmd_check_quadratic, "algebra", "form", help="quadratic structure")
    _add(sub, "check-dialgebra", cmd_check_dialgebra, "dialgebra", help="dialgebra axioms")
    _add(sub, "check-rbs", cmd_check_rbs, "algebra", "rep", "pair", help="Rota-Baxter system identities")
    p = _add(sub, "check-nijenhuis", cmd_check_nijenhuis, "algebra", help="Nijenhuis identity")
    p.add_argument("--endomap")
    p.add_argument("--rep", help="with --pair: test the block operator on the semidirect sum")
    p.add_argument("--pair")
    p = _add(sub, "check-1cocycle", cmd_check_1cocycle, "algebra", "rep", help="invertible 1-cocycle system")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)
    _add(sub, "transport", cmd_transport, "algebra", "form", "pair",
         help="move a pair on the dual representation to the regular one")
    p = _add(sub, "weighted", cmd_weighted, "algebra", "op", help="weighted operator to systems")
    p.add_argument("--weight", default="0")
    p = _add(sub, "twisted", cmd_twisted, "algebra", "sigma", "op", help="twisted operator to a system")
    p = _add(sub, "diff-rb", cmd_diff_rb, "algebra", "op", "d", help="differential Rota-Baxter data")
    p.add_argument("--weight", required=True)
    p = _add(sub, "witt", cmd_witt, help="Witt algebra window check")
    p.add_argument("--q", required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--override", action="append", metavar="N=VALUE")
    _add(sub, "dialgebra-rb", cmd_dialgebra_rb, "dialgebra", "op", help="dialgebra Rota-Baxter operator")
    p = _add(sub, "pseudotwistor", cmd_pseudotwistor, "algebra", "op", help="weak pseudotwistor from an operator")
    p.add_argument("--s", help="second map; builds the system twistor R(x)1 + 1(x)S")
    _add(sub, "mc-check", cmd_mc_check, "algebra", "rep", "pair", help="Maurer-Cartan equation")
    _add(sub, "derived-bracket", cmd_derived_bracket, "algebra", "rep", "first", "second",
         help="derived bracket of two cochains")
    p = _add(sub, "differential", cmd_differential, "algebra", "rep", "base", help="coboundary map")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--cochain", help="apply d to this cochain instead of printing the matrix")
    p = _add(sub, "cohomology", cmd_cohomology, "algebra", "rep", "base", help="cohomology dimensions")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--with-degree0", action="store_true", help="quotient H^1 by the degree-0 image")
    _add(sub, "order-check", cmd_order_check, "algebra", "rep", "deformation", help="truncated deformation")
    _add(sub, "infinitesimal", cmd_infinitesimal, "algebra", "rep", "deformation", help="first-order term")
    _add(sub, "equivalence", cmd_equivalence, "algebra", "rep", "base", "first", "second",
         help="degree-1 equivalence of infinitesimals")
    _add(sub, "obstruction", cmd_obstruction, "algebra", "rep", "deformation", help="obstruction cocycle")
    p = _add(sub, "extend", cmd_extend, "algebra", "rep", "deformation", help="extend order by order")
    p.add_argument("--target", type=int, required=True)
    p = _add(sub, "search", cmd_search, "algebra", "rep", help="exhaustive search over F_p")
    p.add_argument("--field", type=int, required=True, metavar="P")
    p.add_argument("--budget", type=int, help="candidate limit (default: RBS_BUDGET or 2^22)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--mask", help="JSON file {R, S} of boolean arrays; entries outside are fixed to 0")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command is None:
        parser.print_usage(err)
        return 2
    report = {"command": args.command, "schema_version": io.SCHEMA_VERSION}
    try:
        holds, data = args.func(args)
    except (InputError, PreconditionError) as exc:
        kind = "precondition" if isinstance(exc, PreconditionError) else "input"
        print(f"rbsystems {args.command}: {exc}", file=err)
        report["error"] = {"kind": kind, "message": str(exc)}
        out.write(io.dumps(report))
        return 2
    if holds is not None:
        report["holds"] = bool(holds)
    report["data"] = io.to_jsonable(data)
    out.write(io.dumps(report))
    if holds is False:
        print(f"rbsystems {args.command}: property does not hold", file=err)
        return 1
    return 0


def main(argv=None) -> None:
    try:
        code = run(argv)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
