"""Command-line front end.

Every command prints a JSON-lines report: a header, a result, a
verification block and a status line.  ``--format summary`` prints the same
content as indented text instead.

Exit codes: 0 when every verification passes, 1 for malformed input, 2 when
the computation succeeded and the answer is negative (obstructed, not
inner, condition fails), 3 when a verification fails.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import ParseError, ScalextError
from .formats import SCHEMA_VERSION

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE, EXIT_VERIFY = 0, 1, 2, 3


class Report:
    def __init__(self, command, inputs=None):
        self.command = command
        self.inputs = inputs or {}
        self.result = {}
        self.checks = {}
        self.negative = False
        self.extra = []

    def check(self, name, ok):
        self.checks[name] = bool(ok)

    @property
    def exit_code(self):
        if not all(self.checks.values()):
            return EXIT_VERIFY
        return EXIT_NEGATIVE if self.negative else EXIT_OK

    def status(self):
        return {EXIT_OK: "ok", EXIT_NEGATIVE: "negative", EXIT_VERIFY: "verification-failed"}[self.exit_code]

    def lines(self):
        yield {"command": self.command, "inputs": self.inputs, "schema": SCHEMA_VERSION}
        yield from self.extra
        yield {"result": self.result}
        yield {"verification": self.checks, "all_passed": all(self.checks.values())}
        yield {"status": self.status(), "exit": self.exit_code}


def _dump(obj):
    return json.dumps(obj, sort_keys=True, default=str, separators=(",", ":"))


def _summary(obj, indent=0, out=None):
    out = [] if out is None else out
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                _summary(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {_plain(v)}")
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            out.append(pad + ", ".join(_plain(v) for v in obj))
        else:
            for v in obj:
                _summary(v, indent + 1, out)
                out.append(pad + "-")
    else:
        out.append(pad + _plain(obj))
    return out


def _plain(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(report: Report, fmt: str, stream=None):
    stream = stream or sys.stdout
    for line in report.lines():
        if fmt == "summary":
            stream.write("\n".join(_summary(line)) + "\n")
        else:
            stream.write(_dump(line) + "\n")


# -- quiver --------------------------------------------------------------------------------

def cmd_quiver(args, rep: Report):
    from . import quiver as q
    from .formats import dim_vector, quiver_from
    Q = quiver_from(args.quiver)
    vec = lambda s: dim_vector(s, Q.n)
    if args.action in ("euler", "symform"):
        a, b = vec(args.a), vec(args.b)
        if args.action == "euler":
            v = q.euler_form(Q, a, b)
            rep.check("codim_pairing", sum(x * y for x, y in zip(q.codim_vector(Q, a), b)) == v)
        else:
            v = q.symmetric_form(Q, a, b)
            rep.check("symmetric", q.symmetric_form(Q, b, a) == v)
        rep.result["value"] = v
    elif args.action == "fundamental":
        a = vec(args.a)
        rep.result["in_fundamental_region"] = q.in_fundamental_region(Q, a)
        rep.negative = not rep.result["in_fundamental_region"]
    elif args.action == "search":
        a = q.find_indivisible_negative(Q, args.N, args.bound)
        rep.result["vector"] = None if a is None else list(a)
        rep.negative = a is None
        if a is not None:
            rep.check("in_fundamental_region", q.in_fundamental_region(Q, a))
            rep.check("indivisible", q.is_indivisible(a))
            rep.check("negativity", q.symmetric_form(Q, a, a) <= -args.N)
    elif args.action == "codim":
        a = vec(args.a)
        c = q.codim_vector(Q, a)
        rep.result["codim"] = list(c)
        rep.check("pairs_with_euler_form",
                  all(c[i] == q.euler_form(Q, a, Q.unit(i)) for i in range(Q.n)))
    elif args.action == "moduli-dim":
        a = vec(args.a)
        rep.result["dimension"] = q.moduli_dimension(Q, a)
        rep.check("in_fundamental_region", q.in_fundamental_region(Q, a))


# -- representations -------------------------------------------------------------------

def cmd_rep(args, rep: Report):
    from . import representations as r
    from .formats import dim_vector, rep_from
    V = rep_from(args.first)
    W = rep_from(args.second) if getattr(args, "second", None) else None
    if args.action == "hom":
        H = r.hom_space(V, W)
        rep.result["dim"] = H.dim
        rep.result["basis"] = [[m.to_strings() for m in f] for f in H.basis]
        rep.check("intertwiners", all(r.is_intertwiner(f, V, W) for f in H.basis))
        rep.check("euler_identity", r.euler_identity_holds(V, W))
    elif args.action == "ext":
        E = r.ext_space(V, W)
        rep.result["dim"] = E.dim
        rep.check("euler_identity", r.euler_identity_holds(V, W))
    elif args.action == "end":
        H = r.end_space(V)
        rep.result["dim"] = H.dim
        rep.check("intertwiners", all(r.is_intertwiner(f, V, V) for f in H.basis))
    elif args.action == "schur":
        rep.result["schur"] = r.is_schur(V)
        rep.negative = not rep.result["schur"]
    elif args.action == "perp":
        h, e = r.hom_ext_dims(V, W)
        rep.result.update({"perp": h == 0 and e == 0, "hom": h, "ext": e})
        rep.negative = not rep.result["perp"]
    elif args.action == "witness":
        lam = dim_vector(args.weight, V.quiver.n)
        ok = r.semistable_witness_check(V, W, lam)
        rep.result["witness"] = ok
        rep.negative = not ok
    elif args.action == "stability":
        lam = dim_vector(args.weight, V.quiver.n)
        rep.result["verdict"] = r.stability_bruteforce(V, lam)
        rep.negative = rep.result["verdict"] == "unstable"


# -- Hochschild ------------------------------------------------------------------------

def _koszul_input(path):
    from .formats import _scalar, field_from, load_json, matrix_from, object_from
    from .hochschild import KoszulBimodule
    obj = load_json(path)
    if "object" in obj:
        Z = object_from(obj["object"])
        return Z.bimodule.koszul, Z.phi21
    F = field_from(obj.get("field"))
    n = obj.get("dim")
    if not isinstance(n, int):
        raise ParseError("bimodule: 'dim' must be an integer")
    deltas = [matrix_from(F, m, n, f"bimodule.deltas[{i}]") for i, m in enumerate(obj.get("deltas", []))]
    M = KoszulBimodule(F, n, deltas)
    e = [[_scalar(F, x, "bimodule.cochain") for x in v] for v in obj.get("cochain", [])]
    return M, e


def cmd_hoch(args, rep: Report):
    from . import hochschild as h
    from .formats import algebra_from, bimodule_from, module_from, rep_from, parse_field
    if args.action == "bar":
        B = algebra_from(args.algebra)
        E = bimodule_from(None, B, args.modules or ())
        r = h.bar_hh(B, E, args.n, args.j)
        rep.result.update(r.as_dict())
        rep.check("d_squared_zero", r.d_squared_zero)
    elif args.action == "koszul":
        if args.ext or args.hom:
            from .lifting import ext_bimodule, hom_bimodule
            U, V = (rep_from(p) for p in (args.ext or args.hom))
            M = ext_bimodule(U, V) if args.ext else hom_bimodule(U, V)
        else:
            M = h.KoszulBimodule.symmetric(parse_field(args.field), args.dim)
        ranks = h.koszul_ranks(M)
        rep.result.update({"ranks": ranks, "d": M.d, "dim": M.dim})
        if M.is_symmetric():
            rep.check("symmetric_law", ranks == [h.symmetric_rank_law(M.dim, M.d, n) for n in range(M.d + 1)])
    elif args.action == "derivation-check":
        M, e = _koszul_input(args.file)
        ok = h.derivation_check(e, M)
        rep.result["derivation"] = ok
        rep.negative = not ok
    elif args.action == "inner":
        M, e = _koszul_input(args.file)
        m = h.is_inner(e, M)
        rep.result["inner"] = m is not None
        rep.result["witness"] = None if m is None else [M.field.format(x) for x in m]
        rep.result.update(h.inner_certificate(e, M))
        if m is not None:
            rep.check("witness_reverifies", all(D.apply(m) == list(v) for D, v in zip(M.deltas, e)))
        rep.negative = m is None
    elif args.action == "condition":
        B = algebra_from(args.algebra)
        E = bimodule_from(None, B, args.modules or ())
        r = h.hh_condition(B, E, args.mode, args.max_n)
        rep.result.update(r.as_dict())
        rep.negative = not r.holds
    elif args.action == "ext":
        B = algebra_from(args.algebra)
        M, N = module_from(args.modules[0], B), module_from(args.modules[1], B)
        n = h.ext_via_bar(B, M, N, args.n)
        rep.result["rank"] = n
        hh = h.bar_hh(B, h.GradedBimodule.hom(M, N), args.n, 0).rank
        rep.result["hochschild_rank"] = hh
        rep.check("hochschild_route_agrees", hh == n)


# -- lifting ------------------------------------------------------------------------------

def cmd_lift(args, rep: Report):
    from . import lifting as L
    from .formats import object_from, rep_from
    if args.action in ("test", "counterexample"):
        if args.action == "test":
            Z = object_from(args.object)
        else:
            build = {"threeloop": L.build_counterexample_threeloop,
                     "kronecker4": L.build_counterexample_kronecker4}[args.quiver]
            Z = build()
            rep.extra.append({"object": Z.to_json()})
            if args.out:
                with open(args.out, "w") as fh:
                    json.dump(Z.to_json(), fh, indent=1, sort_keys=True)
        cert = L.lift_test(Z)
        rep.result.update(cert.as_dict())
        rep.check("cocycle", cert.cocycle_check)
        if cert.lifts:
            m = [Z.field(x) for x in cert.witness]
            rep.check("witness_reverifies",
                      all(D.apply(m) == list(v) for D, v in zip(Z.bimodule.koszul.deltas, Z.phi21)))
        else:
            rep.check("rank_jump", cert.augmented_rank > cert.coboundary_rank)
        rep.negative = not cert.lifts
    elif args.action == "eq43":
        U = rep_from(args.U)
        V = rep_from(args.V) if args.V else U
        r = L.ext_hom_rank_check(U, V, top=args.top)
        rep.result.update(r.as_dict())
        rep.negative = not r.passed


# -- A-infinity -------------------------------------------------------------------------

def _residuals(fn, arities):
    from .ainfty.core import nonzero_entries
    return {str(n): nonzero_entries(fn(n)) for n in arities}


def _need_input(args, fixtures):
    if args.fixture is None and args.file is None:
        raise ParseError(f"give an input file or --fixture {{{','.join(fixtures)}}}")
    if args.fixture is not None and args.fixture not in fixtures:
        raise ParseError(f"unknown fixture {args.fixture!r}; choose from {sorted(fixtures)}")


def _random_homotopy(M, N, count, rng):
    from .ainfty.core import _add, module_keys
    h0 = {}
    for k in range(count):
        comp = {}
        for key, o in module_keys(M.algebra.sdeg, M.space.degrees, N.space.degrees, k, -1, ()):
            c = rng.randint(-2, 2)
            if c:
                _add(comp, key, o, c)
        h0[k] = comp
    return h0


def cmd_ainfty(args, rep: Report):
    from . import ainfty as ai
    from .ainfty import fixtures as fx
    from .ainfty.algebra import bar_square
    from .ainfty.modules import homotopy_image, module_defect
    from .ainfty.morphisms import defect_component
    from .formats import (
        ainfty_algebra_from, ainfty_module_from, linear_map_from, load_json,
        module_map_from, strict_module_parts,
    )
    N = args.arity
    rep.result["verified_to_arity"] = N
    if args.action == "check":
        fixtures = {"F1": lambda: fx.F1().data["algebra"], "F2": lambda: fx.F2().data["target"],
                    "F2-cohomology": lambda: fx.F2().data["algebra"]}
        _need_input(args, fixtures)
        A = fixtures[args.fixture]() if args.fixture else ainfty_algebra_from(args.file)
        v = ai.coderivation_square(A, N)
        rep.result["violations"] = [{"arity": x.arity, "residual_entries": x.size} for x in v]
        rep.result["residual_entries"] = _residuals(lambda n: bar_square(A.b, A.sdeg, n), range(1, N + 1))
        rep.negative = bool(v)
    elif args.action == "lift-alg":
        fixtures = {"F1": fx.F1, "F2": fx.F2, "matrix": fx.matrix_thickening}
        _need_input(args, fixtures)
        if args.fixture:
            d = fixtures[args.fixture]().data
            A, C, phi = d["algebra"], d["target"], d["phi"]
        else:
            obj = load_json(args.file)
            A, C = ainfty_algebra_from(obj["source"]), ainfty_algebra_from(obj["target"])
            phi = linear_map_from(obj["phi"], A.space.names, C.space.names, A.field, "phi")
        res = ai.lift_algebra_morphism(A, C, phi, N, gauge_seed=args.gauge_seed)
        rep.result.update(res.as_dict())
        if res.ok:
            comps = res.map.components
            rep.result["residual_entries"] = _residuals(lambda n: defect_component(A, C, comps, n), range(1, N + 1))
            rep.check("morphism_equation", ai.morphism_equation_holds(A, C, res.map, N))
        else:
            rep.check("obstruction_closed", res.obstruction.closed)
            rep.check("obstruction_not_exact", not res.obstruction.exact)
        rep.negative = not res.ok
    elif args.action == "lift-mod":
        fixtures = {"F3": fx.F3}
        _need_input(args, fixtures)
        if args.fixture:
            d = fixtures[args.fixture]().data
            M, Nm, f1 = d["M"], d["N"], d["f1"]
        else:
            obj = load_json(args.file)
            B = ainfty_algebra_from(obj["algebra"])
            M, Nm = ainfty_module_from(obj["M"], B), ainfty_module_from(obj["N"], B)
            f1 = linear_map_from(obj["f1"], M.space.names, Nm.space.names, B.field, "f1")
        res = ai.lift_module_morphism(M, Nm, f1, N, gauge_seed=args.gauge_seed)
        rep.result.update(res.as_dict())
        if res.ok:
            comps = res.map.components
            rep.result["residual_entries"] = _residuals(lambda k: module_defect(M, Nm, comps, k), range(N))
            rep.check("module_morphism_equation", ai.module_morphism_holds(M, Nm, comps, N))
        else:
            rep.check("obstruction_closed", res.obstruction.closed)
            rep.check("obstruction_not_exact", not res.obstruction.exact)
        rep.negative = not res.ok
    elif args.action == "nullhomotopy":
        fixtures = {"F3-faithful": fx.F3_faithful}
        _need_input(args, fixtures)
        if args.fixture:
            d = fixtures[args.fixture]().data
            M = Nm = d["M"]
            h0 = _random_homotopy(M, Nm, max(N - 1, 1), random.Random(f"{args.seed}:nullhomotopy"))
            g = {k: homotopy_image(M, Nm, h0, k) for k in range(N)}
        else:
            obj = load_json(args.file)
            B = ainfty_algebra_from(obj["algebra"])
            M, Nm = ainfty_module_from(obj["M"], B), ainfty_module_from(obj["N"], B)
            g = module_map_from(obj.get("g", {}), B, M, Nm, "g")
        h = ai.nullhomotopy(M, Nm, g, N)
        rep.result["homotopy"] = h.to_json()

        def resid(k):
            r = homotopy_image(M, Nm, h.components, k)
            from .ainfty.core import _add
            for key, row in g.get(k, {}).items():
                for o, c in row.items():
                    _add(r, key, o, -c)
            return r
        rep.result["residual_entries"] = _residuals(resid, range(N))
        rep.check("homotopy_identity", ai.homotopy_holds(M, Nm, g, h.components, N))
    elif args.action == "lift-structure":
        fixtures = {"F4": fx.F4, "F2-module": fx.F2_module}
        _need_input(args, fixtures)
        if args.fixture:
            d = fixtures[args.fixture]().data
            B, space, dM, action = d["algebra"], d["space"], d["d"], d["action"]
        else:
            obj = load_json(args.file)
            B = ainfty_algebra_from(obj["algebra"])
            space, dM, _ = strict_module_parts(obj["module"], B, "module")
            action = {}
            for k, e in enumerate(obj.get("action", [])):
                if not (isinstance(e, list) and len(e) == 3):
                    raise ParseError(f"action[{k}]: expected [class, class, {{class: c}}]")
                action[(int(e[0]), int(e[1]))] = {int(t): B.field.parse(str(c)) for t, c in e[2].items()}
        res = ai.lift_module_structure(B, space, dM, action, N)
        rep.result.update(res.as_dict())
        if res.ok:
            bad = ai.module_square_violations(res.module, N)
            rep.result["module_square_violations"] = bad
            rep.check("module_equation", not bad)
        else:
            rep.check("obstruction_closed", res.obstruction.closed)
            rep.check("obstruction_not_exact", not res.obstruction.exact)
        rep.negative = not res.ok


# -- suite ------------------------------------------------------------------------------

def cmd_suite(args, rep: Report):
    from .suite import reproduce
    rows = reproduce(args.seed, only=args.only, fault=args.inject, arity=args.arity)
    for row in rows:
        rep.extra.append(row.as_dict())
        rep.check(row.name, row.passed)
    rep.result["table"] = {row.name: "pass" if row.passed else "FAIL" for row in rows}


# -- parser ------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized inputs")
    common.add_argument("--format", choices=["report", "summary"], default="report")

    p = argparse.ArgumentParser(prog="scalext", description="Exact quiver, Hochschild and A-infinity computations.")
    sub = p.add_subparsers(dest="group", required=True)

    def leaf(parent, name, help_):
        return parent.add_parser(name, parents=[common], help=help_)

    g = sub.add_parser("quiver", help="integer invariants of quivers").add_subparsers(dest="action", required=True)
    for name in ("euler", "symform"):
        s = leaf(g, name, f"{name} form of two dimension vectors")
        s.add_argument("quiver")
        s.add_argument("a")
        s.add_argument("b")
    for name in ("fundamental", "codim", "moduli-dim"):
        s = leaf(g, name, name)
        s.add_argument("quiver")
        s.add_argument("a")
    s = leaf(g, "search", "smallest indivisible vector with very negative self-pairing")
    s.add_argument("quiver")
    s.add_argument("--N", type=int, default=4)
    s.add_argument("--bound", type=int, default=3)

    g = sub.add_parser("rep", help="quiver representations").add_subparsers(dest="action", required=True)
    for name in ("hom", "ext", "perp"):
        s = leaf(g, name, name)
        s.add_argument("first")
        s.add_argument("second")
    for name in ("end", "schur"):
        s = leaf(g, name, name)
        s.add_argument("first")
    s = leaf(g, "witness", "semistability witness W for V")
    s.add_argument("first", metavar="W")
    s.add_argument("second", metavar="V")
    s.add_argument("--weight", required=True)
    s = leaf(g, "stability", "exhaustive stability over a prime field")
    s.add_argument("first")
    s.add_argument("--weight", required=True)
    s.add_argument("--oracle", action="store_true", help="accepted for compatibility; the oracle is the only method")

    g = sub.add_parser("hoch", help="Hochschild cohomology").add_subparsers(dest="action", required=True)
    s = leaf(g, "bar", "HH^n through the bar complex")
    s.add_argument("algebra")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--j", type=int, default=None)
    s.add_argument("--modules", nargs=2, metavar=("M", "N"), help="use Hom(M, N) as coefficients")
    s = leaf(g, "koszul", "Koszul ranks over a function field")
    s.add_argument("--field", default="QQ(x,y,z)")
    s.add_argument("--dim", type=int, default=1)
    s.add_argument("--ext", nargs=2, metavar=("U", "V"))
    s.add_argument("--hom", nargs=2, metavar=("U", "V"))
    for name in ("derivation-check", "inner"):
        s = leaf(g, name, name)
        s.add_argument("file")
    s = leaf(g, "condition", "vanishing of the graded groups a lifting step needs")
    s.add_argument("algebra")
    s.add_argument("--mode", choices=["lift_object", "lift_morphism", "faithful"], required=True)
    s.add_argument("--max-n", type=int, default=None)
    s.add_argument("--modules", nargs=2, metavar=("M", "N"))
    s = leaf(g, "ext", "Ext^n through the bar resolution")
    s.add_argument("algebra")
    s.add_argument("modules", nargs=2, metavar="MODULE")
    s.add_argument("--n", type=int, required=True)

    g = sub.add_parser("lift", help="two-term lifting decision").add_subparsers(dest="action", required=True)
    s = leaf(g, "test", "decide whether an object lifts")
    s.add_argument("object")
    s = leaf(g, "counterexample", "build and test a non-lifting object")
    s.add_argument("--quiver", choices=["threeloop", "kronecker4"], required=True)
    s.add_argument("--out", default=None, help="also write the object file here")
    s = leaf(g, "eq43", "compare Koszul ranks of the Ext and Hom bimodules")
    s.add_argument("U")
    s.add_argument("V", nargs="?")
    s.add_argument("--top", type=int, default=3)

    g = sub.add_parser("ainfty", help="A-infinity lifting").add_subparsers(dest="action", required=True)
    for name in ("check", "lift-alg", "lift-mod", "nullhomotopy", "lift-structure"):
        s = leaf(g, name, name)
        s.add_argument("file", nargs="?")
        s.add_argument("--fixture", default=None)
        s.add_argument("--arity", type=int, default=5)
        s.add_argument("--gauge-seed", type=int, default=None)

    g = sub.add_parser("suite", help="reproduction suite").add_subparsers(dest="action", required=True)
    s = leaf(g, "reproduce-paper", "run every reproduction row")
    s.add_argument("--only", nargs="*", default=None)
    s.add_argument("--inject", choices=["sign-flip"], default=None, help="deliberate fault for isolation tests")
    s.add_argument("--arity", type=int, default=None)
    return p


HANDLERS = {"quiver": cmd_quiver, "rep": cmd_rep, "hoch": cmd_hoch, "lift": cmd_lift,
            "ainfty": cmd_ainfty, "suite": cmd_suite}


def run(argv=None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse uses 2 for usage errors, which would read as a negative verdict
        return EXIT_INPUT if e.code else EXIT_OK
    inputs = {k: v for k, v in vars(args).items() if k not in ("group", "action", "format")}
    rep = Report(f"{args.group}.{args.action}", inputs)
    try:
        HANDLERS[args.group](args, rep)
    except ParseError as e:
        err = {"error": "ParseError", "message": str(e), "line": e.line, "column": e.column}
        _write_error(rep, err, args.format, stream)
        return EXIT_INPUT
    except (ScalextError, ValueError, KeyError) as e:
        _write_error(rep, {"error": type(e).__name__, "message": str(e)}, args.format, stream)
        return EXIT_INPUT
    emit(rep, args.format, stream)
    return rep.exit_code


def _write_error(rep, err, fmt, stream):
    stream = stream or sys.stdout
    lines = [{"command": rep.command, "inputs": rep.inputs, "schema": SCHEMA_VERSION}, err,
             {"status": "input-error", "exit": EXIT_INPUT}]
    for line in lines:
        stream.write(("\n".join(_summary(line)) if fmt == "summary" else _dump(line)) + "\n")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
