"""Command-line interface.

Exit status: 0 on success, 1 on a validation or domain error (a JSON
error object goes to stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cohomology as coh
from .coloring import brute_force_colorings, count_colorings, enumerate_colorings
from .diagram import fundamental_presentation, load_diagram, parse_gauss, parse_pd
from .errors import QuandleSumError
from .fuzz import fuzz
from .invariants import partition_function, state_sum, symmetric_function, temperature_grid
from .moves import MoveSpec, apply_move
from .quandle import conjugation_quandle, dihedral_quandle, quandle_from_json, trivial_quandle


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_json(path):
    return json.loads(_read(path))


def _quandle(path):
    return quandle_from_json(_read_json(path))


def _cochain(path, quandle):
    return coh.cochain_from_json(_read_json(path), quandle.order)


def _diagram(path, fmt=None):
    return load_diagram(_read(path), fmt)


def _dump(obj):
    return json.dumps(obj)


# ------------------------------------------------------------ handlers

def cmd_quandle_verify(args):
    q = _quandle(args.file)
    return _dump({"valid": True, "name": q.name, "order": q.order})


def cmd_quandle_make(args):
    kind = args.kind
    if kind in ("dihedral", "trivial"):
        if len(args.params) != 1:
            raise _Usage(f"quandle make {kind} takes one argument N")
        n = _int(args.params[0])
        q = dihedral_quandle(n) if kind == "dihedral" else trivial_quandle(n)
    else:
        if len(args.params) != 2:
            raise _Usage("quandle make conj takes GROUPFILE EXP")
        data = _read_json(args.params[0])
        table = data["table"] if isinstance(data, dict) else data
        q = conjugation_quandle(table, _int(args.params[1]))
    return q.dumps()


def cmd_cocycles(args):
    q = _quandle(args.quandle)
    coeff = coh.CoefficientGroup.from_flag(args.coeff)
    space = coh.cocycle_space(q, args.arity, coeff)
    return _dump([c.to_json() for c in space])


def cmd_homology(args):
    q = _quandle(args.quandle)
    return _dump(coh.quandle_homology(q, args.arity).to_json())


def cmd_cohomologous(args):
    q = _quandle(args.quandle)
    c1, c2 = _cochain(args.c1, q), _cochain(args.c2, q)
    same, psi = coh.cohomologous(q, c1, c2)
    return _dump({"cohomologous": same, "witness": psi.to_json() if psi is not None else None})


def cmd_diagram_validate(args):
    fmt = "gauss" if args.gauss else "pd"
    return _diagram(args.file, fmt).dumps()


def cmd_diagram_info(args):
    d = _diagram(args.file)
    gens, rels = fundamental_presentation(d)
    return _dump({
        "crossings": d.n_crossings,
        "components": len(d.components),
        "arcs": [list(a) for a in d.arcs],
        "signs": list(d.signs),
        "writhe": d.writhe,
        "faces": [[list(dart) for dart in f] for f in d.faces],
        "presentation": {"generators": gens,
                         "relations": [{"out": o, "in": i, "over": y, "sign": s}
                                       for o, i, y, s in rels]},
    })


def cmd_color(args):
    d, q = _diagram(args.diagram), _quandle(args.quandle)
    if args.action == "count":
        if args.oracle:
            return str(len(brute_force_colorings(d, q)))
        return str(count_colorings(d, q, workers=args.workers))
    cols = brute_force_colorings(d, q) if args.oracle else enumerate_colorings(d, q, workers=args.workers)
    return "\n".join(_dump(list(c)) for c in cols)


def _triple(args):
    d, q = _diagram(args.diagram), _quandle(args.quandle)
    return d, q, _cochain(args.cocycle, q)


def cmd_state_sum(args):
    d, q, phi = _triple(args)
    ss = state_sum(d, q, phi, workers=args.workers)
    out = ss.to_json()
    if args.action == "multiset":
        out["total"] = ss.total
        out["multiplicative"] = ss.multiplicative()
    return _dump(out)


def cmd_zt(args):
    d, q, phi = _triple(args)
    if args.k <= 0:
        raise _Usage("--k must be positive")
    grid = temperature_grid(args.tmin, args.tmax, args.steps, args.log)
    ss = state_sum(d, q, phi, workers=args.workers)
    return partition_function(ss, grid, args.k).to_csv().rstrip("\n")


def cmd_symfun(args):
    d, q, phi = _triple(args)
    ss = state_sum(d, q, phi, workers=args.workers)
    return _dump(symmetric_function(ss, args.kind, args.order).to_json())


def cmd_moves_apply(args):
    d = _diagram(args.diagram)
    spec = MoveSpec.from_json(_read_json(args.movespec))
    d2, corr = apply_move(d, spec)
    return _dump({
        "diagram": d2.to_json(),
        "edge_origin": [[e, o] for e, o in sorted(corr.edge_origin.items())],
        "arc_map": [[a, b] for a, b in corr.arc_map.items()],
    })


def cmd_fuzz(args):
    d, q, phi = _triple(args)
    report = fuzz(d, q, phi, args.trials, args.depth, seed=args.seed)
    if not report.passed:
        raise _Failed(report.summary())
    return report.summary()


# ------------------------------------------------------------- parsing

class _Usage(Exception):
    pass


class _Failed(Exception):
    pass


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise _Usage(f"expected an integer, got {text!r}")


def build_parser():
    p = argparse.ArgumentParser(prog="quandlesum", description="Quandle cocycle invariants of knot diagrams.")
    p.add_argument("-o", "--output", help="write output here instead of stdout")
    p.add_argument("--workers", type=int, default=1, help="worker processes for enumeration")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    sub = p.add_subparsers(dest="command", required=True)

    pq = sub.add_parser("quandle").add_subparsers(dest="action", required=True)
    v = pq.add_parser("verify")
    v.add_argument("file")
    v.set_defaults(func=cmd_quandle_verify)
    m = pq.add_parser("make")
    m.add_argument("kind", choices=["dihedral", "trivial", "conj"])
    m.add_argument("params", nargs="+")
    m.set_defaults(func=cmd_quandle_make)

    pc = sub.add_parser("cohomology").add_subparsers(dest="action", required=True)
    c = pc.add_parser("cocycles")
    c.add_argument("--arity", type=int, choices=[2, 3], required=True)
    c.add_argument("--coeff", required=True, help="q for rationals, zM for Z/M")
    c.add_argument("quandle")
    c.set_defaults(func=cmd_cocycles)
    h = pc.add_parser("homology")
    h.add_argument("--arity", type=int, required=True)
    h.add_argument("quandle")
    h.set_defaults(func=cmd_homology)
    cc = pc.add_parser("cohomologous")
    cc.add_argument("quandle")
    cc.add_argument("c1")
    cc.add_argument("c2")
    cc.set_defaults(func=cmd_cohomologous)

    pd = sub.add_parser("diagram").add_subparsers(dest="action", required=True)
    dv = pd.add_parser("validate")
    fmt = dv.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--pd", action="store_true")
    fmt.add_argument("--gauss", action="store_true")
    dv.add_argument("file")
    dv.set_defaults(func=cmd_diagram_validate)
    di = pd.add_parser("info")
    di.add_argument("file")
    di.set_defaults(func=cmd_diagram_info)

    col = sub.add_parser("color")
    col.add_argument("action", choices=["count", "list"])
    col.add_argument("diagram")
    col.add_argument("quandle")
    col.add_argument("--oracle", action="store_true", help="use brute force")
    col.set_defaults(func=cmd_color)

    pi = sub.add_parser("invariant").add_subparsers(dest="action", required=True)
    for name in ("state-sum", "multiset"):
        s = pi.add_parser(name)
        _triple_args(s)
        s.set_defaults(func=cmd_state_sum, action=name.replace("state-sum", "state_sum"))
    z = pi.add_parser("zt")
    _triple_args(z)
    z.add_argument("--tmin", type=float, required=True)
    z.add_argument("--tmax", type=float, required=True)
    z.add_argument("--steps", type=int, required=True)
    z.add_argument("--log", action="store_true", help="geometric grid")
    z.add_argument("--k", type=float, default=1.0)
    z.set_defaults(func=cmd_zt)
    sf = pi.add_parser("symfun")
    _triple_args(sf)
    sf.add_argument("--kind", choices=["power", "elementary"], required=True)
    sf.add_argument("--order", type=int, required=True)
    sf.set_defaults(func=cmd_symfun)

    pm = sub.add_parser("moves").add_subparsers(dest="action", required=True)
    ma = pm.add_parser("apply")
    ma.add_argument("diagram")
    ma.add_argument("movespec")
    ma.set_defaults(func=cmd_moves_apply)
    mf = pm.add_parser("fuzz")
    _triple_args(mf)
    mf.add_argument("--trials", type=int, default=20)
    mf.add_argument("--depth", type=int, default=6)
    mf.add_argument("--seed", type=int, default=0)
    mf.set_defaults(func=cmd_fuzz)
    return p


def _triple_args(p):
    p.add_argument("diagram")
    p.add_argument("quandle")
    p.add_argument("cocycle")


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        text = args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except _Failed as exc:
        print(str(exc))
        return 1
    except QuandleSumError as exc:
        print(json.dumps(exc.to_json()), file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def main():
    sys.exit(run())
