"""Command-line interface: ``g2cubics <subcommand> [options]``.

Exit codes: 0 success, 2 parse error, 3 failed precondition, 4 truncated
enumeration, 5 failed verification.
"""
import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__, braid, config, fano, fricke, g2, scalars, sl2, verify
from .errors import (BadIndex, ClosureTruncated, NormNotThree, NotARoot, NotUnimodular,
                     OrbitTruncated, RealizationFailed, ZeroTorusCoordinate)
from .fricke import PInvariants, SurfaceParams, SurfacePoint
from .g2 import AlphaBeta

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_TRUNCATED, EXIT_VERIFY = 0, 2, 3, 4, 5

_PRECONDITION = (NormNotThree, ZeroTorusCoordinate, NotUnimodular, NotARoot, BadIndex)


class ParseError(Exception):
    pass


# -- encoding -----------------------------------------------------------------

def enc(x):
    """JSON scalar: "p/q" for exact values, [re, im] otherwise."""
    if isinstance(x, fricke.Surd):
        x = complex(x)
    return scalars.to_json(x)


def show(x):
    if isinstance(x, fricke.Surd):
        return repr(x)
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(show(t) for t in x) + ")"
    if isinstance(x, (Fraction, int, float, complex, np.number)):
        return scalars.fmt(x)
    return str(x)


def _mode(values):
    flat = []
    for v in values:
        flat.extend(v if isinstance(v, (list, tuple)) else [v])
    rings = {scalars.ring_of(v) for v in flat if not isinstance(v, fricke.Surd)}
    return scalars.FLOAT if scalars.FLOAT in rings else scalars.EXACT


class Output:
    """A JSON payload plus a flat row view for csv / table output."""

    def __init__(self, payload, rows=None, mode=None):
        self.payload = payload
        self.rows = rows
        self.mode = mode

    def render(self, fmt):
        if fmt == "json":
            return json.dumps(self.payload, indent=2)
        rows = self.rows
        if rows is None:
            rows = [{"key": k, "value": v if not isinstance(v, (dict, list)) else json.dumps(v)}
                    for k, v in self.payload.items()]
        if not rows:
            return ""
        cols = list(rows[0])
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
            return buf.getvalue().rstrip("\n")
        cells = [[str(r.get(c, "")) for c in cols] for r in rows]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
        lines = []
        if self.mode:
            lines.append(f"# mode: {self.mode}")
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        lines.append("  ".join("-" * w for w in widths))
        lines.extend("  ".join(v.ljust(w) for v, w in zip(r, widths)) for r in cells)
        return "\n".join(lines)


# -- input parsing ----------------------------------------------------------------

def _scalar(text, name):
    try:
        return scalars.parse_scalar(text)
    except ValueError as exc:
        raise ParseError(f"--{name}: {exc}") from None


def _list(text, n, name):
    try:
        return scalars.parse_list(text, n)
    except ValueError as exc:
        raise ParseError(f"--{name}: {exc}") from None


def _uniform(values):
    """Promote a parsed list to one ring (decimals switch everything to floats)."""
    return list(scalars.promote(values)[1])


def _read_json(path):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON from {path}: {exc}") from None


def _read_triple(path):
    obj = _read_json(path)
    try:
        return fricke.triple_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad triple JSON: {exc}") from None


def _triple_arg(args):
    if getattr(args, "fano_point", None) is not None:
        return tuple(v for v, _ in fano.point_generators(args.fano_point))
    if getattr(args, "triple", None):
        return _read_triple(args.triple)
    return None


def _p_arg(text):
    return PInvariants(*_uniform(_list(text, 4, "p")))


# -- subcommands -------------------------------------------------------------------

def _invariant_rows(payload):
    return [{"quantity": k, "value": json.dumps(v)} for k, v in payload.items()]


def cmd_invariants(args):
    triple = _triple_arg(args)
    if triple is None and args.p is None:
        raise ParseError("give --triple FILE, --fano-point K or --p p1,p2,p3,p4")
    if triple is not None:
        p = fricke.p_invariants(*triple)
    else:
        p = _p_arg(args.p)
    payload = {"mode": _mode(tuple(p))}
    payload.update(fricke.invariants_to_json(p))
    ab = fricke.alpha_beta_from_p(p)
    if triple is not None:
        g1, g2_, g3 = (g2.conj_map(v) for v in triple)
        ab2 = g2.alpha_beta_of(g1 @ g2_ @ g3)
        payload["alpha_beta_matrix"] = [enc(ab2.alpha), enc(ab2.beta)]
        gap = max(abs(a - b) for a, b in zip(ab, ab2))
        payload["discrepancy"] = enc(gap) if isinstance(gap, Fraction) else float(gap)
    return Output(payload, _invariant_rows(payload), payload["mode"])


def _orbit_start(args):
    level = args.level
    if level in ("oct", "matrix"):
        triple = _triple_arg(args)
        if triple is None:
            raise ParseError(f"--level {level} needs --triple FILE or --fano-point K")
        if level == "matrix":
            return tuple(g2.conj_map(v) for v in triple), None
        return triple, None
    if args.start is None:
        raise ParseError(f"--level {level} needs --start")
    if level == "p":
        return _p_arg(args.start), None
    if args.b is None:
        raise ParseError("--level xyz needs --b")
    vals = _uniform(_list(args.start, 3, "start") + [_scalar(args.b, "b")])
    return SurfacePoint(*vals[:3]), vals[3]


def _orbit_output(result, conserved, truncated=False):
    payload = result.to_json()
    payload["conserved"] = {k: enc(v) for k, v in conserved.items()}
    if truncated:
        payload["truncated"] = True
    names = {"p": ("p1", "p2", "p3", "p4"), "xyz": ("x", "y", "z")}.get(result.level, ("p1", "p2", "p3", "p4"))
    rows = [{"index": i, **{n: show(v) for n, v in zip(names, pt)}} for i, pt in enumerate(result.points)]
    return Output(payload, rows, _mode(result.start))


def cmd_braid_orbit(args):
    start, b = _orbit_start(args)
    conserved = braid.conserved_quantities(args.level, start, b)
    try:
        result = braid.braid_orbit(start, args.level, max_size=args.max_orbit, b=b)
    except OrbitTruncated as exc:
        out = _orbit_output(exc.partial, conserved, truncated=True)
        out.exit_code = EXIT_TRUNCATED
        return out
    return _orbit_output(result, conserved)


def _fiber_payload(ab):
    fib = fricke.pr_fiber(ab)
    out = []
    for f in fib:
        item = {"b": enc(f.b), "c": enc(f.c), "multiplicity": f.multiplicity}
        if isinstance(f.b, fricke.Surd):
            item["exact"] = {"b": repr(f.b), "c": repr(f.c)}
        out.append(item)
    return fib, out


def _parse_range(spec, name):
    try:
        lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise ParseError(f"--sweep {name}: expected lo:hi:n") from None
    if n < 1:
        raise ParseError(f"--sweep {name}: n must be positive")
    return np.linspace(lo, hi, n)


def _sweep(spec):
    """``b=lo:hi:n,c=lo:hi:n`` or ``alpha=...,beta=...`` into a CSV-ready grid."""
    parts = dict(item.split("=", 1) for item in spec.split(",") if "=" in item)
    if set(parts) == {"b", "c"}:
        rows = []
        for b in _parse_range(parts["b"], "b"):
            for c in _parse_range(parts["c"], "c"):
                s1, s2, d = fricke.locus_values_bc(SurfaceParams(float(b), float(c)))
                rows.append({"b": float(b), "c": float(c), "sing1": s1, "sing2": s2, "dbl": d})
        return rows
    if set(parts) == {"alpha", "beta"}:
        rows = []
        for a in _parse_range(parts["alpha"], "alpha"):
            for bt in _parse_range(parts["beta"], "beta"):
                d1, d2 = fricke.locus_values_ab(AlphaBeta(float(a), float(bt)))
                rows.append({"alpha": float(a), "beta": float(bt), "d1": d1, "d2": d2})
        return rows
    raise ParseError("--sweep expects b=lo:hi:n,c=lo:hi:n or alpha=lo:hi:n,beta=lo:hi:n")


def cmd_loci(args):
    if args.sweep:
        rows = _sweep(args.sweep)
        return Output({"grid": rows}, rows, scalars.FLOAT)
    if args.b is not None and args.c is not None:
        b, c = _uniform([_scalar(args.b, "b"), _scalar(args.c, "c")])
        params = SurfaceParams(b, c)
        s1, s2, d = fricke.locus_values_bc(params)
        ab = fricke.pr(params)
        d1, d2 = fricke.locus_values_ab(ab)
        payload = {"mode": _mode([b, c]), "b": enc(b), "c": enc(c),
                   "sing1": enc(s1), "sing2": enc(s2), "dbl": enc(d),
                   "alpha_beta": [enc(ab.alpha), enc(ab.beta)], "d1": enc(d1), "d2": enc(d2)}
    elif args.alpha is not None and args.beta is not None:
        a, bt = _uniform([_scalar(args.alpha, "alpha"), _scalar(args.beta, "beta")])
        ab = AlphaBeta(a, bt)
        d1, d2 = fricke.locus_values_ab(ab)
        _, fib = _fiber_payload(ab)
        payload = {"mode": _mode([a, bt]), "alpha": enc(a), "beta": enc(bt),
                   "d1": enc(d1), "d2": enc(d2), "fiber": fib}
    else:
        raise ParseError("give --b and --c, --alpha and --beta, or --sweep")
    return Output(payload, _invariant_rows(payload), payload["mode"])


def cmd_pr_fiber(args):
    a, bt = _uniform([_scalar(args.alpha, "alpha"), _scalar(args.beta, "beta")])
    fib, items = _fiber_payload(AlphaBeta(a, bt))
    rows = [{"b": show(f.b), "c": show(f.c), "multiplicity": f.multiplicity} for f in fib]
    return Output({"mode": _mode([a, bt]), "alpha": enc(a), "beta": enc(bt), "fiber": items},
                  rows, _mode([a, bt]))


def cmd_realize(args):
    p = _p_arg(args.p)
    v1, v2, v3 = fricke.realize_triple(p, tol=args.realize_tol, seed=args.seed)
    got = fricke.p_invariants(v1, v2, v3, tol=args.realize_tol)
    res = max(abs(complex(a) - complex(b)) for a, b in zip(got, p))
    payload = {"triple": fricke.triple_to_json(v1, v2, v3), "residual": float(res)}
    rows = [{"vector": name, **{f"e{i + 1}": show(x) for i, x in enumerate(v.c[1:])}}
            for name, v in (("v1", v1), ("v2", v2), ("v3", v3))]
    return Output(payload, rows, scalars.FLOAT)


def cmd_fano_group(args):
    points = range(1, 8) if args.all_points else [args.point]
    results = {}
    for k in points:
        results[k] = fano.point_closure(k, args.max_group)
    if args.all_points:
        payload = {"points": {str(k): r.to_json() for k, r in results.items()}}
    else:
        payload = results[args.point].to_json()
    rows = []
    for k, r in results.items():
        for order, count in sorted(r.element_orders.items()):
            rows.append({"point": k, "group_order": r.order, "element_order": order, "count": count})
    return Output(payload, rows, scalars.EXACT)


def cmd_weyl(args):
    if args.torus:
        vals = _uniform(_list(args.torus, 2, "torus"))
        orbit = g2.weyl_orbit(vals)
        base = g2.torus_alpha_beta(orbit[0][1])
        items, rows = [], []
        worst = 0.0
        for word, t in orbit:
            ab = g2.torus_alpha_beta(t)
            worst = max(worst, float(max(abs(complex(x) - complex(y)) for x, y in zip(ab, base))))
            items.append({"word": list(word), "torus": [enc(t.a1), enc(t.a2)],
                          "alpha_beta": [enc(ab.alpha), enc(ab.beta)]})
            rows.append({"word": " ".join(word) or "id", "a1": show(t.a1), "a2": show(t.a2),
                         "alpha": show(ab.alpha), "beta": show(ab.beta)})
        payload = {"mode": _mode(vals), "size": len(orbit), "orbit": items, "max_residual": worst}
        return Output(payload, rows, payload["mode"])
    if not args.theta:
        raise ParseError("give --theta t1,t2,t3,t4 or --torus a1,a2")
    theta = _uniform(_list(args.theta, 4, "theta"))
    m = sl2.theta_to_m(theta)
    params = sl2.fricke_params(*m)
    tri = sl2.triality(theta)
    payload = {"theta": [enc(t) for t in theta], "m": [enc(x) for x in m],
               "params": [enc(x) for x in params],
               "triality": {"theta": [enc(t) for t in tri],
                            "params": [enc(x) for x in sl2.params_of_theta(tri)]}}
    if args.root:
        rho = _uniform(_list(args.root, 4, "root"))
        img = sl2.reflect(theta, rho)
        payload["reflection"] = {"root": [enc(r) for r in rho], "theta": [enc(t) for t in img],
                                 "params": [enc(x) for x in sl2.params_of_theta(img)]}
    rep = sl2.affine_weyl_check(theta, args.tolerance)
    payload["affine_weyl"] = {"reflection_residual": rep.reflection_residual,
                              "translation_residual": rep.translation_residual,
                              "relative_residual": rep.relative_residual,
                              "failures": len(rep.failures)}
    out = Output(payload, _invariant_rows(payload), _mode(theta))
    if rep.failures:
        out.exit_code = EXIT_VERIFY
    return out


def cmd_verify(args):
    checks = verify.run(args.suite, seed=args.seed, tol=args.tolerance)
    ok = all(c.passed for c in checks)
    payload = {"suite": args.suite, "passed": ok, "checks": [c.to_json() for c in checks]}
    rows = [{"suite": c.suite, "check": c.name, "result": "PASS" if c.passed else "FAIL",
             "residual": "" if c.residual is None else show(c.residual), "detail": c.detail}
            for c in checks]
    out = Output(payload, rows)
    if not ok:
        out.exit_code = EXIT_VERIFY
    return out


# -- parser -------------------------------------------------------------------------

def _positive(kind):
    def parse(text):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
        if not value > 0:
            raise argparse.ArgumentTypeError("must be positive")
        return value
    return parse


def _global_options(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tolerance", type=_positive(float), default=d(None),
                        help="absolute tolerance for floating comparisons "
                             "(default: $G2CUBICS_TOLERANCE or 1e-9)")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--format", choices=("json", "csv", "table"), default=d("json"))
    parser.add_argument("--max-orbit", type=_positive(int), default=d(10_000))
    parser.add_argument("--max-group", type=_positive(int), default=d(10**5))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="g2cubics", description="G2 character varieties and Fricke cubic surfaces")
    parser.add_argument("--version", action="version", version=__version__)
    _global_options(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", parents=[common], help="p, (x, y, z, b), c and alpha, beta")
    p.add_argument("--triple", help="triple JSON file ('-' for stdin)")
    p.add_argument("--fano-point", type=int, choices=range(1, 8))
    p.add_argument("--p", help="p1,p2,p3,p4")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("braid-orbit", parents=[common], help="enumerate a braid group orbit")
    p.add_argument("--level", choices=("matrix", "oct", "p", "xyz"), default="p")
    p.add_argument("--start", help="p1,p2,p3,p4 or x,y,z")
    p.add_argument("--b", help="surface parameter for the xyz level")
    p.add_argument("--triple", help="triple JSON file for the oct / matrix levels")
    p.add_argument("--fano-point", type=int, choices=range(1, 8))
    p.set_defaults(func=cmd_braid_orbit)

    p = sub.add_parser("loci", parents=[common], help="discriminant and singular locus values")
    for name in ("b", "c", "alpha", "beta"):
        p.add_argument(f"--{name}")
    p.add_argument("--sweep", help="b=lo:hi:n,c=lo:hi:n or alpha=lo:hi:n,beta=lo:hi:n")
    p.set_defaults(func=cmd_loci)

    p = sub.add_parser("pr-fiber", parents=[common], help="the (b, c) over a given (alpha, beta)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(func=cmd_pr_fiber)

    p = sub.add_parser("realize", parents=[common], help="a numeric triple with given p")
    p.add_argument("--p", required=True, help="p1,p2,p3,p4")
    p.add_argument("--realize-tol", type=_positive(float), default=1e-8)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("fano-group", parents=[common], help="exact closure of a Fano point's generators")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", type=int, choices=range(1, 8))
    g.add_argument("--all-points", action="store_true")
    p.set_defaults(func=cmd_fano_group)

    p = sub.add_parser("weyl", parents=[common], help="D4 affine Weyl and G2 Weyl invariance")
    p.add_argument("--theta", help="t1,t2,t3,t4")
    p.add_argument("--root", help="a root r1,r2,r3,r4 to reflect in")
    p.add_argument("--torus", help="a1,a2: G2 Weyl orbit of a torus point")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", nargs="?", default="all", choices=(*verify.SUITES, "all"))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tolerance is not None:
            config.set_tolerance(args.tolerance)
        out = args.func(args)
    except ParseError as exc:
        print(f"g2cubics: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _PRECONDITION as exc:
        print(f"g2cubics: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (OrbitTruncated, ClosureTruncated) as exc:
        print(f"g2cubics: truncated: {exc}", file=sys.stderr)
        return EXIT_TRUNCATED
    except RealizationFailed as exc:
        print(f"g2cubics: realisation failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    print(out.render(args.format))
    return getattr(out, "exit_code", EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
