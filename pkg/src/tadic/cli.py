"""Command-line interface.

Subcommands: polygon, hasse, lfun, dwork, sweep, verify. Exit codes:
0 success, 1 property violation (or a failing verify), 2 budget refusal,
3 precondition failure. Errors are printed to stderr as one JSON object.

A config file (``--config FILE``) holds ``key = value`` lines using the long
option names without dashes (``p = 11``, ``delta = 0..3``, ``budget = 10000000``);
``#`` starts a comment and explicit flags override the file. ``TADIC_BUDGET``
overrides the default point budget.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import emit
from .errors import PreconditionError, TadicError
from .polygons import Polytope1D

log = logging.getLogger("tadic")

# options whose values may begin with "-" (e.g. --delta -1..1)
_DASH_VALUES = ("--delta", "--coeffs", "--fix")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise PreconditionError(f"{self.prog}: {message}")


def _merge_dash_values(argv):
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _DASH_VALUES:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PreconditionError(f"{path}:{n}: expected key = value")
            key, value = (t.strip() for t in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _budget(args):
    if args.budget is not None:
        return int(args.budget)
    return None  # expsums reads TADIC_BUDGET or its default


def _hypothesis_warning(delta: Polytope1D, p: int):
    if p <= 3 * delta.D:
        log.warning("p = %d <= 3D = %d: theorem guarantees do not apply", p, 3 * delta.D)
        return True
    return False


def _write(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _poly(args):
    from .laurent import LaurentPolyFq

    if not args.coeffs:
        raise PreconditionError("--coeffs is required, e.g. --coeffs 'a(1)=1,a(3)=1'")
    return LaurentPolyFq.parse(args.delta, args.p, args.a, args.coeffs)


def cmd_polygon(args):
    from .polygons import arithmetic_polygon, hodge_polygon

    delta = args.delta
    polys = {}
    if args.kind in ("arithmetic", "both"):
        polys["arithmetic"] = arithmetic_polygon(delta, args.p, args.len)
    if args.kind in ("hodge", "both"):
        polys["hodge_scaled"] = hodge_polygon(delta, args.len).scale(args.p - 1)
    if args.format == "json":
        _write(args, emit.to_json({"delta": str(delta), "p": args.p, "length": args.len,
                                   **{k: v.to_json() for k, v in polys.items()}}) + "\n")
    elif args.format == "svg":
        _write(args, emit.polygon_svg(emit.overlay(delta, args.p, 1, args.len)))
    else:
        header, rows = emit.polygon_rows(polys)
        _write(args, emit.to_csv(header, rows))
    return 0


def cmd_hasse(args):
    from .hasse import hasse_polynomials, hasse_product_eval

    delta = args.delta
    _hypothesis_warning(delta, args.p)
    hs = hasse_polynomials(delta, args.p, upto=args.m)
    result = {"delta": str(delta), "p": args.p, "polynomials": {str(m): h.to_json() for m, h in hs.items()}}
    if args.coeffs:
        f = _poly(args)
        ev = hasse_product_eval(delta, args.p, f)
        result["evaluation"] = {"f": f.describe(), "value": list(ev["value"]), "nonzero": ev["nonzero"],
                                "factors": {str(m): list(v) for m, v in ev["factors"].items()}}
    if args.format == "json":
        _write(args, emit.to_json(result) + "\n")
    else:
        lines = [f"m={m}: {h}" for m, h in hs.items()]
        if args.coeffs:
            ev = result["evaluation"]
            lines.append(f"H({ev['f']}) = {':'.join(map(str, ev['value']))} "
                         f"({'nonzero' if ev['nonzero'] else 'zero'})")
        _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_lfun(args):
    from .expsums import verify_main

    f = _poly(args)
    _hypothesis_warning(f.delta, f.p)
    rep = verify_main(f, args.m, budget=_budget(args), slack=args.slack)
    if args.format == "json":
        _write(args, emit.to_json(rep) + "\n")
    elif args.format == "svg":
        from .polygons import ConvexPolygon

        np_L = ConvexPolygon.from_json({"slopes": rep["np_L"]})
        _write(args, emit.polygon_svg(emit.overlay(f.delta, f.p, f.a, len(np_L), np_L)))
    else:
        _write(args, f"np_slopes: {','.join(rep['np_L'])}\nexpected: {','.join(rep['expected'])}\n"
                     f"equal: {int(rep['equal'])}\nhasse_nonzero: {int(rep['hasse_nonzero'])}\n")
    return 0


def cmd_dwork(args):
    from . import dwork
    from .hasse import genericity_turning_points
    from .polygons import arithmetic_polygon

    f = _poly(args)
    delta, p, a = f.delta, f.p, f.a
    violated = _hypothesis_warning(delta, p)
    ms = genericity_turning_points(delta, p)
    upto = args.upto_m if args.upto_m is not None else max(ms + [1])
    P = arithmetic_polygon(delta, p, upto)
    X = args.pi_cutoff if args.pi_cutoff is not None else a * P.value(upto) + 1
    N = args.prec_p + dwork.fredholm_reserve(upto, p)
    Mx = dwork.psi_matrix(f, N, X, args.deg_bound)
    coeffs = dwork.fredholm_coeffs(Mx, min(upto, Mx.size))
    per_m = []
    for c in coeffs:
        order = c.order(unit=True)
        per_m.append({"m": c.k, "unit_order": None if order == float("inf") else str(order),
                      "order": None if c.order() == float("inf") else str(c.order()),
                      "target": str(a * P.value(c.k)), "p_precision": c.p_precision,
                      "leading_at_target": list(c.leading(a * P.value(c.k)))})
    out = {"f": f.describe(), "p": p, "a": a, "delta": str(delta), "basis_size": Mx.size,
           "pi_cutoff": str(Mx.pi_cutoff), "deg_bound": str(Mx.basis.bound), "prec_p": N,
           "hypothesis_violated": violated, "coefficients": per_m}
    if a == 1:
        out["minors"] = [{**r, "leading": list(r["leading"])}
                         for r in (dwork.minor_leading(f, m) for m in ms)]
    if not violated:
        out["certificate"] = dwork.certify_all_m(f, N=args.prec_p).to_json()
    if args.trace_k:
        out["trace_formula"] = [dwork.verify_trace_formula(f, k, N=args.prec_p + 1, M=args.trace_M,
                                                           budget=_budget(args))
                                for k in range(1, args.trace_k + 1)]
    _write(args, emit.to_json(out) + "\n")
    return 0


def cmd_sweep(args):
    from .finite_fields import field_create
    from .laurent import parse_terms
    from .sweep import sweep

    delta = args.delta
    _hypothesis_warning(delta, args.p)
    fixed = parse_terms(args.fix, field_create(args.p, args.a)) if args.fix else {}
    res = sweep(delta, args.p, args.a, args.m, fixed=fixed, sample=args.sample, seed=args.seed,
                workers=args.workers, budget=_budget(args), slack=args.slack)
    if args.format == "csv":
        header = ["coeffs", "hasse_value", "hasse_nonzero", "np_slopes", "equal", "consistent"]
        rows = [[r.coeffs, ":".join(map(str, r.hasse_value)), int(r.hasse_nonzero),
                 " ".join(r.np_slopes), int(r.equal), "" if r.consistent is None else int(r.consistent)]
                for r in res.rows]
        _write(args, emit.to_csv(header, rows))
    else:
        _write(args, emit.to_json(res.to_json()) + "\n")
    return 1 if res.inconsistent else 0


def cmd_verify(args):
    from .acceptance import run_criterion

    selected = sorted(int(x) for x in args.only.split(",")) if args.only else None
    from .acceptance import CRITERIA

    results = []
    for n in selected or sorted(CRITERIA):
        r = run_criterion(n, budget=_budget(args))
        results.append(r)
        print(r.line(), flush=True)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2, default=str)
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skip")}
    print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped")
    return 1 if counts["fail"] else 0


def _delta(text):
    return Polytope1D.parse(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tadic", description="T-adic exponential sums in one variable.")
    parser.add_argument("--config", help="key = value defaults file")
    parser.add_argument("--log-level", default="WARNING")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, coeffs=True):
        sp.add_argument("--p", type=int, required=True, help="the prime")
        sp.add_argument("--delta", type=_delta, required=True, help="interval -e..d, e.g. -1..1")
        sp.add_argument("--a", type=int, default=1, help="q = p^a")
        if coeffs:
            sp.add_argument("--coeffs", help="a(u)=value,... ; value an index or c0:c1:...")
        sp.add_argument("--budget", type=int, help="max point evaluations")
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("polygon", help="arithmetic and Hodge polygons")
    common(sp, coeffs=False)
    sp.add_argument("--len", type=int, default=None, help="number of slopes (default 3 Vol)")
    sp.add_argument("--kind", choices=("arithmetic", "hodge", "both"), default="arithmetic")
    sp.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    sp.set_defaults(func=cmd_polygon)

    sp = sub.add_parser("hasse", help="Hasse polynomials at the turning points")
    common(sp)
    sp.add_argument("--m", type=int, default=None, help="list turning points up to m (default: below Vol)")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_hasse)

    sp = sub.add_parser("lfun", help="exact L-function by point counting")
    common(sp)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--slack", type=int, default=2, help="extra sums used to confirm the degree")
    sp.add_argument("--format", choices=("json", "text", "svg"), default="json")
    sp.set_defaults(func=cmd_lfun)

    sp = sub.add_parser("dwork", help="truncated Dwork operator and certificates")
    common(sp)
    sp.add_argument("--deg-bound", type=str, default=None, help="basis degree bound (default: minimal)")
    sp.add_argument("--prec-p", type=int, default=1, help="p-adic digits wanted in the results")
    sp.add_argument("--pi-cutoff", type=str, default=None, help="pi-adic truncation order")
    sp.add_argument("--upto-m", type=int, default=None, help="Fredholm coefficients c_1..c_m")
    sp.add_argument("--trace-k", type=int, default=0, help="check the trace formula for k = 1..K")
    sp.add_argument("--trace-M", type=int, default=6, help="T-adic precision of that check")
    sp.set_defaults(func=cmd_dwork)

    sp = sub.add_parser("sweep", help="census of Hasse value against NP equality")
    common(sp, coeffs=False)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--fix", help="pinned coefficients, e.g. a(3)=1")
    sp.add_argument("--sample", type=int, default=None, help="random subset of this size")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--slack", type=int, default=2)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the acceptance corpus")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--json", help="also write the report here")
    sp.set_defaults(func=cmd_verify)
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    conv = {"delta": _delta}
    for action in parser._subparsers._group_actions[0].choices.values():
        dests = {a.dest: a for a in action._actions}
        defaults = {}
        for k, v in values.items():
            if k in dests:
                a = dests[k]
                if k in conv:
                    v = conv[k](v)
                elif a.type is not None:
                    v = a.type(v)
                defaults[k] = v
                a.required = False
        action.set_defaults(**defaults)


def main(argv=None) -> int:
    argv = _merge_dash_values(list(sys.argv[1:] if argv is None else argv))
    try:
        parser = build_parser()
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                            format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        if not getattr(args, "command", None):
            parser.print_help()
            return 3
        for req in ("p", "delta"):
            if hasattr(args, req) and getattr(args, req) is None:
                raise PreconditionError(f"--{req} is required")
        if getattr(args, "len", 0) is None:
            args.len = 3 * args.delta.vol
        return args.func(args)
    except TadicError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), default=str) + "\n")
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "OSError", "message": str(exc)}) + "\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
