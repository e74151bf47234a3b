"""Command-line interface: parse inputs, dispatch, emit CSV or JSON."""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import edf, gfun, verify
from .crg import Crg, krs, parse_crg
from .embed import clique_spectrum, embeds
from .errors import DomainError, ParseError
from .graphs import SimpleGraph, named_graph, parse_graph


def _fmt(x: float) -> str:
    return f"{x:.9f}"


def _graph_from_args(args) -> SimpleGraph:
    if getattr(args, "graph_file", None):
        with open(args.graph_file, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    return named_graph(args.graph)


def _crg_from_args(args) -> Crg:
    if getattr(args, "crg_file", None):
        with open(args.crg_file, encoding="utf-8") as fh:
            return parse_crg(fh.read())
    m = re.fullmatch(r"k(\d+),(\d+)", args.crg.strip())
    if not m:
        raise ValueError(f"CRG shorthand must look like k<r>,<s>, got {args.crg!r}")
    return krs(int(m.group(1)), int(m.group(2)))


def _forbidden_from_args(args) -> tuple[SimpleGraph, ...]:
    tokens = [t for t in args.forbid.split(",") if t]
    if not tokens:
        raise ValueError("--forbid needs at least one graph token")
    return tuple(named_graph(t) for t in tokens)


def _emit_curve(rows) -> None:
    print("p,value,witness")
    for p, value, witness in rows:
        print(f"{_fmt(p)},{_fmt(value)},{witness}")


def cmd_g(args) -> int:
    K = _crg_from_args(args)
    sol = gfun.g(K, args.p)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "value": round(sol.value, 9),
                    "weights": [round(w, 9) for w in sol.weights],
                    "support": list(sol.support),
                    "kkt_gap": round(sol.kkt_gap, 12),
                }
            )
        )
    else:
        print(_fmt(sol.value))
    return 0


def cmd_f(args) -> int:
    K = _crg_from_args(args)
    value = gfun.f(K, args.p)
    if args.format == "json":
        print(json.dumps({"value": round(value, 9)}))
    else:
        print(_fmt(value))
    return 0


def cmd_embed(args) -> int:
    H = _graph_from_args(args)
    K = _crg_from_args(args)
    witness = embeds(H, K)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "embeds": witness is not None,
                    "witness": list(witness) if witness is not None else None,
                }
            )
        )
    else:
        print("none" if witness is None else " ".join(str(v) for v in witness))
    return 0


def cmd_spectrum(args) -> int:
    forbidden = _forbidden_from_args(args)
    spectrum = clique_spectrum(forbidden)
    points = spectrum.points()
    if args.format == "json":
        print(
            json.dumps(
                {
                    "extreme_points": [list(pt) for pt in points],
                    "chi": spectrum.chi,
                    "cochi": spectrum.cochi,
                    "chi_b": spectrum.chi_b,
                }
            )
        )
    else:
        print("extreme_points," + " ".join(f"{r}:{s}" for r, s in points))
        print(f"chi,{spectrum.chi}")
        print(f"cochi,{spectrum.cochi}")
        print(f"chi_b,{spectrum.chi_b}")
    return 0


def cmd_gamma(args) -> int:
    forbidden = _forbidden_from_args(args)
    if args.grid is not None:
        rows = []
        for i in range(1, args.grid + 1):
            p = i / (args.grid + 1)
            value, (r, s) = edf.gamma(forbidden, p)
            rows.append((p, value, f"K({r},{s})"))
        if args.format == "json":
            print(
                json.dumps(
                    [{"p": round(p, 9), "value": round(v, 9), "witness": w} for p, v, w in rows]
                )
            )
        else:
            _emit_curve(rows)
    else:
        value, (r, s) = edf.gamma(forbidden, args.p)
        if args.format == "json":
            print(json.dumps({"value": round(value, 9), "witness": f"K({r},{s})"}))
        else:
            print(f"{_fmt(value)},K({r},{s})")
    return 0


def cmd_edf(args) -> int:
    forbidden = _forbidden_from_args(args)
    if args.grid is not None:
        curve = edf.edf_curve(forbidden, args.grid, args.max_k)
        if args.format == "json":
            print(
                json.dumps(
                    [
                        {"p": round(r.p, 9), "value": round(r.value, 9), "witness": r.witness}
                        for r in curve.rows
                    ]
                )
            )
        else:
            _emit_curve(curve.rows)
    else:
        value, K = edf.edf_upper(forbidden, args.p, args.max_k)
        tag = edf.witness_tag(K)
        if args.format == "json":
            sol = gfun.g(K, args.p)
            print(
                json.dumps(
                    {
                        "value": round(value, 9),
                        "witness": tag,
                        "witness_weights": [round(w, 9) for w in sol.weights],
                    }
                )
            )
        else:
            print(f"{_fmt(value)},{tag}")
    return 0


def cmd_maximize(args) -> int:
    forbidden = _forbidden_from_args(args)
    curve = edf.edf_curve(forbidden, args.grid, args.max_k)
    mp = edf.maximize(curve)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "p_star_lo": round(mp.p_star_lo, 9),
                    "p_star_hi": round(mp.p_star_hi, 9),
                    "d_star": round(mp.d_star, 9),
                    "p_star": round(mp.p_star, 9),
                }
            )
        )
    else:
        print("p_star_lo,p_star_hi,d_star,p_star")
        print(
            f"{_fmt(mp.p_star_lo)},{_fmt(mp.p_star_hi)},"
            f"{_fmt(mp.d_star)},{_fmt(mp.p_star)}"
        )
    return 0


def cmd_dist(args) -> int:
    G = _graph_from_args(args)
    forbidden = _forbidden_from_args(args)
    value = edf.dist_exact(G, forbidden)
    if args.format == "json":
        print(json.dumps({"distance": value}))
    else:
        print(value)
    return 0


def cmd_pcore(args) -> int:
    K = _crg_from_args(args)
    report = gfun.is_p_core(K, args.p)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "is_core": report.is_core,
                    "g": round(report.g_value, 9),
                    "screen_ok": report.screen_ok,
                    "screen_failures": list(report.screen_failures),
                    "weights": [round(w, 9) for w in report.weights]
                    if report.weights is not None
                    else None,
                    "violating_subset": list(report.violating_subset)
                    if report.violating_subset is not None
                    else None,
                }
            )
        )
    else:
        print(f"is_core,{'true' if report.is_core else 'false'}")
        print(f"g,{_fmt(report.g_value)}")
        print(f"screen,{'pass' if report.screen_ok else 'fail'}")
        if report.weights is not None:
            print("weights," + " ".join(_fmt(w) for w in report.weights))
        if report.violating_subset is not None:
            print("violating_subset," + " ".join(str(v) for v in report.violating_subset))
    return 0


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite)
    failed = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        if not ok:
            failed += 1
        print(f"{status} {name} ({detail})")
    print(f"SUMMARY {len(results) - failed}/{len(results)} passed")
    return 0 if failed == 0 else 1


def _add_crg_arg(sp) -> None:
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--crg", help="CRG shorthand k<r>,<s> for the all-gray K(r,s)")
    group.add_argument("--crg-file", help="path to a CRG file")


def _add_graph_arg(sp) -> None:
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph", help="graph token C<h>, K<h> or E<h>")
    group.add_argument("--graph-file", help="path to a graph file")


def _add_format_arg(sp) -> None:
    sp.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edfkit",
        description="Edit distance functions of hereditary graph properties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("g", help="quadratic functional of a CRG at p")
    _add_crg_arg(sp)
    sp.add_argument("--p", type=float, required=True)
    _add_format_arg(sp)
    sp.set_defaults(func=cmd_g)

    sp = sub.add_parser("f", help="linear functional of a CRG at p")
    _add_crg_arg(sp)
    sp.add_argument("--p", type=float, required=True)
    _add_format_arg(sp)
    sp.set_defaults(func=cmd_f)

    sp = sub.add_parser("embed", help="embedding witness of a graph into a CRG")
    _add_graph_arg(sp)
    _add_crg_arg(sp)
    _add_format_arg(sp)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("spectrum", help="clique spectrum of a forbidden set")
    sp.add_argument("--forbid", required=True, help="comma-separated graph tokens")
    _add_format_arg(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("gamma", help="spectrum-based upper bound")
    sp.add_argument("--forbid", required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=float)
    group.add_argument("--grid", type=int)
    _add_format_arg(sp)
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("edf", help="searched upper bound on the edit distance function")
    sp.add_argument("--forbid", required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=float)
    group.add_argument("--grid", type=int)
    sp.add_argument("--max-k", type=int, default=edf.DEFAULT_MAX_K)
    _add_format_arg(sp)
    sp.set_defaults(func=cmd_edf)

    sp = sub.add_parser("maximize", help="maximum of the upper-bound curve")
    sp.add_argument("--forbid", required=True)
    sp.add_argument("--max-k", type=int, default=edf.DEFAULT_MAX_K)
    sp.add_argument("--grid", type=int, default=edf.DEFAULT_GRID)
    _add_format_arg(sp)
    sp.set_defaults(func=cmd_maximize)

    sp = sub.add_parser("dist", help="exact edit distance of a small graph")
    _add_graph_arg(sp)
    sp.add_argument("--forbid", required=True)
    _add_format_arg(sp)
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("pcore", help="p-core test with certificate")
    _add_crg_arg(sp)
    sp.add_argument("--p", type=float, required=True)
    _add_format_arg(sp)
    sp.set_defaults(func=cmd_pcore)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    sp.set_defaults(func=cmd_verify)

    return parser


def run(argv: list[str]) -> int:
    """Dispatch one invocation; exit codes: 0 ok, 1 verify fail, 2 usage, 3 domain."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
