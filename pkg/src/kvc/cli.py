"""Command-line interface (``kvc``).

Exit codes: 0 success, 1 a verified property failed, 2 malformed input,
3 refused by a scale guard (``--force`` lifts the guards).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .bounds import bound_report, max_leaf_spanning_tree
from .config import DEFAULT_LIMITS
from .corpus import SWEEP_FIELDS, bounds_sweep, random_graphs
from .exceptions import InputFormatError, ScaleGuardError, VerificationError
from .graph import connected_components, induced_subgraph
from .io import dumps_json, load_graph
from .reductions import (
    MulticoverInstance,
    assignment_from_shattered_set,
    monotone1in3_to_planar_graph,
    multicover_to_graph,
    shattered_set_from_assignment,
    verify_multicover_reduction,
)
from .sat import formula_to_dict, make_monotone, read_cnf_dimacs, read_formula_json, solve_1in3
from .shatter import (
    certify_shattered,
    is_shattered_bruteforce,
    validate_certificate,
    vc_at_least,
    vc_dimension,
)


class PropertyViolation(Exception):
    """A check run by the CLI failed; the report is still printed."""

    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read file: {exc.strerror}", source=str(path)) from None


def _graph(path):
    _read_text(path)
    return load_graph(path)


def _formula(path):
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        return read_formula_json(text, source=str(path))
    return read_cnf_dimacs(text, source=str(path)), None


def _vertex_list(text: str):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputFormatError(f"--set must be comma-separated integers, got {text!r}") from None


def _limits(args):
    return DEFAULT_LIMITS.unlimited() if getattr(args, "force", False) else DEFAULT_LIMITS


def _stamp(args, payload: dict) -> dict:
    if getattr(args, "force", False):
        payload["warning"] = "scale guards disabled by --force"
    return payload


# ---------------------------------------------------------------------------
# subcommands

def cmd_vc_compute(args):
    G = _graph(args.graph)
    limits = _limits(args)
    if args.mode == "decision":
        if args.s is None:
            raise InputFormatError("--mode decision needs --s")
        result = vc_at_least(G, args.k, args.s, twin_pruning=not args.no_twins, limits=limits)
    else:
        result = vc_dimension(G, args.k, twin_pruning=not args.no_twins, limits=limits)
    if result.certificate is not None:
        validate_certificate(G, result.certificate)
    return _stamp(args, result.to_json())


def cmd_vc_shattered(args):
    G = _graph(args.graph)
    A = _vertex_list(args.set)
    if args.oracle:
        return _stamp(args, {"A": sorted(set(A)), "k": args.k, "shattered": is_shattered_bruteforce(G, A, args.k, _limits(args)), "method": "bruteforce"})
    cert = certify_shattered(G, A, args.k, twins="auto" if args.twins else None)
    out = {"A": sorted(set(A)), "k": args.k, "shattered": cert is not None, "method": "poly"}
    if cert is not None:
        validate_certificate(G, cert)
        out["certificate"] = cert.to_json()
    return _stamp(args, out)


def cmd_bounds(args):
    G = _graph(args.graph)
    limits = _limits(args)
    if not args.per_component:
        return _stamp(args, bound_report(G, args.k, args.ell_mode, limits).to_json())
    reports = []
    for comp in connected_components(G):
        if len(comp) < 2:
            continue
        H, _ = induced_subgraph(G, comp)
        rep = bound_report(H, args.k, args.ell_mode, limits).to_json()
        rep["component"] = sorted(comp)
        reports.append(rep)
    if not reports:
        raise InputFormatError("no component has two or more vertices")
    best = {}
    for key in ("ell", "upper_kcon", "lower_turan", "lower_con", "lower_thm5"):
        values = [r[key] for r in reports if r[key] is not None]
        best[key] = max(values) if values else None
    return _stamp(args, {"components": reports, "max": best})


def cmd_mls(args):
    G = _graph(args.graph)
    return _stamp(args, max_leaf_spanning_tree(G, args.mode, _limits(args)).to_json())


def cmd_sat_solve(args):
    F, _ = _formula(args.formula)
    a = solve_1in3(F, _limits(args))
    return _stamp(args, {"satisfiable": a is not None, "assignment": None if a is None else list(a)})


def cmd_sat_monotone(args):
    F, L = _formula(args.formula)
    if L is None:
        raise InputFormatError("sat monotone needs a formula with a layout (JSON with \"order\")")
    F2, L2, steps = make_monotone(F, L)
    out = formula_to_dict(F2, L2)
    out["steps"] = [s.to_json() for s in steps]
    return _stamp(args, out)


def _write_dot(args, gg):
    if args.dot:
        Path(args.dot).write_text(gg.to_dot())


def cmd_reduce_multicover(args):
    try:
        data = json.loads(_read_text(args.instance))
        inst = MulticoverInstance.from_json(data, args.k, args.t)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc.msg}", exc.lineno, args.instance) from None
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"malformed multicover instance: {exc}", source=args.instance) from None
    gg = multicover_to_graph(inst)
    _write_dot(args, gg)
    out = gg.to_json()
    if args.verify:
        report = verify_multicover_reduction(inst, _limits(args))
        out["verification"] = report
        if not report["agree"]:
            raise PropertyViolation(_stamp(args, out))
    return _stamp(args, out)


def cmd_reduce_planar(args):
    F, L = _formula(args.formula)
    if L is None:
        raise InputFormatError("reduce planar needs a formula with a monotone layout")
    gg = monotone1in3_to_planar_graph(F, L, args.p)
    _write_dot(args, gg)
    out = gg.to_json()
    if args.verify_forward:
        a = solve_1in3(F, _limits(args))
        check = {"satisfiable": a is not None}
        if a is not None:
            V = shattered_set_from_assignment(gg, a, debug=True)
            cert = certify_shattered(gg.graph, V, 2, twins="auto")
            check.update(assignment=list(a), size=len(V), shattered=cert is not None)
            if cert is not None:
                validate_certificate(gg.graph, cert)
                check["decoded"] = list(assignment_from_shattered_set(gg, V))
            ok = cert is not None and len(V) >= gg.threshold and tuple(check["decoded"]) == tuple(a)
            check["ok"] = ok
            out["forward"] = check
            if not ok:
                raise PropertyViolation(_stamp(args, out))
        else:
            out["forward"] = check
    return _stamp(args, out)


def cmd_corpus_sweep(args):
    graphs = random_graphs(args.trials, args.seed, args.n, args.n)
    ks = [int(x) for x in args.k.split(",")]
    rows = bounds_sweep(graphs, ks)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: "" if v is None else v for k, v in r.items()})
    if not all(r["ok"] for r in rows):
        raise PropertyViolation(buf.getvalue())
    return buf.getvalue()


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kvc", description="VC dimension of k-connected subgraph families")
    parser.add_argument("--out", help="write the result here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--force", action="store_true", help="lift scale guards")

    vc = sub.add_parser("vc").add_subparsers(dest="action", required=True)
    p = vc.add_parser("compute")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "decision"), default="exact")
    p.add_argument("--s", type=int)
    p.add_argument("--no-twins", action="store_true", help="disable twin pruning")
    common(p)
    p.set_defaults(func=cmd_vc_compute)
    p = vc.add_parser("shattered")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    p.add_argument("--twins", action="store_true", help="twin-compressed certificate")
    common(p)
    p.set_defaults(func=cmd_vc_shattered)

    p = sub.add_parser("bounds")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell-mode", choices=("exact", "greedy"), default="exact")
    p.add_argument("--per-component", action="store_true")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("mls")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    common(p)
    p.set_defaults(func=cmd_mls)

    sat = sub.add_parser("sat").add_subparsers(dest="action", required=True)
    p = sat.add_parser("solve1in3")
    p.add_argument("--formula", required=True)
    common(p)
    p.set_defaults(func=cmd_sat_solve)
    p = sat.add_parser("monotone")
    p.add_argument("--formula", required=True)
    p.set_defaults(func=cmd_sat_monotone)

    red = sub.add_parser("reduce").add_subparsers(dest="action", required=True)
    p = red.add_parser("multicover")
    p.add_argument("--instance", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--dot")
    common(p)
    p.set_defaults(func=cmd_reduce_multicover)
    p = red.add_parser("planar")
    p.add_argument("--formula", required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--verify-forward", action="store_true")
    p.add_argument("--dot")
    common(p)
    p.set_defaults(func=cmd_reduce_planar)

    corpus = sub.add_parser("corpus").add_subparsers(dest="action", required=True)
    p = corpus.add_parser("bounds-sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", default="1,2,3", help="comma-separated k values")
    p.set_defaults(func=cmd_corpus_sweep)
    return parser


def _emit(args, result):
    text = result if isinstance(result, str) else dumps_json(result)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except PropertyViolation as exc:
        _emit(args, exc.payload)
        print("error: verification failed", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"error: verification failed: {exc}", file=sys.stderr)
        return 1
    except ScaleGuardError as exc:
        print(f"error: refused: {exc} (use --force to override)", file=sys.stderr)
        return 3
    except (InputFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(args, result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
