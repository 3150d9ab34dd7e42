"""Command-line entry point: ``paleylab <group> <verb> ...``.

Exit codes: 0 all verdicts pass, 1 a verification failed, 2 usage or
precondition error, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import __version__
from .characters import applicable_cases, gauss_sum, is_pure, is_supersingular, make_character
from .clique import DEFAULT_SOLVER_CAP, ENUMERATION_CAP, CliqueCertificate, clique_check, enumerate_max_cliques_through, t5_bound
from .errors import CapExceeded, PaleyLabError, PreconditionError
from .field import field_of_order, format_poly, make_field
from .graphs import build_gp, build_peisert, export_graph
from .peisert import h_scan, pec_check
from .reports import atomic_write, cached_max_clique
from . import suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(obj, args, csv_rows=None) -> None:
    if getattr(args, "format", "json") == "csv" and csv_rows is not None:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerows(csv_rows)
    else:
        print(json.dumps(obj, sort_keys=True, indent=2))


def _graph(args):
    F = field_of_order(args.q)
    if args.kind == "gp":
        if args.d is None:
            raise UsageError("GP graphs need d")
        return build_gp(F, args.d)
    return build_peisert(F)


def _cache(args):
    return False if getattr(args, "no_cache", False) else None


# ---------------------------------------------------------------------------
# field


def cmd_field_info(args) -> int:
    F = make_field(args.p, args.s)
    print(f"field: F_{F.q} = F_{F.p}[x]/({format_poly(F.modulus)})")
    print(f"modulus: {format_poly(F.modulus)}")
    print(f"generator: {F.generator} ({format_poly(F.coeffs(F.generator))})")
    print(f"descriptor: {F.descriptor}")
    return EXIT_OK


def cmd_field_table(args) -> int:
    F = make_field(args.p, args.s)
    rows = [["index", "coeffs", "log"]]
    for a in range(F.q):
        rows.append([a, " ".join(map(str, F.coeffs(a))), int(F.log_table[a]) if a else ""])
    _emit({"descriptor": F.descriptor, "rows": rows[1:]}, args, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# characters


def cmd_char_gauss(args) -> int:
    F = field_of_order(args.q)
    chi = make_character(F, args.d, args.j)
    G = gauss_sum(chi)
    order = chi.order
    forms = applicable_cases(F.p, F.s, order) if order > 1 else []
    matches = {cf.case: cf.matches(G.value) for cf in forms}
    _emit(
        {
            "character": chi.provenance(),
            "value": G.value.serialize(),
            "rational": None if G.value.as_rational() is None else str(G.value.as_rational()),
            "closed_forms": {cf.case: str(cf) for cf in forms},
            "matches": matches,
        },
        args,
    )
    return EXIT_OK if all(matches.values()) else EXIT_FAIL


def cmd_char_pure(args) -> int:
    F = field_of_order(args.q)
    res = is_pure(make_character(F, args.d, args.j))
    _emit({"q": args.q, "d": args.d, "j": args.j, "pure": res.pure, "exponent": res.exponent}, args)
    return EXIT_OK


def cmd_char_supersingular(args) -> int:
    t = is_supersingular(args.p, args.d)
    _emit({"p": args.p, "d": args.d, "supersingular": t is not None, "t": t}, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# graphs and cliques


def cmd_graph_build(args) -> int:
    G = _graph(args)
    _emit({"manifest": G.manifest(), "vertices": G.n, "edges": G.edge_count, "degree": G.degree(0)}, args)
    return EXIT_OK


def cmd_graph_export(args) -> int:
    G = _graph(args)
    fmt, target = ("dimacs", args.dimacs) if args.dimacs else ("json", args.json)
    data = export_graph(G, fmt)
    if target in (None, "-"):
        sys.stdout.write(data.decode("ascii"))
    else:
        atomic_write(Path(target), data.decode("ascii"))
        print(target)
    return EXIT_OK


def cmd_clique_solve(args) -> int:
    G = _graph(args)
    cert = cached_max_clique(G, _cache(args), cap=DEFAULT_SOLVER_CAP if args.cap is None else args.cap)
    _emit(cert.to_dict(with_time=False), args)
    return EXIT_OK


def cmd_clique_check(args) -> int:
    G = _graph(args)
    if args.certificate:
        cert = CliqueCertificate.from_json(Path(args.certificate).read_text())
        S = list(cert.witness)
        ok = cert.verify(G)
    else:
        S = args.set or []
        ok = clique_check(G, S, args.mode)
    _emit({"set": S, "mode": args.mode, "result": ok}, args)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_clique_enumerate(args) -> int:
    G = _graph(args)
    cl = enumerate_max_cliques_through(G, tuple(args.anchors), cap=ENUMERATION_CAP if args.cap is None else args.cap)
    _emit({"anchors": args.anchors, "count": len(cl), "cliques": [list(c) for c in cl]}, args)
    return EXIT_OK


def cmd_clique_t5bound(args) -> int:
    _emit({"p": args.p, "q": args.q, "d": args.d, "bound": t5_bound(args.p, args.q, args.d)}, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# peisert


def cmd_peisert_scan(args) -> int:
    F = field_of_order(args.q)
    if F.s % 4:
        raise PreconditionError(f"F_{args.q} does not have degree divisible by 4")
    rep = h_scan(build_peisert(F), args.r or F.s // 4)
    _emit(rep.to_dict(), args, rep.csv_rows())
    return EXIT_OK if rep.disagreements == 0 else EXIT_FAIL


def cmd_peisert_pec(args) -> int:
    G = build_peisert(field_of_order(args.q))
    S = args.set if args.set is not None else sorted(G.field.subfield(G.field.s // 2))
    res = pec_check(G, S)
    _emit({"set": S, "vanishing": res.vanishing, "clique": res.clique, "agree": res.agree}, args)
    return EXIT_OK if res.agree else EXIT_FAIL


# ---------------------------------------------------------------------------
# verify


def _finish(reports, args) -> int:
    out = Path(args.out)
    failed = []
    for rep in reports:
        path = rep.write(out, args.format)
        print(f"{rep.summary_line()}  -> {path}")
        failed.extend({"suite": rep.suite, **c.to_dict()} for c in rep.failures())
    if failed:
        print(json.dumps({"failed": failed}, sort_keys=True), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    cache = _cache(args)
    what = args.suite
    if what == "main":
        reps = [suites.verify_main(args.q or suites.MAIN_GRID, jobs=args.jobs, cache=cache)]
    elif what == "fourier":
        qs = args.q or [9, 25, 49]
        reps = []
        for q in qs:
            r = math.isqrt(q)
            ds = args.d or [d for d in range(2, r + 2) if (r + 1) % d == 0]
            reps += [suites.verify_fourier(q, d) for d in ds]
    elif what == "gauss":
        reps = [suites.verify_gauss_formulas(args.bound, cache=cache)]
    elif what == "inequalities":
        reps = [suites.verify_inequalities(args.trials, args.seed, args.q or suites.INEQUALITY_FIELDS, cache=cache)]
    elif what == "peisert":
        reps = [suites.verify_peisert(args.q or suites.PEISERT_FIELDS, args.samples, args.seed, cache=cache)]
    else:
        reps = suites.verify_all(jobs=args.jobs, cache=cache, seed=args.seed)
    return _finish(reps, args)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--cap", type=int, default=None, help=f"vertex cap (solver default {DEFAULT_SOLVER_CAP}, enumeration {ENUMERATION_CAP})")
    common.add_argument("--no-cache", action="store_true", help="ignore the clique cache")

    ap = argparse.ArgumentParser(prog="paleylab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"paleylab {__version__}")
    groups = ap.add_subparsers(dest="group", required=True)

    def verb(group, name, fn, help_=None):
        p = group.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    def graph_args(p, d_optional=True):
        p.add_argument("kind", choices=("gp", "peisert"))
        p.add_argument("q", type=int)
        p.add_argument("d", type=int, nargs="?" if d_optional else None)

    g = groups.add_parser("field", help="finite field tables").add_subparsers(dest="verb", required=True)
    for name, fn in (("info", cmd_field_info), ("table", cmd_field_table)):
        p = verb(g, name, fn)
        p.add_argument("p", type=int)
        p.add_argument("s", type=int)

    g = groups.add_parser("char", help="characters and Gauss sums").add_subparsers(dest="verb", required=True)
    for name, fn in (("gauss", cmd_char_gauss), ("pure", cmd_char_pure)):
        p = verb(g, name, fn)
        p.add_argument("q", type=int)
        p.add_argument("d", type=int)
        p.add_argument("--j", type=int, default=1, help="use chi^j")
    p = verb(g, "supersingular", cmd_char_supersingular)
    p.add_argument("p", type=int)
    p.add_argument("d", type=int)

    g = groups.add_parser("graph", help="Cayley graph construction").add_subparsers(dest="verb", required=True)
    graph_args(verb(g, "build", cmd_graph_build))
    p = verb(g, "export", cmd_graph_export)
    graph_args(p)
    dest = p.add_mutually_exclusive_group()
    dest.add_argument("--dimacs", metavar="PATH")
    dest.add_argument("--json", metavar="PATH")

    g = groups.add_parser("clique", help="exact clique computations").add_subparsers(dest="verb", required=True)
    graph_args(verb(g, "solve", cmd_clique_solve))
    p = verb(g, "check", cmd_clique_check)
    graph_args(p)
    p.add_argument("--set", type=_ints)
    p.add_argument("--certificate", metavar="PATH")
    p.add_argument("--mode", choices=("is_clique", "is_maximal"), default="is_clique")
    p = verb(g, "enumerate", cmd_clique_enumerate)
    graph_args(p)
    p.add_argument("--anchors", type=_ints, default=[0, 1])
    p = verb(g, "t5bound", cmd_clique_t5bound)
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("d", type=int)

    g = groups.add_parser("peisert", help="Peisert graph criteria").add_subparsers(dest="verb", required=True)
    p = verb(g, "scan", cmd_peisert_scan)
    p.add_argument("q", type=int)
    p.add_argument("--r", type=int)
    p = verb(g, "pec", cmd_peisert_pec)
    p.add_argument("q", type=int)
    p.add_argument("--set", type=_ints)

    g = groups.add_parser("verify", help="run verification suites").add_subparsers(dest="suite", required=True)
    for name in ("main", "fourier", "gauss", "inequalities", "peisert", "all"):
        p = verb(g, name, cmd_verify)
        p.add_argument("--q", type=_ints)
        p.add_argument("--d", type=_ints)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--bound", type=int, default=361, help="largest q for the Gauss-sum grid")
        p.add_argument("--out", default="reports", help="report directory")
        p.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except CapExceeded as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_CAP
    except (UsageError, PreconditionError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except PaleyLabError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
