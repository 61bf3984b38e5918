"""Command line front end.

    stskel skeleton --family mst --n 4 --format dot
    stskel clique --family mst --n 5
    stskel solve --variant dcmst --n 4 --k 2 --unit --method both
    stskel verify --check lc-adjacency --n 7 --k 2
    stskel bound --theorem tsp --n 242

Exit codes: 0 success, 1 verification counterexample (or solver
disagreement), 2 argument error, 3 resource limit, 4 I/O error,
5 the optimization problem has no feasible tree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .constructions import (
    BOUND_THEOREMS,
    DegreeFamilySpec,
    LeafFamilySpec,
    clique_bound,
    dc_projection_report,
    dc_transfer_report,
    lc_projection_report,
    lc_transfer_report,
    verify_hp_tsp_merge,
)
from .errors import ResourceLimitError
from .graph import (
    DEFAULT_MAX_N,
    VARIANTS,
    GraphInstance,
    constraint_for,
    enumerate_spanning_trees,
    filter_family,
    load_instance,
    random_instance,
)
from .skeleton import (
    CLIQUE_CSV_COLUMNS,
    DEFAULT_PAIR_BUDGET,
    VertexSet,
    build_skeleton,
    clique_csv_row,
    clique_number,
    integral_hull_scan,
    skeleton_to_dot,
    skeleton_to_json,
)
from .solvers import InfeasibleProblem, model_feasible_set_check, solve_bnb, solve_enumerate

log = logging.getLogger("stskel")

EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_LIMIT, EXIT_IO, EXIT_INFEASIBLE = 0, 1, 2, 3, 4, 5

CHECKS = ("hrep", "mst-clique", "lc-projection", "dc-projection", "lc-adjacency",
          "dc-adjacency", "hp-tsp-merge", "ip-feasible-set")


def _subset(text: Optional[str]) -> Optional[frozenset[int]]:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(v) for v in text.split(","))


def _provenance(argv: Sequence[str], seed=None) -> dict:
    return {"tool": f"stskel {__version__}", "command": "stskel " + " ".join(argv), "seed": seed}


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def family_vertex_set(family: str, n: int, k=None, subset_u=None,
                      max_n: int = DEFAULT_MAX_N) -> VertexSet:
    constraint = constraint_for(family, n, k, subset_u)
    trees = filter_family(enumerate_spanning_trees(n, max_n=max_n), constraint, n=n)
    tag = family.upper()
    if k is not None and family != "mst":
        tag += f"(k={k})"
    if subset_u is not None and family in ("rlsmst", "svmst"):
        tag += f"[U={sorted(subset_u)}]"
    return VertexSet.from_trees(trees, tag)


def _skeleton_for(args):
    vs = family_vertex_set(args.family, args.n, args.k, _subset(args.subset), args.max_n)
    oracle = args.oracle
    if oracle == "auto":
        oracle = "exchange" if args.family == "mst" and args.n >= 6 else "lp"
    skel = build_skeleton(vs, oracle=oracle, max_pairs=args.max_pairs, workers=args.workers)
    return vs, skel


def cmd_skeleton(args, argv) -> int:
    vs, skel = _skeleton_for(args)
    prov = _provenance(argv)
    if args.format == "dot":
        header = "\n".join(f"{k}: {v}" for k, v in prov.items())
        _write(skeleton_to_dot(skel, vs, header=header), args.output)
    elif args.format == "json":
        _write(skeleton_to_json(skel, vs, prov), args.output)
    else:
        raise ValueError("skeleton supports --format dot or json")
    st = skel.stats()
    print(f"vertices={st['vertices']} edges={st['edges']} min_degree={st['min_degree']} "
          f"max_degree={st['max_degree']} oracle={skel.oracle}", file=sys.stderr)
    return EXIT_OK


def cmd_clique(args, argv) -> int:
    vs, skel = _skeleton_for(args)
    omega, witness = clique_number(skel)
    row = clique_csv_row(args.family, args.n, args.k, skel, omega, witness)
    buf = io.StringIO()
    buf.write(f"# {json.dumps(_provenance(argv))}\n")
    writer = csv.DictWriter(buf, fieldnames=CLIQUE_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerow(row)
    _write(buf.getvalue(), args.output)
    return EXIT_OK


def _instance(args) -> GraphInstance:
    subset = _subset(args.subset)
    if args.instance:
        g = load_instance(args.instance)
        if subset is not None:
            g = GraphInstance(g.n, g.weights, subset)
        return g
    if args.n is None:
        raise ValueError("give --instance, or --n with --seed or --unit")
    if args.unit:
        return GraphInstance.unit(args.n, subset)
    if args.seed is None:
        raise ValueError("random weights need --seed (or use --unit)")
    return random_instance(args.n, args.seed, subset)


def cmd_solve(args, argv) -> int:
    g = _instance(args)
    prov = _provenance(argv, args.seed)
    methods = ["enumerate", "bnb"] if args.method == "both" else [args.method]
    results = {}
    for m in methods:
        if m == "enumerate":
            results[m] = solve_enumerate(g, args.variant, args.k, max_n=args.max_n)
        else:
            results[m] = solve_bnb(g, args.variant, args.k)
    main = results[methods[-1]]
    doc = main.to_dict()
    doc["provenance"] = prov
    code = EXIT_INFEASIBLE if isinstance(main, InfeasibleProblem) else EXIT_OK
    if args.method == "both":
        a, b = results["enumerate"], results["bnb"]
        agree = a.status == b.status and getattr(a, "weight", None) == getattr(b, "weight", None)
        doc["method"] = "both"
        doc["agreement"] = agree
        doc["enumerate"] = a.to_dict()
        doc["bnb"] = b.to_dict()
        if not agree:
            code = EXIT_FAIL
    _write(json.dumps(doc, indent=1), args.output)
    return code


def _report_doc(reports: list, argv, check: str) -> dict:
    dicts = [r.to_dict() for r in reports]
    ok = all(r.ok for r in reports)
    return {
        "check": check,
        "pass": ok,
        "pairs_checked": sum(d.get("pairs_checked", 0) for d in dicts),
        "counterexamples": sum(len(d.get("counterexamples", [])) for d in dicts),
        "reports": dicts,
        "provenance": _provenance(argv),
    }


def _leaf_specs(n: int, k: Optional[int]) -> list[LeafFamilySpec]:
    ks = [k] if k is not None else list(range(2, n - 1))
    return [LeafFamilySpec.canonical(n, kk, split) for kk in ks for split in range(1, kk)]


class _Simple:
    """Minimal report wrapper for checks that are not pairwise."""

    def __init__(self, doc: dict, ok: bool):
        self.doc, self.ok = doc, ok

    def to_dict(self) -> dict:
        return self.doc


def cmd_verify(args, argv) -> int:
    check, n, k = args.check, args.n, args.k
    if n is None:
        raise ValueError("verify needs --n")
    reports: list = []
    if check == "hrep":
        scan = integral_hull_scan(n)
        reports.append(_Simple({"lemma": "hrep-integral-points", "params": {"n": n},
                                "candidates_scanned": scan.candidates, "selected": scan.selected,
                                "trees": scan.trees, "pairs_checked": 0,
                                "counterexamples": [] if scan.ok else ["mismatch"]}, scan.ok))
    elif check == "mst-clique":
        oracle = args.oracle if args.oracle != "auto" else ("lp" if n <= 5 else "exchange")
        vs = family_vertex_set("mst", n, max_n=args.max_n)
        skel = build_skeleton(vs, oracle=oracle, max_pairs=args.max_pairs, workers=args.workers)
        omega, witness = clique_number(skel)
        expected = n * n // 4
        reports.append(_Simple({"lemma": "mst-clique-number", "params": {"n": n},
                                "oracle": oracle, "clique_number": omega, "expected": expected,
                                "witness": list(witness), "pairs_checked": 0,
                                "counterexamples": [] if omega == expected else [omega]},
                               omega == expected))
    elif check == "lc-projection":
        reports = [lc_projection_report(s) for s in _leaf_specs(n, k)]
    elif check == "dc-projection":
        reports = [dc_projection_report(DegreeFamilySpec.canonical(n, kk)) for kk in _degree_ks(n, k)]
    elif check == "lc-adjacency":
        reports = [lc_transfer_report(s, args.max_n) for s in _leaf_specs(n, k)]
    elif check == "dc-adjacency":
        reports = [dc_transfer_report(DegreeFamilySpec.canonical(n, kk), args.max_n)
                   for kk in _degree_ks(n, k)]
    elif check == "hp-tsp-merge":
        reports = [verify_hp_tsp_merge(range(n), 0, n - 1)]
    elif check == "ip-feasible-set":
        if args.variant is None:
            raise ValueError("ip-feasible-set needs --variant")
        rep = model_feasible_set_check(n, args.variant, k, _subset(args.subset),
                                       repair=not args.no_repair)
        doc = rep.to_dict()
        doc.update(lemma="ip-feasible-set", pairs_checked=0,
                   counterexamples=rep.extra + rep.missing)
        reports.append(_Simple(doc, rep.ok))
    else:
        raise ValueError(f"unknown check {check!r}")
    if not reports:
        raise ValueError(f"no instances for check {check} with n={n}, k={k}")
    doc = _report_doc(reports, argv, check)
    _write(json.dumps(doc, indent=1, default=str), args.output)
    return EXIT_OK if doc["pass"] else EXIT_FAIL


def _degree_ks(n: int, k: Optional[int]) -> list[int]:
    ks = [k] if k is not None else list(range(2, n))
    return [kk for kk in ks if kk >= 2 and n > 2 and (n - 2) // (kk - 1) >= 2]


def cmd_bound(args, argv) -> int:
    b = clique_bound(args.theorem, n=args.n, k=args.k, u_size=args.u_size, s=args.s)
    doc = b.to_dict()
    doc["provenance"] = _provenance(argv)
    note = "  (vacuous at this scale: bound below 1)" if b.vacuous else ""
    print(f"{b.expression()} = {b.value}{note}")
    if args.output:
        _write(json.dumps(doc, indent=1), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stskel", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"stskel {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True):
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--subset", help="comma separated vertex ids (the set U)")
        p.add_argument("--output", "-o")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                       help="enumeration cap (default %(default)s)")
        p.add_argument("--max-pairs", type=int, default=DEFAULT_PAIR_BUDGET)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--oracle", choices=("auto", "lp", "exchange"), default="auto")
        if family:
            p.add_argument("--family", choices=VARIANTS, required=True)

    p = sub.add_parser("skeleton", help="compute a polytope 1-skeleton")
    common(p)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("clique", help="clique number of a skeleton (CSV row)")
    common(p)
    p.set_defaults(func=cmd_clique)

    p = sub.add_parser("solve", help="solve a constrained spanning tree problem")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--instance", help="instance JSON file")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--subset")
    p.add_argument("--seed", type=int)
    p.add_argument("--unit", action="store_true", help="all weights 1")
    p.add_argument("--method", choices=("enumerate", "bnb", "both"), default="bnb")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run one verification check")
    common(p, family=False)
    p.add_argument("--check", choices=CHECKS, required=True)
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--no-repair", action="store_true",
                   help="build leaf models without the leaf lower-bound rows")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="evaluate a clique-number lower bound")
    p.add_argument("--theorem", choices=BOUND_THEOREMS, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--u-size", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args, argv)
    except ResourceLimitError as exc:
        print(f"stskel: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"stskel: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"stskel: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
