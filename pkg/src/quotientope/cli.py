"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 internal verification failure,
4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import counting, graphs
from .analysis import (
    bipartite_probe,
    build_quotient_graph,
    class_degree,
    degree_histogram,
    is_regular,
    is_vertex_transitive,
)
from .classes import compute_classes
from .errors import BudgetExceededError, InvalidInputError, QuotientopeError, VerificationError
from .fences import (
    Congruence,
    congruence_from_json,
    congruence_to_json,
    enumerate_essential_congruences,
    format_fences,
    parse_fences,
    reduced_diagram,
)
from .genj import build_representatives, hamilton_path, is_cyclic_order
from .patterns import WellBehavedSet, avoid_set, congruence_from_patterns, is_tame, parse_patterns
from .perm import format_perm

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BUDGET = 0, 2, 3, 4

DESCRIPTION = """\
Lattice congruences of the weak order on S_n.

A congruence is given by exactly one of
  --fences "a-b:{x,y};..."   generating fences in terse syntax (closed downward)
  --diagram FILE.json        {"n":4,"fences":[{"a":2,"b":4,"left":[3]}],"generators":true}
  --patterns "2[31],..."     a well-behaved set of vincular patterns
Omitting all three means the empty congruence (the weak order itself).
"""

EPILOG = """\
commands:
  hampath   print a Hamilton path of the quotient graph, one representative per line
  count     print a count: congruences, regular, vertex-transitive, vt-noniso, noniso
  analyze   JSON report on the quotient graph (degrees, regularity, transitivity, ...)
  export    quotient graph as DOT or JSON
  table1    the table of counts and degrees as TSV; cells are value:source or ?
  patterns  list the avoiders of a pattern set and the congruence it induces

exit status: 0 ok, 2 invalid input, 3 internal verification failure, 4 budget exceeded
"""


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="size of the ground set")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--fences", help="generating fences, e.g. '1-3:{2};2-4:{}'")
    g.add_argument("--diagram", help="JSON file with n, fences and generators flag")
    g.add_argument("--patterns", help="comma-separated vincular patterns, e.g. '2[41]3,3[41]2'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quotientope",
        description=DESCRIPTION,
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hampath", help="Hamilton path via Algorithm J")
    _add_source(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--annotate", action="store_true", help="append '# class=<id>' to each line")

    p = sub.add_parser("count", help="counts of quotient graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--what", required=True,
                   choices=["congruences", "regular", "vertex-transitive", "vt-noniso", "noniso"])
    p.add_argument("--verify", action="store_true", help="re-derive the count by enumeration (n <= 5)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")

    p = sub.add_parser("analyze", help="JSON report on one quotient graph")
    _add_source(p)
    p.add_argument("--cycle-budget", type=int, default=2_000_000)

    p = sub.add_parser("export", help="quotient graph as DOT or JSON")
    _add_source(p)
    p.add_argument("--format", choices=["dot", "json", "classes"], default="dot")

    p = sub.add_parser("table1", help="table of counts and degrees (TSV)")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--enumerate-upto", type=int, default=5,
                   help="compute rows by enumeration up to this n (at most 5)")
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")

    p = sub.add_parser("patterns", help="avoiders and the induced congruence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--complete", action="store_true", help="close the set under permuting A and B")
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def load_congruence(args) -> Congruence:
    if args.diagram:
        try:
            with open(args.diagram) as fh:
                c = congruence_from_json(fh.read())
        except OSError as exc:
            raise InvalidInputError(f"cannot read {args.diagram}: {exc}") from None
        if args.n is not None and args.n != c.n:
            raise InvalidInputError(f"--n {args.n} disagrees with n={c.n} in {args.diagram}")
        return c
    if args.n is None:
        raise InvalidInputError("--n is required")
    if args.patterns:
        return congruence_from_patterns(WellBehavedSet.of(parse_patterns(args.patterns)), args.n)
    return Congruence.from_fences(args.n, parse_fences(args.fences or ""))


def cmd_hampath(args, out) -> int:
    c = load_congruence(args)
    part = compute_classes(c)
    path = hamilton_path(c, part)
    if args.format == "json":
        json.dump({"n": c.n, "path": [{"representative": format_perm(p), "class": x}
                                      for p, x in zip(path.representatives, path.classes)]}, out, indent=2)
        out.write("\n")
    else:
        for p, x in zip(path.representatives, path.classes):
            out.write(format_perm(p) + (f"  # class={x}" if args.annotate else "") + "\n")
    return EXIT_OK


def _flags(c: Congruence) -> tuple[int, int]:
    return int(is_regular(c)), int(is_vertex_transitive(c))


def _filtered_counts(n: int, jobs: int) -> tuple[int, int]:
    cs: list[Congruence] = []
    enumerate_essential_congruences(n, cs.append)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            flags = list(ex.map(_flags, cs, chunksize=64))
    else:
        flags = [_flags(c) for c in cs]
    return sum(r for r, _ in flags), sum(v for _, v in flags)


def cmd_count(args, out) -> int:
    n, what = args.n, args.what
    if n < 2:
        raise InvalidInputError("--n must be at least 2")
    if what == "congruences":
        value = counting.count_congruences(n)
    elif what == "regular":
        value = counting.count_regular(n)
    elif what == "vertex-transitive":
        value = counting.count_vertex_transitive(n)
    elif what == "vt-noniso":
        value = counting.count_vt_noniso(n)
    else:
        q, r = counting.count_noniso(n)
        out.write(f"{q}\t{r}\n")
        return EXIT_OK
    if args.verify:
        if n > 5:
            raise BudgetExceededError("--verify enumerates and is limited to n <= 5")
        if what == "congruences":
            check = enumerate_essential_congruences(n)
        elif what == "vt-noniso":
            check = counting.count_noniso_detail(n).vertex_transitive
        else:
            regs, vts = _filtered_counts(n, args.jobs)
            check = regs if what == "regular" else vts
        if check != value:
            raise VerificationError(f"formula gives {value} but enumeration gives {check}")
    out.write(f"{value}\n")
    return EXIT_OK


def analyze_report(c: Congruence, cycle_budget: int = 2_000_000) -> dict:
    part = compute_classes(c)
    g = build_quotient_graph(part)
    for x in range(part.count):
        if class_degree(part, x) != len(g.adj[x]):
            raise VerificationError(f"degree formula fails for class {x}")
    report = {
        "n": c.n,
        "fences": format_fences(reduced_diagram(c).arcs),
        "essential": c.is_essential,
        "classes": part.count,
        "edges": g.edge_count,
        "degree_histogram": {str(k): v for k, v in degree_histogram(g).items()},
        "min_degree": min(g.degrees) if g.count else 0,
        "max_degree": max(g.degrees) if g.count else 0,
        "regular": is_regular(c) if c.is_essential else None,
        "vertex_transitive": is_vertex_transitive(c) if c.is_essential else None,
    }
    bip, conj = bipartite_probe(c)
    report["bipartite"] = bip
    report["bipartite_conjecture_predicts"] = conj
    if c.n <= 8:
        parity, cyclic = is_cyclic_order(c)
        report["cycle_parity_condition"] = parity
        report["algorithm_j_path_is_cyclic"] = cyclic
    if c.n <= 9:
        path = hamilton_path(c, part)
        cyc = graphs.find_hamilton_cycle(g.adj, hint=path.classes, budget=cycle_budget)
        report["hamilton_cycle_found"] = cyc is not None
    return report


def cmd_analyze(args, out) -> int:
    c = load_congruence(args)
    json.dump(analyze_report(c, args.cycle_budget), out, indent=2)
    out.write("\n")
    return EXIT_OK


def cmd_export(args, out) -> int:
    c = load_congruence(args)
    part = compute_classes(c)
    part.representatives = build_representatives(c).class_map(part)
    g = build_quotient_graph(part)
    if args.format == "dot":
        out.write(g.to_dot(part))
    elif args.format == "json":
        json.dump({**g.to_json(part), "congruence": congruence_to_json(c)}, out, indent=2)
        out.write("\n")
    else:
        out.write(part.dumps() + "\n")
    return EXIT_OK


def cmd_table1(args, out) -> int:
    rows = counting.table1(args.max_n, args.enumerate_upto)
    if args.format == "json":
        json.dump({k: [None if c.value is None else {"value": c.value, "source": c.source} for c in v]
                   for k, v in rows.items()}, out, indent=2)
        out.write("\n")
    else:
        out.write(counting.format_table1(rows))
    return EXIT_OK


def cmd_patterns(args, out) -> int:
    pats = parse_patterns(args.patterns)
    avoiders = avoid_set(args.n, pats)
    result = {
        "n": args.n,
        "patterns": [{"pattern": str(t), "tame": is_tame(t)} for t in pats],
        "avoiders": len(avoiders),
    }
    try:
        P = WellBehavedSet.of(pats, complete=args.complete)
    except InvalidInputError as exc:
        result["well_behaved"] = False
        result["reason"] = str(exc)
    else:
        c = congruence_from_patterns(P, args.n)
        result["well_behaved"] = True
        result["completed_set"] = sorted(str(t) for t in P.patterns)
        result["congruence"] = format_fences(reduced_diagram(c).arcs)
        result["classes"] = compute_classes(c).count if args.n <= 9 else None
    if args.format == "json":
        result["avoider_list"] = [format_perm(p) for p in avoiders]
        json.dump(result, out, indent=2)
        out.write("\n")
    else:
        for k, v in result.items():
            out.write(f"# {k}: {v}\n")
        for p in avoiders:
            out.write(format_perm(p) + "\n")
    return EXIT_OK


COMMANDS = {
    "hampath": cmd_hampath,
    "count": cmd_count,
    "analyze": cmd_analyze,
    "export": cmd_export,
    "table1": cmd_table1,
    "patterns": cmd_patterns,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"internal verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except QuotientopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
