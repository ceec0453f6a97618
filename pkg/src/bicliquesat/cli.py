"""Command line interface.

Exit status: 0 success or positive verdict, 1 negative verdict, 2 usage
error, 3 runtime error.
"""

import argparse
import logging
import os
import sys

from .cover import USEFUL_SEED_SIZE, Strategy, find_cover, validate_cover
from .dimacs import ParseError, format_cnf, format_graph, parse_cnf, parse_graph
from .encoder import SOLVER_ENV, CatalogMode, SolveStatus, decode_model, encode_cover, enumerate_bicliques, solve_external
from .graph import incidence_graph, random_formula, random_graph
from .harness import Axis, SweepConfig, compare_sat, emit_outputs, sweep_cover, sweep_matched, thresholds
from .matching import assignment_from_matching, maximum_matching
from .oracle import OracleRefused, brute_force_sat
from .rng import Rng

log = logging.getLogger("bicliquesat")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


def _load(path):
    """Return ``(graph, formula_or_None)`` from a bigraph or DIMACS file."""
    text = sys.stdin.read() if path == "-" else open(path, encoding="ascii").read()
    for line in text.splitlines():
        parts = line.split()
        if parts and parts[0] == "p":
            if len(parts) > 1 and parts[1] == "cnf":
                formula = parse_cnf(text)
                return incidence_graph(formula), formula
            break
    return parse_graph(text), None


def _output(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _t_arg(value):
    t = int(value)
    if t == 1 or t < 0:
        raise argparse.ArgumentTypeError("t must be 0 (unbounded) or at least 2")
    return t or None


def cmd_gen(args):
    rng = Rng(args.seed)
    graph = random_graph(args.n, args.m, args.k, rng)
    if args.format == "cnf":
        _output(format_cnf(random_formula(graph, rng)), args.output)
    else:
        _output(format_graph(graph), args.output)
    return EXIT_OK


def cmd_match(args):
    graph, formula = _load(args.input)
    matching = maximum_matching(graph)
    if len(matching) < graph.n_alive_right:
        print(f"NOT MATCHED (maximum matching {len(matching)} of {graph.n_alive_right} clauses)")
        return EXIT_NEGATIVE
    print("MATCHED")
    if formula is not None:
        values = assignment_from_matching(formula, matching)
        print("v " + " ".join(str(v + 1 if val else -(v + 1)) for v, val in enumerate(values)) + " 0")
    else:
        for c, v in sorted(matching.pairs.items()):
            print(f"m {v + 1} {c + 1}")
    return EXIT_OK


def cmd_cover(args):
    graph, _ = _load(args.input)
    strategy = Strategy(args.strategy)
    min_right = 1 if args.all_seeds else USEFUL_SEED_SIZE
    cover = find_cover(graph, args.t, strategy, Rng(args.seed), seed_min_right=min_right)
    if cover is None:
        print("FAIL")
        return EXIT_NEGATIVE
    sys.stdout.write(cover.format())
    return EXIT_OK


def _catalog(args, graph):
    mode = CatalogMode.FULL if args.full else CatalogMode.CANONICAL
    return enumerate_bicliques(graph, args.k, mode)


def cmd_encode(args):
    graph, _ = _load(args.input)
    catalog = _catalog(args, graph)
    cnf = encode_cover(graph, catalog)
    lines = [f"c bounded {args.k}-biclique cover encoding, {len(catalog)} candidate bicliques"]
    lines += [f"c x{i} = {b.format()}" for i, b in enumerate(catalog.entries, 1)] if args.comment_entries else []
    _output("\n".join(lines) + "\n" + format_cnf(cnf), args.output)
    return EXIT_OK


def cmd_solve(args):
    graph, _ = _load(args.input)
    catalog = _catalog(args, graph)
    cnf = encode_cover(graph, catalog)
    command = args.solver_cmd or os.environ.get(SOLVER_ENV)
    if command:
        outcome = solve_external(cnf, command, args.timeout)
        status, model = outcome.status, outcome.model
        if status in (SolveStatus.TIMEOUT, SolveStatus.SOLVER_ERROR):
            print(status.value)
            if outcome.output:
                log.error("solver output:\n%s", outcome.output.strip())
            return EXIT_RUNTIME
    else:
        model = brute_force_sat(cnf)
        status = SolveStatus.SAT if model is not None else SolveStatus.UNSAT
    if status is SolveStatus.UNSAT:
        print("UNSAT")
        return EXIT_NEGATIVE
    cover = decode_model(catalog, model)
    print("SAT")
    sys.stdout.write(cover.format())
    return EXIT_OK


def _config(args):
    extra = {}
    if hasattr(args, "t"):
        extra.update(t=args.t, strategy=Strategy(args.strategy))
    if hasattr(args, "solver_cmd"):
        extra.update(solver_command=args.solver_cmd or os.environ.get(SOLVER_ENV), timeout=args.timeout)
    config = SweepConfig.grid(
        args.n, args.k_from, args.k_to, args.ratio_from, args.ratio_to, args.ratio_step,
        trials=args.trials, master_seed=args.seed, workers=args.workers, **extra,
    )
    config.validate()
    return config


def _report(result, axis):
    for row in result.rows:
        print(f"n={row.n} m={row.m} k={row.k} ratio={row.ratio} {row.successes}/{row.trials} "
              f"rate={row.rate:.3f} mean={row.mean_time * 1e3:.2f}ms")
    label = "k" if axis is Axis.RATIO else "ratio"
    for key, iv in thresholds(result, axis).items():
        flag = "" if iv.monotone else " (non-monotone)"
        print(f"threshold {label}={key}: low={iv.low} high={iv.high}{flag}")


def cmd_sweep_matched(args):
    result = sweep_matched(_config(args))
    _report(result, Axis.RATIO)
    emit_outputs(result, args.csv, args.pgm)
    return EXIT_OK


def cmd_sweep_cover(args):
    result = sweep_cover(_config(args))
    _report(result, Axis.DEGREE)
    emit_outputs(result, args.csv, args.pgm)
    return EXIT_OK


def cmd_compare(args):
    config = _config(args)
    rows = compare_sat(config)
    lines = ["n,m,k,ratio,trials,heuristic,sat_true,sat_finished,mean_time_ratio,max_time_ratio"]
    for r in rows:
        print(f"k={r.k} ratio={r.ratio}: {r.triple}  time ratio avg/max "
              f"{r.mean_time_ratio:.3g}/{r.max_time_ratio:.3g}")
        if r.contradictions:
            print(f"  WARNING: heuristic succeeded on {r.contradictions} instances the solver proved UNSAT")
        lines.append(f"{r.n},{r.m},{r.k},{r.ratio},{r.trials},{r.heuristic},{r.sat_true},{r.sat_finished},"
                     f"{r.mean_time_ratio:.6g},{r.max_time_ratio:.6g}")
    if args.csv:
        _output("\n".join(lines) + "\n", args.csv)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="bicliquesat", description="Matched and biclique satisfiable CNF recognition.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a random graph or formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["graph", "cnf"], default="graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("match", help="matched verdict with witness")
    p.add_argument("input")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("cover", help="run the biclique cover heuristic")
    p.add_argument("input")
    p.add_argument("--t", type=_t_arg, default=2, help="max left size per biclique, 0 = unbounded")
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="rand")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--all-seeds", action="store_true", help="also use seeds with fewer than 3 clauses")
    p.set_defaults(func=cmd_cover)

    for name, func, help_ in (("encode", cmd_encode, "write the cover SAT encoding"),
                              ("solve", cmd_solve, "decide cover existence with a SAT solver")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input")
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--full", action="store_true", help="list every bounded right part, not only maximal ones")
        if name == "encode":
            p.add_argument("-o", "--output")
            p.add_argument("--comment-entries", action="store_true")
        else:
            p.add_argument("--solver-cmd", help=f"command template with {{cnf}}; default ${SOLVER_ENV}")
            p.add_argument("--timeout", type=float)
        p.set_defaults(func=func)

    for name, func in (("sweep-matched", cmd_sweep_matched), ("sweep-cover", cmd_sweep_cover), ("compare", cmd_compare)):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k-from", type=int, required=True)
        p.add_argument("--k-to", type=int, required=True)
        p.add_argument("--ratio-from", required=True)
        p.add_argument("--ratio-to", required=True)
        p.add_argument("--ratio-step", default="0.01")
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--csv")
        if name != "compare":
            p.add_argument("--pgm")
        if name != "sweep-matched":
            p.add_argument("--t", type=_t_arg, default=2)
            p.add_argument("--strategy", choices=[s.value for s in Strategy], default="rand")
        if name == "compare":
            p.add_argument("--solver-cmd")
            p.add_argument("--timeout", type=float)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParseError, OracleRefused, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
