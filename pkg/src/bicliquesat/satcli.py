"""Minimal competition-style SAT solver front end backed by PySAT.

    python -m bicliquesat.satcli [--solver glucose4] FILE.cnf

Prints ``s SATISFIABLE`` plus ``v`` lines (exit 10) or
``s UNSATISFIABLE`` (exit 20), so it can serve as the ``{cnf}`` command
for :func:`bicliquesat.encoder.solve_external`.
"""

import argparse
import sys

from .dimacs import read_cnf


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="bicliquesat-sat", description=__doc__.split("\n")[0])
    parser.add_argument("cnf")
    parser.add_argument("--solver", default="glucose4", help="PySAT solver name (default: glucose4)")
    args = parser.parse_args(argv)
    try:
        from pysat.solvers import Solver
    except ImportError:
        print("c python-sat is not installed (pip install 'bicliquesat[sat]')", file=sys.stderr)
        return 1
    formula = read_cnf(args.cnf)
    if any(not clause for clause in formula.clauses):
        print("s UNSATISFIABLE")
        return 20
    with Solver(name=args.solver, bootstrap_with=[list(c) for c in formula.clauses]) as solver:
        if not solver.solve():
            print("s UNSATISFIABLE")
            return 20
        model = solver.get_model() or []
    # variables absent from every clause are not reported by the solver
    values = {abs(lit): lit for lit in model}
    lits = [values.get(v, -v) for v in range(1, formula.n_vars + 1)]
    print("s SATISFIABLE")
    for i in range(0, len(lits), 20):
        print("v " + " ".join(map(str, lits[i:i + 20])))
    print("v 0")
    return 10


if __name__ == "__main__":
    sys.exit(main())
