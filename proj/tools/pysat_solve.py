#!/usr/bin/env python3
"""Competition-style wrapper around python-sat: `pysat_solve.py file.cnf`."""
import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main():
    cnf = CNF(from_file=sys.argv[1])
    with Solver(name="cadical153", bootstrap_with=cnf.clauses) as s:
        if not s.solve():
            print("s UNSATISFIABLE")
            return 20
        print("s SATISFIABLE")
        model = s.get_model() or []
        print("v " + " ".join(str(v) for v in model) + " 0")
        return 10


if __name__ == "__main__":
    sys.exit(main())
