#!/usr/bin/env python3
"""Run the three PDE/identity analyzers over their standard parameter grids."""

import sys
from fractions import Fraction

from bianchi_integrals.engine import (
    lemma_dificil_solve,
    lemma_estrella_solve,
    sn_recursion_check,
)


def run():
    ok = True
    print("linear-weight PDE, generic weights (expected: no solutions)")
    for a in ((1, 0, 0), (1, 2, 3), (0, 1, 0)):
        for m in range(1, 5):
            dim = lemma_estrella_solve(*map(Fraction, a), Fraction(1, 2), m).dimension
            ok &= dim == 0
            print("  a=%s degree=%d dim=%d" % (a, m, dim))
    print("hard PDE (expected: one solution, g=0, h=c*(x4-x6)^n)")
    for n in range(2, 6):
        sol = lemma_dificil_solve(Fraction(1, 2), n)
        ok &= sol.dimension == 1 and sol.conforms
        print("  n=%d dim=%d conforms=%s" % (n, sol.dimension, sol.conforms))
    print("recursion identity")
    for n in range(2, 7):
        passed = sn_recursion_check(n)
        ok &= passed
        print("  n=%d holds=%s" % (n, passed))
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(run())
