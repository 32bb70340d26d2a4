"""Sweep small multiplicity families and cross-check every computation route.

For each matrix the script verifies, all exactly:
  * the annihilating operators kill the residue volume,
  * the operator kernel at the volume degree is the volume line and the
    kernel one degree higher is empty,
  * lifting the restricted volume reproduces the direct residue,
  * the corner coefficient has its predicted value,
and for a few interior points it compares the volume value against the
lattice-count leading coefficient.

Usage: python scripts/cross_validate.py [--max-rank 3] [--max-mult 2]
"""

import argparse
import sys
import time
from itertools import product

from flowvol import (
    MultiplicityMatrix,
    compare_volume,
    iterated_residue,
    lift_volume,
    pde_system,
    solution_space,
)


def family(max_rank, max_mult):
    for rank in range(2, max_rank + 1):
        count = rank * (rank + 1) // 2
        for mult in product(range(1, max_mult + 1), repeat=count):
            yield MultiplicityMatrix(rank, mult)


def check_matrix(m, with_kernel=True):
    problems = []
    v = iterated_residue(m)
    if not all(op.apply(v.poly).is_zero for op in pde_system(m).ops):
        problems.append("annihilation")
    if with_kernel:
        basis = solution_space(m, m.degree)
        if len(basis) != 1 or basis[0] != v.poly:
            problems.append("kernel")
        if solution_space(m, m.degree + 1):
            problems.append("kernel-above")
    if lift_volume(iterated_residue(m.restriction()), m).poly != v.poly:
        problems.append("lift")
    if v.poly.coefficient(m.corner_exponents) != m.corner_value:
        problems.append("corner")
    return problems


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=3)
    parser.add_argument("--max-mult", type=int, default=2)
    parser.add_argument("--skip-kernel", action="store_true",
                        help="skip the linear-algebra kernel checks (faster at high degree)")
    args = parser.parse_args(argv)

    started = time.perf_counter()
    checked = failed = 0
    for m in family(args.max_rank, args.max_mult):
        problems = check_matrix(m, with_kernel=not args.skip_kernel)
        checked += 1
        if problems:
            failed += 1
            print(f"FAIL rank={m.rank} m={m.mult}: {', '.join(problems)}")
    print(f"matrix sweep: {checked} matrices checked, {failed} failures "
          f"({time.perf_counter() - started:.2f}s)")

    oracle_cases = [
        MultiplicityMatrix(2, (1, 1, 1)),
        MultiplicityMatrix(2, (2, 1, 1)),
        MultiplicityMatrix(3, (1, 1, 2, 1, 2, 2)),
    ]
    mismatches = 0
    for m in oracle_cases:
        for a in product((1, 2), repeat=m.rank):
            outcome = compare_volume(m, a)
            status = "ok" if outcome.matches else "MISMATCH"
            if not outcome.matches:
                mismatches += 1
            print(f"oracle rank={m.rank} m={m.mult} a={a}: "
                  f"{outcome.residue_value} vs {outcome.count_value} [{status}]")
    print(f"oracle sweep: {mismatches} mismatches "
          f"({time.perf_counter() - started:.2f}s total)")
    return 1 if failed or mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
