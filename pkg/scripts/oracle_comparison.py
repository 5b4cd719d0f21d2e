"""Compare orbit-method character tables with the class-sum oracle across seeds."""
import argparse
from collections import Counter

import numpy as np

from orbitkit.groupspec import load_spec
from orbitkit.oracle import burnside_table, match_tables, self_check
from orbitkit.orbits import orbit_character_table

DEFAULT = ["abelian:[3,9]", "heisenberg:3", "heisenberg:3*abelian:[3]", "heisenberg:5", "extraspecial_exp_p:3,2",
           "heisenberg:7"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="*", default=DEFAULT)
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()

    print(f"{'group':<28} {'classes':>7} {'degrees':<22} {'max dev':>9} {'seed spread':>11} {'orth':>9}")
    for src in args.groups:
        B = load_spec(src)
        ours = orbit_character_table(B)
        tables = [burnside_table(B, seed=s) for s in range(args.seeds)]
        devs = [match_tables(ours, t).max_deviation for t in tables]
        spread = max(np.abs(t.values - tables[0].values).max() for t in tables)
        chk = self_check(tables[0], B.order)
        degs = ", ".join(f"{d}x{n}" for d, n in sorted(Counter(ours.degrees).items()))
        print(f"{src:<28} {len(ours.degrees):>7} {degs:<22} {max(devs):>9.1e} {spread:>11.1e} "
              f"{max(chk.row_orthogonality, chk.column_orthogonality):>9.1e}")


if __name__ == "__main__":
    main()
