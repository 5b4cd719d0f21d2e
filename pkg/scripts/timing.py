"""Wall-clock cost of each pipeline stage as the group grows."""
import argparse
import time

from orbitkit.groupspec import load_spec
from orbitkit.lazard import E_ring, L_group
from orbitkit import oracle
from orbitkit.orbits import orbit_character_table, orbit_method

DEFAULT = ["heisenberg:3", "heisenberg:5", "extraspecial_exp_p:3,2", "heisenberg:7", "heisenberg:11",
           "heisenberg:13"]


def build(src):
    B = load_spec(src)
    _ = B.mul_table, B.inv_table, B.conjugacy_classes_idx()
    return B


def round_trip(B):
    ring = L_group(B)
    _ = ring.add_table, ring.bracket_table
    return E_ring(ring).mul_table


def orbits(B):
    om = orbit_method(B)
    _ = om.orbits, om.orbit_stabilizers
    return om


def timed(fn, *a):
    t0 = time.perf_counter()
    out = fn(*a)
    return out, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="*", default=DEFAULT)
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args()

    print(f"{'group':<26} {'order':>6} {'build':>7} {'L/E':>7} {'orbits':>7} {'table':>7} {'oracle':>7}")
    for src in args.groups:
        B, t_build = timed(build, src)
        _, t_le = timed(round_trip, B)
        _, t_orb = timed(orbits, B)
        _, t_tab = timed(orbit_character_table, B)
        skip = args.no_oracle or B.order > oracle.MAX_ORDER
        t_or = float("nan") if skip else timed(oracle.burnside_table, B)[1]
        print(f"{src:<26} {B.order:>6} {t_build:>7.2f} {t_le:>7.2f} {t_orb:>7.2f} {t_tab:>7.2f} {t_or:>7.2f}")


if __name__ == "__main__":
    main()
