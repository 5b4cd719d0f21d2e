"""Run every verification suite on each catalog group and tabulate the outcome."""
import argparse
import time

from orbitkit.nilgroup import standard_catalog
from orbitkit.suites import run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=243)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-v", "--verbose", action="store_true", help="list every check")
    args = ap.parse_args()

    print(f"{'group':<28} {'order':>6} {'checks':>7} {'passed':>7} {'sec':>7}")
    all_ok = True
    for B in standard_catalog(args.max_order):
        t0 = time.perf_counter()
        rep = run_suite(B, "all", seed=args.seed)
        dt = time.perf_counter() - t0
        n_ok = sum(c.passed for c in rep.checks)
        all_ok &= rep.passed
        print(f"{B.name:<28} {B.order:>6} {len(rep.checks):>7} {n_ok:>7} {dt:>7.2f}")
        if args.verbose or not rep.passed:
            for c in rep.checks:
                print(f"    {'ok ' if c.passed else 'BAD'} {c.name}: {c.detail}")
        for s in rep.skipped:
            print(f"    skipped {s}")
    print("all suites passed" if all_ok else "FAILURES above")
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
