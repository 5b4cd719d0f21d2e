"""Command-line interface: ``orbitkit {catalog,chartable,orbits,verify,export}``.

GROUP arguments are catalog shorthand (``heisenberg:3``), a JSON spec file, or
an inline JSON spec.

Exit codes: 0 success, 1 verification failure, 2 invalid spec, 3 even order
(not 2-divisible), 4 nilpotency class above 2, 5 character table mismatch.
A dense group-algebra request above the size budget exits 1.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .cyclo import format_complex
from .errors import (BudgetExceeded, CenterMismatch, ClassTooLarge, EvenPrime, InvalidSpec, NoBijection,
                     NotTwoDivisible, NotTwoRootable)
from .groupspec import load_spec, to_spec
from .nilgroup import Class2Group, standard_catalog
from .oracle import burnside_table, default_seed, match_tables
from .orbits import CharacterTable, orbit_character_table, orbit_method
from .suites import SUITES, run_suite

EXIT_FAIL, EXIT_SPEC, EXIT_EVEN, EXIT_CLASS, EXIT_MISMATCH = 1, 2, 3, 4, 5
MATCH_TOL = 1e-6


def require_scope(B: Class2Group) -> None:
    """Odd order and nilpotency class at most 2, or a precise error."""
    if not B.A.is_two_divisible() or B.order % 2 == 0:
        raise NotTwoDivisible(f"|B| = {B.order} is even (A = {list(B.A.moduli)}, C = {list(B.C.moduli)}); "
                              "the Lie correspondence needs a 2-divisible centre")
    if not B.is_class_at_most_two():
        raise ClassTooLarge("some commutator is not central")


def _load(source: str, check_scope=True) -> Class2Group:
    B = load_spec(source)
    if check_scope:
        require_scope(B)
    return B


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _elem(B: Class2Group, i: int) -> str:
    return str(B.element(i))


# ---------------------------------------------------------------------------
# table rendering
# ---------------------------------------------------------------------------


def table_csv(B: Class2Group, table: CharacterTable, exact: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree"] + [_elem(B, r) for r in table.class_reps])
    w.writerow(["class_size"] + list(table.class_sizes))
    for k, d in enumerate(table.degrees):
        if exact and table.exact is not None:
            cells = [v.render() for v in table.exact[k]]
        else:
            cells = [format_complex(complex(z)) for z in table.values[k]]
        w.writerow([d] + cells)
    return buf.getvalue()


def table_dict(B: Class2Group, table: CharacterTable, exact: bool) -> dict:
    if exact and table.exact is not None:
        rows = [[v.to_json() for v in row] for row in table.exact]
    else:
        rows = [[format_complex(complex(z)) for z in row] for row in table.values]
    out = {
        "group": B.name or repr(B),
        "order": B.order,
        "class_reps": [_elem(B, r) for r in table.class_reps],
        "class_sizes": list(table.class_sizes),
        "degrees": list(table.degrees),
        "values": rows,
    }
    if table.labels is not None:
        out["orbit_representatives"] = table.labels
    return out


def render_table(B, table, fmt: str, exact: bool) -> str:
    if fmt == "csv":
        return table_csv(B, table, exact)
    return json.dumps(table_dict(B, table, exact), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_catalog(args) -> int:
    lines = [f"{'name':<28} {'order':>6} {'classes':>8}"]
    for B in standard_catalog(args.max_order):
        lines.append(f"{B.name:<28} {B.order:>6} {len(B.conjugacy_classes_idx()):>8}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_chartable(args) -> int:
    B = _load(args.group)
    table = orbit_character_table(B)
    _emit(render_table(B, table, args.format, args.exact), args.out)
    if not args.oracle:
        return 0
    seed = default_seed() if args.seed is None else args.seed
    ref = burnside_table(B, seed=seed)
    oracle_out = args.oracle_out or (f"{args.out}.oracle" if args.out else None)
    text = render_table(B, ref, args.format, False)
    if oracle_out:
        _emit(text, oracle_out)
    else:
        sys.stdout.write("# oracle\n" + text)
    try:
        rep = match_tables(table, ref, tol=MATCH_TOL)
    except NoBijection as err:
        sys.stderr.write(f"diff: no bijection within {MATCH_TOL:g}: {err}\n")
        return EXIT_MISMATCH
    sys.stderr.write(f"diff: {len(rep.mapping)} rows matched, max deviation {rep.max_deviation:.3e}\n")
    return 0


def cmd_orbits(args) -> int:
    B = _load(args.group)
    om = orbit_method(B)
    stabs = om.orbit_stabilizers
    if args.format == "json":
        rows = [{
            "representative": list(o.representative.t),
            "size": o.size,
            "dimension": om.dimension(k),
            "stabilizer_order": int(len(stabs[k])),
            "dual": om.dual_index(k),
        } for k, o in enumerate(om.orbits)]
        text = json.dumps({"group": B.name or repr(B), "additive_group": list(om.G.moduli), "orbits": rows},
                          indent=2, sort_keys=True) + "\n"
    else:
        sizes = [o.size for o in om.orbits]
        dims = [om.dimension(k) for k in range(len(om.orbits))]
        lines = [f"group: {B.name or repr(B)} (order {B.order})",
                 f"additive group of L(B): Z/{' x Z/'.join(map(str, om.G.moduli)) or '1'}",
                 f"orbits: {len(sizes)}",
                 f"sizes: {_hist(sizes)}; dims: {_hist(dims)}",
                 f"{'k':>4} {'representative':<24} {'size':>5} {'dim':>4} {'|stab|':>7} {'dual':>5}"]
        for k, o in enumerate(om.orbits):
            lines.append(f"{k:>4} {str(list(o.representative.t)):<24} {o.size:>5} {dims[k]:>4} "
                         f"{len(stabs[k]):>7} {om.dual_index(k):>5}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _hist(values) -> str:
    vals, counts = np.unique(values, return_counts=True)
    return ", ".join(f"{v}×{c}" for v, c in zip(vals.tolist(), counts.tolist()))


def cmd_verify(args) -> int:
    try:
        B = _load(args.group)
    except CenterMismatch as err:
        report = {"suite": args.suite, "group": args.group, "passed": False,
                  "checks": [{"name": "strict_center", "passed": False, "detail": f"CenterMismatch: {err}"}],
                  "skipped": [], "witnesses": [{"check": "strict_center", "witness": list(err.witness)}]}
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
        return EXIT_FAIL
    report = run_suite(B, args.suite, seed=args.seed)
    _emit(report.to_json(), args.out)
    return 0 if report.passed else EXIT_FAIL


def cmd_export(args) -> int:
    B = _load(args.group, check_scope=False)
    _emit(json.dumps(to_spec(B), sort_keys=True) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbitkit", description="Orbit-method character tables of class-2 groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, group=True):
        sp = sub.add_parser(name, help=help)
        if group:
            sp.add_argument("group", help="catalog shorthand, JSON spec file, or inline JSON")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.set_defaults(func=fn)
        return sp

    sp = add("catalog", cmd_catalog, "list the built-in groups", group=False)
    sp.add_argument("--max-order", type=int, default=None)

    sp = add("chartable", cmd_chartable, "character table via the orbit method")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--exact", action="store_true", help="exact n*zeta(e)^k entries")
    sp.add_argument("--oracle", action="store_true", help="also emit the Burnside table and diff")
    sp.add_argument("--oracle-out", help="path for the oracle table (default: OUT.oracle or stdout)")
    sp.add_argument("--seed", type=int, default=None, help="oracle seed (default: $ORBITKIT_SEED or 0)")

    sp = add("orbits", cmd_orbits, "coadjoint orbits, dimensions, stabilisers, dual pairing")
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = add("verify", cmd_verify, "run invariant suites and print a JSON report")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--seed", type=int, default=None)

    add("export", cmd_export, "write the group as a table-kind JSON spec")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidSpec as err:
        code, msg = EXIT_SPEC, f"invalid spec: {err}"
    except (NotTwoDivisible, NotTwoRootable, EvenPrime) as err:
        code, msg = EXIT_EVEN, f"{type(err).__name__}: {err}"
    except ClassTooLarge as err:
        code, msg = EXIT_CLASS, f"ClassTooLarge: {err}"
    except NoBijection as err:
        code, msg = EXIT_MISMATCH, f"NoBijection: {err}"
    except CenterMismatch as err:
        code, msg = EXIT_SPEC, f"CenterMismatch: {err}"
    except BudgetExceeded as err:
        code, msg = EXIT_FAIL, f"BudgetExceeded: {err}"
    sys.stderr.write(msg + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
