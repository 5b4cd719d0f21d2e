"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
"""
import json
import os
import subprocess
import sys
from collections import Counter

import numpy as np
import pytest

from orbitkit.abelian import FinAbGroup
from orbitkit.cocycle import equalize, from_bilinear, random_cocycle, validate_cocycle
from orbitkit.cyclo import RootMultiple
from orbitkit.errors import NotTwoDivisible
from orbitkit.groupalg import action_sweep, build_xbasis, regular_trace
from orbitkit.groupspec import spec_to_group
from orbitkit.lazard import E_c, E_ring, L_c, L_group, lemma_identities
from orbitkit.nilgroup import extraspecial_exp_p, heisenberg, standard_catalog, abelian
from orbitkit.oracle import burnside_table, match_tables
from orbitkit.orbits import duality_count_check, orbit_character, orbit_character_table, orbit_method

SMALL = standard_catalog(max_order=3**5)
D8 = {"A": [2], "C": [2, 2], "psi": {"kind": "bilinear", "matrix": [[0, 1], [0, 0]]}}
Q8 = {"A": [2], "C": [2, 2], "psi": {"kind": "bilinear", "matrix": [[1, 1], [0, 1]]}}


def verdict(capsys, number, title, ok, detail=""):
    with capsys.disabled():
        print(f"\ncriterion {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def test_criterion_1_cocycle_round_trips(capsys):
    cocycles = [B.psi for B in standard_catalog()]
    rng = np.random.default_rng(2024)
    c_choices = [(3,), (9,), (3, 3), (5,), (3, 9), (5, 5), (3, 3, 3), (9, 9), (27,), (3, 27), (3, 3, 3, 3)]
    a_choices = [(3,), (9,), (3, 3), (5,), (15,), (27,)]
    while len(cocycles) < len(standard_catalog()) + 100:
        C = FinAbGroup(c_choices[rng.integers(len(c_choices))])
        A = FinAbGroup(a_choices[rng.integers(len(a_choices))])
        psi = random_cocycle(C, A, rng=int(rng.integers(2**32)))
        assert C.order <= 81 and validate_cocycle(psi)
        cocycles.append(psi)
    bad = 0
    for psi in cocycles:
        phi, eta = L_c(psi)
        back = E_c(phi, eta)
        phi2, eta2 = L_c(back)
        ok = np.array_equal(back.table, psi.table) and np.array_equal(phi2.table, phi.table) \
            and np.array_equal(eta2.table, eta.table)
        bad += not ok
    verdict(capsys, 1, "E_c o L_c = id and L_c o E_c = id", bad == 0, f"{len(cocycles)} cocycles, {bad} failures")


def test_criterion_2_functor_round_trip(capsys):
    bad = [B.name for B in SMALL if not np.array_equal(E_ring(L_group(B)).mul_table, B.mul_table)]
    verdict(capsys, 2, "E_ring(L_group(B)) has B's multiplication table", not bad,
            f"{len(SMALL)} catalog groups, mismatches: {bad}")


def test_criterion_3_lemma_identities(capsys):
    lines, ok = [], True
    for B in [B for B in SMALL if B.order in (27, 125, 243)]:
        rep = lemma_identities(B, exhaustive=True)
        ok &= rep.ok and rep.pairs_checked == B.order**2
        lines.append(f"{B.name}: {rep.pairs_checked} pairs")
    rep = lemma_identities(heisenberg(7), samples=100_000, exhaustive=False)
    ok &= rep.ok and rep.pairs_checked >= 100_000
    lines.append(f"heisenberg:7: {rep.pairs_checked} sampled")
    verdict(capsys, 3, "class-2 BCH identity suite, zero failures", ok, "; ".join(lines))


def test_criterion_4_counts(capsys):
    ok, lines = True, []
    for B in SMALL + [heisenberg(7)]:
        rep = duality_count_check(B, strict=False)
        ok &= rep.ad_orbits == rep.coad_orbits == rep.conjugacy_classes
        lines.append(f"{B.name}={rep.coad_orbits}")
    expected = {3: 11, 5: 29, 7: 55}
    for p, n in expected.items():
        got = len(orbit_method(heisenberg(p)).orbits)
        ok &= got == n == p * p + p - 1
    verdict(capsys, 4, "#Ad*-orbits = #Ad-orbits = #classes", ok, ", ".join(lines))


def test_criterion_5_dimension_formula(capsys):
    ok = True
    for B in SMALL:
        sizes = [o.size for o in orbit_method(B).orbits]
        ok &= sum(sizes) == B.order and all(int(round(s**0.5)) ** 2 == s for s in sizes)
    hist = dict(Counter(o.size for o in orbit_method(heisenberg(3)).orbits))
    ok &= hist == {1: 9, 9: 2}
    verdict(capsys, 5, "orbit sizes are squares summing to |B|", ok, f"heisenberg:3 sizes {hist}")


def test_criterion_6_oracle_match(capsys):
    worst, lines = 0.0, []
    for B in (heisenberg(3), heisenberg(5), extraspecial_exp_p(3, 2), abelian([3, 9])):
        rep = match_tables(orbit_character_table(B), burnside_table(B), tol=1e-6)
        worst = max(worst, rep.max_deviation)
        lines.append(f"{B.name} {rep.max_deviation:.1e}")
    verdict(capsys, 6, "orbit-method table matches Burnside oracle", worst < 1e-6, ", ".join(lines))


def test_criterion_7_group_algebra(capsys):
    B = heisenberg(3)
    gram_ok = bool(build_xbasis(B).gram_exact().all())
    sweep = action_sweep(B)
    om = orbit_method(B)
    trace_bad = 0
    for o in om.orbits:
        for b in B.elements():
            trace_bad += regular_trace(B, o, b).per_degree != orbit_character(B, o, b)
    ok = gram_ok and sweep.ok and sweep.checks == 2 * 27 * 27 and trace_bad == 0 and len(om.orbits) == 11
    verdict(capsys, 7, "group-algebra theorem at |B| = 27", ok,
            f"gram exact={gram_ok}, {sweep.checks} action checks, {len(om.orbits) * 27} trace entries, "
            f"{trace_bad} trace failures")


def test_criterion_8_negative_path(capsys):
    raised = []
    for name, spec in (("D8", D8), ("Q8", Q8)):
        B = spec_to_group(spec)
        for fn in (L_group, orbit_method):
            try:
                fn(B)
            except NotTwoDivisible:
                raised.append(name)
    try:
        equalize(from_bilinear(FinAbGroup((2, 2)), FinAbGroup((2,)), [[0, 1], [0, 0]]))
        eq_raised = False
    except NotTwoDivisible:
        eq_raised = True
    codes = [subprocess.run([sys.executable, "-m", "orbitkit", "verify", json.dumps(spec)], capture_output=True,
                            check=False).returncode for spec in (D8, Q8)]
    ok = raised == ["D8", "D8", "Q8", "Q8"] and eq_raised and codes == [3, 3]
    verdict(capsys, 8, "D8 and Q8 rejected with NotTwoDivisible, CLI exit 3", ok, f"exit codes {codes}")


def test_criterion_9_determinism(capsys, tmp_path):
    env = dict(os.environ, ORBITKIT_SEED="0")
    outs = []
    for k in range(2):
        path = tmp_path / f"verify{k}.json"
        res = subprocess.run([sys.executable, "-m", "orbitkit", "verify", "heisenberg:5", "--suite", "all",
                              "--out", str(path)], env=env, capture_output=True, check=False)
        assert res.returncode == 0, res.stderr
        outs.append(path.read_bytes())
    ok = outs[0] == outs[1] and json.loads(outs[0])["passed"]
    verdict(capsys, 9, "two verify --suite all runs on heisenberg:5 are byte-identical", ok,
            f"{len(outs[0])} bytes")


def test_exact_trace_example():
    # central g != e in the big orbit of heisenberg(3): 9 times a primitive cube root
    B = heisenberg(3)
    big = orbit_method(B).orbits[-1]
    v = regular_trace(B, big, ((1,), (0, 0))).value
    assert v in {RootMultiple(9, 3, 1), RootMultiple(9, 3, 2)}


@pytest.mark.parametrize("B", [heisenberg(3)], ids=lambda B: B.name)
def test_gram_float(B):
    assert np.abs(build_xbasis(B).gram_float() - np.eye(B.order)).max() < 1e-12
