"""Invariant suites run by ``orbitkit verify``.

Each suite returns a list of ``Check`` records; ``run_suite`` wraps them in a
report whose JSON form is deterministic (sorted keys, no timings, seeded
randomness).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import groupalg
from .cocycle import add_coboundary, equalize, eta_nondegenerate, is_nondegenerate, validate_cocycle
from .errors import BudgetExceeded, OrbitKitError
from .lazard import E_c, E_ring, L_c, L_group, L_group_via_equalized, functor_on_morphism, lemma_identities
from .nilgroup import Class2Group
from .oracle import burnside_table, default_seed, match_tables, self_check
from .orbits import orbit_character_table, orbit_method

SUITES = ("cocycle", "lazard", "orbits", "groupalg")
ASSOCIATIVITY_EXHAUSTIVE = 729
SAMPLED_PAIRS = 100_000


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None


@dataclass
class SuiteReport:
    suite: str
    group: str
    checks: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "group": self.group,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "skipped": list(self.skipped),
            "witnesses": [{"check": c.name, "witness": c.witness} for c in self.checks
                          if c.witness is not None],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str) + "\n"


def _check(name: str, fn) -> Check:
    """Run ``fn() -> (passed, detail[, witness])``; library errors become failed checks."""
    try:
        out = fn()
    except OrbitKitError as err:
        return Check(name, False, f"{type(err).__name__}: {err}", getattr(err, "witness", None))
    passed, detail, *rest = out
    return Check(name, bool(passed), detail, rest[0] if rest and not passed else None)


def _tables_equal(x, y) -> bool:
    return bool(np.array_equal(np.asarray(x), np.asarray(y)))


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def cocycle_suite(B: Class2Group, seed: int) -> list[Check]:
    psi, C, A = B.psi, B.C, B.A
    rng = np.random.default_rng(seed)
    checks = []

    def valid():
        v = validate_cocycle(B.raw_psi)
        return v.ok, "cocycle identity holds on all triples" if v.ok else v.detail, v.witness

    def centered():
        return psi.is_centered() and B.identity == 0, "stored cocycle is centered, identity is (0|0)"

    def inverse_symmetry():
        n = C.order
        ok = np.array_equal(psi.table[np.arange(n), C.neg_table], psi.table[C.neg_table, np.arange(n)])
        return ok, "psi(c,-c) = psi(-c,c)"

    def associativity():
        if B.order <= ASSOCIATIVITY_EXHAUSTIVE:
            bad, how = B.associativity_check(), "exhaustive"
        else:
            bad, how = B.associativity_check(samples=SAMPLED_PAIRS, rng=seed), f"{SAMPLED_PAIRS} sampled triples"
        return bad is None, how, bad

    def raw_inverse():
        bad = [str(B.element(i)) for i in range(B.order)
               if B.raw_mul(B.raw_inv(B.element(i)), B.element(i)) != B.raw_identity()]
        return not bad, "general inverse formula is a left inverse in raw coordinates", bad[:1] or None

    def coboundary_invariance():
        q = rng.integers(0, np.asarray(A.mod) if A.rank else 1, size=(C.order, A.rank))
        B2 = Class2Group(A, C, add_coboundary(B.raw_psi, q))
        # raw (a, c) of B corresponds to raw (a - q(c), c) of B2
        f = np.empty(B.order, dtype=np.int64)
        for x in B.elements():  # read as raw coordinates
            qc = tuple(int(v) for v in q[C.index(x.c)])
            f[B.index(B.from_raw(x))] = B2.index(B2.from_raw((A.sub(x.a, qc), x.c)))
        ok = _tables_equal(f[B.mul_table], B2.mul_table[f[:, None], f[None, :]])
        return ok, "psi + dq (random q) gives an isomorphic group via (a,c) -> (a-q(c),c)"

    def centre():
        cz = set(B.center_idx().tolist())
        expect = set(range(A.order))
        nondeg = is_nondegenerate(psi)
        return (cz == expect) == nondeg, f"centre order {len(cz)}; psi non-degenerate: {nondeg}"

    def commutators_central():
        return bool(np.all(B.c_index[B.commutator_table] == 0)), "every commutator lies in A x {0}"

    checks += [_check("cocycle_identity", valid), _check("stored_psi_centered", centered),
               _check("inverse_symmetry", inverse_symmetry), _check("associativity", associativity),
               _check("raw_inverse", raw_inverse), _check("coboundary_invariance", coboundary_invariance),
               _check("centre_vs_degeneracy", centre), _check("commutators_central", commutators_central)]
    if A.is_two_divisible():
        def equalized():
            eq = equalize(B.psi)
            B2 = Class2Group(A, C, eq)
            inv_is_neg = all(B2.inv_table[i] == B2.index((A.neg(x.a), C.neg(x.c)))
                             for i, x in enumerate(B2.elements()))
            return eq.is_equalized() and eq.is_centered() and inv_is_neg, \
                "equalized representative is centered, psi(c,-c)=0 and inverse = negation"
        checks.append(_check("equalize", equalized))
    return checks


def lazard_suite(B: Class2Group, seed: int) -> list[Check]:
    checks = []

    def cocycle_round_trip():
        phi, eta = L_c(B.psi)
        back = E_c(phi, eta)
        phi2, eta2 = L_c(back)
        ok = back == B.psi and phi2 == phi and eta2 == eta
        return ok, "E_c(L_c(psi)) = psi and L_c(E_c(phi, eta)) = (phi, eta)"

    def ring_round_trip():
        return _tables_equal(E_ring(L_group(B)).mul_table, B.mul_table), "E(L(B)) has B's multiplication table"

    def equalized_route():
        r1, r2 = L_group(B), L_group_via_equalized(B)
        ok = _tables_equal(r1.add_table, r2.add_table) and _tables_equal(r1.bracket_table, r2.bracket_table)
        return ok, "L(B) from the centered and the equalized cocycle agree"

    def degeneracy():
        phi, eta = L_c(B.psi)
        ok = (phi.is_centered() == B.psi.is_centered()) and eta_nondegenerate(eta) == is_nondegenerate(B.psi)
        return ok, "phi centered iff psi centered; eta non-degenerate iff psi non-degenerate"

    def identities():
        rep = lemma_identities(B, samples=SAMPLED_PAIRS, rng=seed)
        how = "all pairs" if rep.exhaustive else f"{rep.pairs_checked} sampled pairs"
        w = next(iter(rep.failures.items())) if rep.failures else None
        return rep.ok, f"BCH identities on {how}", w

    def halves():
        ring = L_group(B)
        return _tables_equal(B.half_table, ring.half_table), "group square root = Lie ring halving"

    def functor():
        rng = np.random.default_rng(seed)
        g = int(rng.integers(B.order))
        # inner automorphism x -> g x g^-1
        f = B.mul_table[B.mul_table[g], B.inv_table[g]]
        ring = L_group(B)
        r1 = functor_on_morphism(f, B, B, "L")
        r2 = functor_on_morphism(f, ring, ring, "E")
        return r1.ok and r2.ok, f"L and E carry the inner automorphism by {B.element(g)} to morphisms"

    checks += [_check("cocycle_round_trip", cocycle_round_trip), _check("ring_round_trip", ring_round_trip),
               _check("equalized_route", equalized_route), _check("degeneracy_transfer", degeneracy),
               _check("bch_identities", identities), _check("halving", halves),
               _check("functor_on_inner_automorphism", functor)]
    return checks


def orbits_suite(B: Class2Group, seed: int) -> list[Check]:
    om = orbit_method(B)

    def counts():
        ad, coad, cls = om.ad_orbit_count(), len(om.orbits), len(B.conjugacy_classes_idx())
        return ad == coad == cls, f"Ad-orbits {ad}, Ad*-orbits {coad}, conjugacy classes {cls}"

    def dimensions():
        sizes = [o.size for o in om.orbits]
        squares = all(int(round(s**0.5)) ** 2 == s for s in sizes)
        return squares and sum(sizes) == B.order, f"orbit sizes {_histogram(sizes)} sum to {sum(sizes)}"

    def stabilizers():
        bad = [o.representative.t for o in om.orbits
               if not _tables_equal(om.stabilizer_idx(o.member_idx[0]), om.stabilizer_naive_idx(o.member_idx[0]))]
        return not bad, "bracket-test stabiliser = fixed points of the coadjoint action", bad[:1] or None

    def stabilizer_orders():
        bad = [o.representative.t for o in om.orbits
               if len(om.stabilizer_idx(o.member_idx[0])) * o.size != B.order]
        return not bad, "|Stab| * |orbit| = |B|", bad[:1] or None

    def duality():
        d = [om.dual_index(k) for k in range(len(om.orbits))]
        inv = all(d[d[k]] == k for k in range(len(d)))
        conj = np.abs(om.character_matrix[d] - om.character_matrix.conj()).max() < 1e-9
        return inv and conj, "orbit -> -orbit is an involution realising complex conjugation"

    def oracle():
        table = orbit_character_table(B)
        ref = burnside_table(B, seed=seed)
        sc = self_check(ref, B.order)
        rep = match_tables(table, ref)
        return sc.ok(B.order) and rep.max_deviation < 1e-6, f"bijection with Burnside table, max deviation {rep.max_deviation:.1e}"

    def orthogonality():
        sc = self_check(orbit_character_table(B), B.order)
        return sc.ok(B.order), "orbit-method table satisfies both orthogonality relations"

    return [_check("orbit_counts", counts), _check("dimension_formula", dimensions),
            _check("stabilizers", stabilizers), _check("stabilizer_orders", stabilizer_orders),
            _check("dual_orbits", duality), _check("orthogonality", orthogonality),
            _check("oracle_match", oracle)]


def groupalg_suite(B: Class2Group, seed: int) -> list[Check]:
    om = orbit_method(B)

    def gram():
        ok = bool(groupalg.build_xbasis(B).gram_exact().all())
        return ok, "<X_s, X_t> = delta_st exactly"

    def actions():
        rep = groupalg.action_sweep(B)
        return rep.ok, f"{rep.checks} products b X_chi and X_chi b match the closed forms", \
            rep.failures[0] if rep.failures else None

    def ideals():
        failures, checks = [], 0
        for o in om.orbits:
            rep = groupalg.verify_ideal(B, o, rng=seed)
            checks += rep.action_checks + rep.product_checks
            failures += rep.failures
        return not failures, f"{len(om.orbits)} orbit spans are two-sided ideals ({checks} checks)", \
            failures[0] if failures else None

    def traces():
        table = orbit_character_table(B)
        checked = 0
        for k, o in enumerate(om.orbits):
            for j, g in enumerate(table.class_reps):
                tr = groupalg.regular_trace(B, o, B.element(g))
                if tr.per_degree != table.exact[k][j]:
                    return False, f"orbit {k} at class {j}", (o.representative.t, str(B.element(g)))
                checked += 1
        return True, f"trace/n of the right regular action = orbit character ({checked} entries)"

    return [_check("gram_identity", gram), _check("closed_form_actions", actions),
            _check("isotypic_ideals", ideals), _check("regular_trace", traces)]


def _histogram(sizes) -> str:
    vals, counts = np.unique(sizes, return_counts=True)
    return ", ".join(f"{v}x{c}" for v, c in zip(vals.tolist(), counts.tolist()))


SUITE_FUNCTIONS = {"cocycle": cocycle_suite, "lazard": lazard_suite, "orbits": orbits_suite,
                   "groupalg": groupalg_suite}


def run_suite(B: Class2Group, suite: str = "all", seed=None) -> SuiteReport:
    seed = default_seed() if seed is None else seed
    names = SUITES if suite == "all" else (suite,)
    if any(n not in SUITE_FUNCTIONS for n in names):
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")
    report = SuiteReport(suite, B.name or repr(B))
    for name in names:
        if name == "groupalg" and B.order > groupalg.MAX_ORDER:
            if suite == "groupalg":
                raise BudgetExceeded(f"|B| = {B.order} exceeds the dense group-algebra budget {groupalg.MAX_ORDER}")
            report.skipped.append(f"groupalg: |B| = {B.order} exceeds the dense budget {groupalg.MAX_ORDER}")
            continue
        for c in SUITE_FUNCTIONS[name](B, seed):
            c.name = f"{name}.{c.name}" if suite == "all" else c.name
            report.checks.append(c)
    return report
