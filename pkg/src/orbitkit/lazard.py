"""Lie correspondence between class-2 groups and class-2 Lie rings with 2-divisible centre.

On cocycles: psi -> (phi, eta) with phi = (psi + psi^T)/2, eta = psi - psi^T, and
back via psi = phi + eta/2.  On objects the ring L(B) lives on the same set as B
(same element indices), with

    (a1, c1) + (a2, c2) = (a1 + a2 + phi(c1, c2), c1 + c2)
    [(a1, c1), (a2, c2)] = (eta(c1, c2) - phi(0, 0), 0)

Morphisms are unchanged set maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .abelian import FinAbGroup
from .cocycle import (Cocycle, SkewBihom, add_coboundary, center, coboundary, equalizing_chain,
                      validate_cocycle)
from .errors import AsymmetricPhi, IdentityViolation, NotAHomomorphism, NotTwoDivisible
from .nilgroup import Class2Group, GroupElement, as_index_map, hom_violation

LieElement = GroupElement  # same underlying set


def L_c(psi: Cocycle) -> tuple[Cocycle, SkewBihom]:
    A = psi.A
    if not A.is_two_divisible():
        raise NotTwoDivisible(f"A = {list(A.moduli)} is not 2-divisible")
    T, Tt = psi.table, psi.table.transpose(1, 0, 2)
    phi = Cocycle(psi.C, A, A.halve_array(T + Tt), check=False)
    eta = SkewBihom(psi.C, A, T - Tt, check=False)
    return phi, eta


def E_c(phi: Cocycle, eta: SkewBihom) -> Cocycle:
    A = phi.A
    if not A.is_two_divisible():
        raise NotTwoDivisible(f"A = {list(A.moduli)} is not 2-divisible")
    if not phi.is_symmetric():
        raise AsymmetricPhi("phi must be symmetric")
    return Cocycle(phi.C, A, phi.table + A.halve_array(eta.table), check=False)


class LieRing:
    """Class-2 Lie ring on A x C given by a symmetric cocycle phi and a skew bihomomorphism eta.

    phi is centered on construction, which relabels (a, c) -> (a + phi(0,0), c)
    so that zero is (0, 0); the bracket is then simply (eta(c1, c2), 0).
    """

    def __init__(self, A: FinAbGroup, C: FinAbGroup, phi: Cocycle, eta: SkewBihom, check=True):
        if check:
            if not phi.is_symmetric():
                raise AsymmetricPhi("phi must be symmetric")
            v = validate_cocycle(phi)
            if not v:
                raise ValueError(f"phi is not a cocycle (witness {v.witness})")
            SkewBihom(C, A, eta.table)  # raises if invalid
        self.A = A
        self.C = C
        self.phi = center(phi)
        self.eta = eta

    def __repr__(self):
        return f"LieRing(A={list(self.A.moduli)}, C={list(self.C.moduli)}, order={self.order})"

    @property
    def order(self) -> int:
        return self.A.order * self.C.order

    def index(self, x) -> int:
        x = LieElement(*x)
        return self.A.index(x.a) + self.A.order * self.C.index(x.c)

    def element(self, i: int) -> LieElement:
        i = int(i)
        return LieElement(self.A.element(i % self.A.order), self.C.element(i // self.A.order))

    @cached_property
    def a_index(self):
        return np.arange(self.order) % self.A.order

    @cached_property
    def c_index(self):
        return np.arange(self.order) // self.A.order

    @cached_property
    def add_table(self) -> np.ndarray:
        ia, ic = self.a_index, self.c_index
        Aadd = self.A.add_table
        a = Aadd[Aadd[ia[:, None], ia[None, :]], self.phi.index_table[ic[:, None], ic[None, :]]]
        return a + self.A.order * self.C.add_table[ic[:, None], ic[None, :]]

    @cached_property
    def neg_table(self) -> np.ndarray:
        negc = self.C.neg_table
        t = self.phi.index_table[np.arange(self.C.order), negc]
        a = self.A.add_table[self.A.neg_table[self.a_index], self.A.neg_table[t[self.c_index]]]
        return a + self.A.order * negc[self.c_index]

    @cached_property
    def bracket_table(self) -> np.ndarray:
        ic = self.c_index
        return self.eta.index_table[ic[:, None], ic[None, :]]  # central: index of (eta, 0)

    @cached_property
    def half_table(self) -> np.ndarray:
        """y with y + y = x: y = ((a - phi(c/2, c/2))/2, c/2)."""
        A, C = self.A, self.C
        chalf = C.index_array(C.halve_array(C.elements))[self.c_index]
        a = A.elements[self.a_index] - self.phi.table[chalf, chalf]
        return A.index_array(A.halve_array(a)) + A.order * chalf

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.add_table, self.add_table.T))

    def add(self, x, y) -> LieElement:
        return self.element(self.add_table[self.index(x), self.index(y)])

    def neg(self, x) -> LieElement:
        return self.element(self.neg_table[self.index(x)])

    def sub_idx(self, i, j):
        return self.add_table[i, self.neg_table[j]]

    def bracket(self, x, y) -> LieElement:
        return self.element(self.bracket_table[self.index(x), self.index(y)])

    def half(self, x) -> LieElement:
        return self.element(self.half_table[self.index(x)])

    def scale_idx(self, i: int, k: int) -> int:
        result, base = 0, int(i)
        k = int(k)
        if k < 0:
            base, k = int(self.neg_table[base]), -k
        while k:
            if k & 1:
                result = int(self.add_table[result, base])
            base = int(self.add_table[base, base])
            k >>= 1
        return result


def lie_add(ring: LieRing, x, y) -> LieElement:
    return ring.add(x, y)


def lie_bracket(ring: LieRing, x, y) -> LieElement:
    return ring.bracket(x, y)


def L_group(B: Class2Group) -> LieRing:
    """L(B) on B's own element set.

    phi and eta are computed from the stored (centered) cocycle.  Because every
    coboundary is symmetric, (psi + dq + (psi + dq)^T)/2 - dq = (psi + psi^T)/2:
    building from the equalized representative and relabelling back gives the same
    tables, which ``L_group_via_equalized`` makes checkable.
    """
    if not B.A.is_two_divisible():
        raise NotTwoDivisible(f"centre A = {list(B.A.moduli)} is not 2-divisible")
    phi, eta = L_c(B.psi)
    return LieRing(B.A, B.C, phi, eta, check=False)


def L_group_via_equalized(B: Class2Group) -> LieRing:
    """Construct L(B) from the equalized cocycle, then relabel back to B's coordinates."""
    q = equalizing_chain(B.psi)
    phi_e, eta = L_c(add_coboundary(B.psi, q))
    # group(psi) -> group(psi + dq) is (a, c) -> (a - q(c), c); pull phi back with -dq
    phi = Cocycle(B.C, B.A, phi_e.table - coboundary(B.C, B.A, q), check=False)
    return LieRing(B.A, B.C, phi, eta, check=False)


def E_ring(ring: LieRing, name=None) -> Class2Group:
    return Class2Group(ring.A, ring.C, E_c(ring.phi, ring.eta), name=name)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


@dataclass
class MorphismCheck:
    ok: bool
    map: np.ndarray
    direction: str
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def ring_hom_violation(r1: LieRing, r2: LieRing, f: np.ndarray):
    bad = hom_violation(r1.add_table, r2.add_table, f)
    if bad is not None:
        return bad, "addition"
    bad = hom_violation(r1.bracket_table, r2.bracket_table, f)
    if bad is not None:
        return bad, "bracket"
    return None, ""


def functor_on_morphism(f, source, target, direction: str) -> MorphismCheck:
    """Apply L (groups -> rings) or E (rings -> groups) to a dense element map.

    The set map is unchanged; the precondition (f is a homomorphism in the source
    category) is enforced, and the image is checked to be a homomorphism in the
    target category.  Failure of the latter is reported, not raised.
    """
    f = as_index_map(source, target, f)
    if direction == "L":
        bad = hom_violation(source.mul_table, target.mul_table, f)
        if bad is not None:
            raise NotAHomomorphism(f"not a group homomorphism at {bad}", bad)
        bad, what = ring_hom_violation(L_group(source), L_group(target), f)
    elif direction == "E":
        bad, what = ring_hom_violation(source, target, f)
        if bad is not None:
            raise NotAHomomorphism(f"not a Lie ring homomorphism ({what}) at {bad}", bad)
        bad = hom_violation(E_ring(source).mul_table, E_ring(target).mul_table, f)
        what = "multiplication" if bad is not None else ""
    else:
        raise ValueError("direction must be 'L' or 'E'")
    return MorphismCheck(bad is None, f, direction, bad, what)


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------


@dataclass
class IdentityReport:
    group: str
    pairs_checked: int
    exhaustive: bool
    failures: dict = field(default_factory=dict)  # identity name -> first witness pair

    @property
    def ok(self) -> bool:
        return not self.failures

    def raise_on_failure(self):
        if self.failures:
            name, w = next(iter(self.failures.items()))
            raise IdentityViolation(f"{name} fails at {w}", w)


EXHAUSTIVE_LIMIT = 729


def lemma_identities(B: Class2Group, samples: int = 100_000, rng=0, exhaustive=None) -> IdentityReport:
    """Check the class-2 BCH identities on B and L(B) over element pairs.

    inverse == negative, b1 b2 == b1 + b2 + [b1,b2]/2, b1 b2 b1^-1 == b2 + [b1,b2],
    group commutator == bracket, and b1 b2 == b1 + b2 for commuting pairs.
    Exhaustive up to |B| = 729 unless ``exhaustive`` says otherwise.
    """
    if B.order % 2 == 0:
        raise NotTwoDivisible(f"|B| = {B.order} is even")
    ring = L_group(B)
    n = B.order
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_LIMIT
    if exhaustive:
        i, j = (x.ravel() for x in np.meshgrid(np.arange(n), np.arange(n), indexing="ij"))
    else:
        i, j = np.random.default_rng(rng).integers(0, n, size=(2, samples))
    m, v = B.mul_table, B.inv_table
    add, br, half = ring.add_table, ring.bracket_table, ring.half_table
    prod = m[i, j]
    bracket = br[i, j]
    checks = {
        "inverse_is_negative": (np.arange(n), v, ring.neg_table, None),
        "product_bch": (None, prod, add[add[i, j], half[bracket]], None),
        "conjugation": (None, m[prod, v[i]], add[j, bracket], None),
        "commutator_is_bracket": (None, B.commutator_idx(i, j), bracket, None),
    }
    commuting = prod == m[j, i]
    checks["commuting_product_is_sum"] = (None, prod[commuting], add[i, j][commuting], commuting)
    report = IdentityReport(B.name or repr(B), len(i), exhaustive)
    for name, (dom, lhs, rhs, mask) in checks.items():
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            k = int(bad[0])
            if dom is not None:
                report.failures[name] = (str(B.element(dom[k])),)
            else:
                ii, jj = (i[mask], j[mask]) if mask is not None else (i, j)
                report.failures[name] = (str(B.element(ii[k])), str(B.element(jj[k])))
    return report
