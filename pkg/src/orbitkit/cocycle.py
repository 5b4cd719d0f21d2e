"""Dense-table 2-cocycles C x C -> A with trivial action, and skew bihomomorphisms.

A table has shape ``(|C|, |C|, rank A)``: ``table[i, j]`` holds the A-coordinates
of psi(c_i, c_j) for C-elements in canonical order.  Normalisations (centering,
equalizing) are coboundary shifts by an explicit 1-chain q: C -> A, stored as a
``(|C|, rank A)`` array, so every normal form can be traced back to its input.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .abelian import FinAbGroup
from .errors import IncompatibleModuli, InvalidCocycle, InvalidSkewBihom, NotTwoDivisible

FAST_THRESHOLD = 300


@dataclass(frozen=True)
class Verdict:
    """Truthy result of an exhaustive check; ``witness`` is the first failure."""

    ok: bool
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


class _Table:
    """Shared plumbing for C x C -> A tables."""

    def __init__(self, C: FinAbGroup, A: FinAbGroup, table):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim == 2 and A.rank == 1:
            table = table[..., None]
        expected = (C.order, C.order, A.rank)
        if table.shape != expected:
            raise ValueError(f"table shape {table.shape}, expected {expected}")
        self.C = C
        self.A = A
        self.table = table % A.mod if A.rank else table
        self.table.setflags(write=False)

    def __call__(self, c1, c2):
        return tuple(int(v) for v in self.table[self.C.index(c1), self.C.index(c2)])

    def __eq__(self, other):
        return (type(self) is type(other) and self.C == other.C and self.A == other.A
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((type(self).__name__, self.C, self.A, self.table.tobytes()))

    @property
    def index_table(self) -> np.ndarray:
        """``(|C|, |C|)`` array of A-element indices."""
        return self.A.index_array(self.table)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.table, self.table.transpose(1, 0, 2)))


class Cocycle(_Table):
    """psi in C^2(C, A) with trivial action.

    The cocycle identity is checked on construction (exhaustively, or by
    sampling when ``fast`` is set and |C| > 300); pass ``check=False`` to hold
    an arbitrary table, e.g. to exercise ``validate_cocycle`` itself.
    """

    def __init__(self, C, A, table, check=True, fast=False):
        super().__init__(C, A, table)
        if check:
            v = validate_cocycle(self, fast=fast)
            if not v:
                raise InvalidCocycle(f"cocycle identity fails at {v.witness}", v.witness)

    def __repr__(self):
        return f"Cocycle(C={list(self.C.moduli)}, A={list(self.A.moduli)})"

    def is_centered(self) -> bool:
        return not np.any(self.table[0, 0])

    def is_equalized(self) -> bool:
        neg = self.C.neg_table
        return not np.any(self.table[np.arange(self.C.order), neg])


class SkewBihom(_Table):
    """eta: C x C -> A, biadditive with eta(c, c) = 0."""

    def __init__(self, C, A, table, check=True):
        super().__init__(C, A, table)
        if check:
            v = validate_skew_bihom(self)
            if not v:
                raise InvalidSkewBihom(f"not a skew bihomomorphism: {v.detail} at {v.witness}", v.witness)

    def __repr__(self):
        return f"SkewBihom(C={list(self.C.moduli)}, A={list(self.A.moduli)})"


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _first_nonzero_triple(bad: np.ndarray, i: int, C: FinAbGroup):
    j, k = np.argwhere(bad)[0]
    return C.element(i), C.element(int(j)), C.element(int(k))


def validate_cocycle(psi: _Table, fast: bool = False, rng=None) -> Verdict:
    """psi(c1,c2) + psi(c1+c2,c3) == psi(c1,c2+c3) + psi(c2,c3) for all triples.

    Exhaustive unless ``fast`` is set and |C| > 300, in which case 10|C|
    random triples are checked (never used by the acceptance suite).
    """
    C, A, T = psi.C, psi.A, psi.table
    n = C.order
    add = C.add_table
    if fast and n > FAST_THRESHOLD:
        rng = np.random.default_rng(rng)
        c1, c2, c3 = rng.integers(0, n, size=(3, 10 * n))
        lhs = T[c1, c2] + T[add[c1, c2], c3]
        rhs = T[c1, add[c2, c3]] + T[c2, c3]
        bad = np.any((lhs - rhs) % A.mod, axis=-1) if A.rank else np.zeros(len(c1), bool)
        if bad.any():
            t = int(np.argmax(bad))
            return Verdict(False, (C.element(c1[t]), C.element(c2[t]), C.element(c3[t])), "sampled")
        return Verdict(True, detail="sampled")
    if not A.rank:
        return Verdict(True)
    for i in range(n):
        # rows j, columns k
        lhs = T[i][:, None, :] + T[add[i]]
        rhs = T[i][add][:, :, :] + T
        bad = np.any((lhs - rhs) % A.mod, axis=-1)
        if bad.any():
            return Verdict(False, _first_nonzero_triple(bad, i, C), "cocycle identity")
    return Verdict(True)


def validate_skew_bihom(eta: _Table) -> Verdict:
    C, A, T = eta.C, eta.A, eta.table
    n = C.order
    if not A.rank:
        return Verdict(True)
    diag = np.any(T[np.arange(n), np.arange(n)] % A.mod, axis=-1)
    if diag.any():
        c = C.element(int(np.argmax(diag)))
        return Verdict(False, (c, c), "eta(c,c) != 0")
    add = C.add_table
    for i in range(n):
        # left: eta(c_i + c_j, c_k) = eta(c_i, c_k) + eta(c_j, c_k)
        left = np.any((T[add[i]] - T[i][None, :, :] - T) % A.mod, axis=-1)
        if left.any():
            return Verdict(False, _first_nonzero_triple(left, i, C), "not additive in first argument")
        # right: eta(c_i, c_j + c_k) = eta(c_i, c_j) + eta(c_i, c_k)
        right = np.any((T[i][add] - T[i][:, None, :] - T[i][None, :, :]) % A.mod, axis=-1)
        if right.any():
            return Verdict(False, _first_nonzero_triple(right, i, C), "not additive in second argument")
    return Verdict(True)


# ---------------------------------------------------------------------------
# normalisation
# ---------------------------------------------------------------------------


def coboundary(C: FinAbGroup, A: FinAbGroup, q) -> np.ndarray:
    """Table of q(c1) + q(c2) - q(c1 + c2)."""
    q = np.asarray(q, dtype=np.int64).reshape(C.order, A.rank)
    return (q[:, None, :] + q[None, :, :] - q[C.add_table]) % A.mod


def add_coboundary(psi: Cocycle, q) -> Cocycle:
    """psi + dq.  The result defines the same group: (a, c) -> (a - q(c), c) is an isomorphism."""
    return Cocycle(psi.C, psi.A, psi.table + coboundary(psi.C, psi.A, q), check=False)


def centering_chain(psi: Cocycle) -> np.ndarray:
    """Constant chain q = -psi(0,0); psi + dq = psi - psi(0,0)."""
    return np.broadcast_to(-psi.table[0, 0], (psi.C.order, psi.A.rank)) % psi.A.mod


def center(psi: Cocycle) -> Cocycle:
    return add_coboundary(psi, centering_chain(psi))


def equalizing_chain(psi: Cocycle) -> np.ndarray:
    """Total 1-chain taking psi to its equalized form (centering first, then -psi(c,-c)/2)."""
    A = psi.A
    if not A.is_two_divisible():
        raise NotTwoDivisible(f"A = {list(A.moduli)} has even order: no equalized representative in general")
    q0 = centering_chain(psi)
    centered = add_coboundary(psi, q0)
    n = psi.C.order
    q1 = A.halve_array(-centered.table[np.arange(n), psi.C.neg_table])
    return (q0 + q1) % A.mod


def equalize(psi: Cocycle) -> Cocycle:
    return add_coboundary(psi, equalizing_chain(psi))


# ---------------------------------------------------------------------------
# degeneracy
# ---------------------------------------------------------------------------


def _nondegenerate(diff: np.ndarray, A: FinAbGroup) -> bool:
    if diff.shape[0] <= 1:
        return True
    nz = np.any(diff % A.mod, axis=-1) if A.rank else np.zeros(diff.shape[:2], bool)
    return bool(nz[1:].any(axis=1).all())


def is_nondegenerate(psi: _Table) -> bool:
    """Every c1 != 0 fails to commute with some c2: psi(c1,c2) != psi(c2,c1)."""
    return _nondegenerate(psi.table - psi.table.transpose(1, 0, 2), psi.A)


def eta_nondegenerate(eta: SkewBihom) -> bool:
    return _nondegenerate(eta.table, eta.A)


def commutator_defect(psi: _Table) -> np.ndarray:
    """psi(c1,c2) - psi(c2,c1), reduced; the A-part of the group commutator."""
    return (psi.table - psi.table.transpose(1, 0, 2)) % psi.A.mod


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def bilinear_table(C: FinAbGroup, A: FinAbGroup, M) -> np.ndarray:
    """psi(c, c')_k = sum_ij M[i][j][k] c_i c'_j mod a_k, after a well-definedness check."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim == 2 and A.rank == 1:
        M = M[..., None]
    if M.size == 0:
        M = np.zeros((C.rank, C.rank, A.rank), dtype=np.int64)
    if M.shape != (C.rank, C.rank, A.rank):
        raise ValueError(f"bilinear matrix shape {M.shape}, expected {(C.rank, C.rank, A.rank)}")
    for i, j, k in np.argwhere(M % A.mod if A.rank else M):
        g = np.gcd(C.moduli[i], C.moduli[j])
        if (int(M[i, j, k]) * int(g)) % A.moduli[k]:
            raise IncompatibleModuli(
                f"term {M[i, j, k]} c_{i} c'_{j} is not well defined modulo {A.moduli[k]}"
                f" (C moduli {C.moduli[i]}, {C.moduli[j]})")
    X = C.elements
    return np.einsum("pi,qj,ijk->pqk", X, X, M) % A.mod if A.rank else \
        np.zeros((C.order, C.order, 0), dtype=np.int64)


def from_bilinear(C: FinAbGroup, A: FinAbGroup, M) -> Cocycle:
    # bihomomorphisms satisfy the cocycle identity, so skip the O(|C|^3) check
    return Cocycle(C, A, bilinear_table(C, A, M), check=False)


def zero_cocycle(C: FinAbGroup, A: FinAbGroup) -> Cocycle:
    return Cocycle(C, A, np.zeros((C.order, C.order, A.rank), dtype=np.int64), check=False)


def random_compatible_bilinear(C: FinAbGroup, A: FinAbGroup, rng) -> np.ndarray:
    M = np.zeros((C.rank, C.rank, A.rank), dtype=np.int64)
    for i in range(C.rank):
        for j in range(C.rank):
            for k in range(A.rank):
                a = A.moduli[k]
                step = a // np.gcd(a, np.gcd(C.moduli[i], C.moduli[j]))
                M[i, j, k] = step * rng.integers(0, a)
    return M % A.mod if A.rank else M


def random_cocycle(C: FinAbGroup, A: FinAbGroup, rng=None) -> Cocycle:
    """Random bilinear form plus a random coboundary (not centered in general)."""
    rng = np.random.default_rng(rng)
    table = bilinear_table(C, A, random_compatible_bilinear(C, A, rng))
    q = rng.integers(0, A.mod, size=(C.order, A.rank)) if A.rank else np.zeros((C.order, 0), np.int64)
    return Cocycle(C, A, table + coboundary(C, A, q), check=False)
