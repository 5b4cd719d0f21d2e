"""Finite abelian groups Z/m_1 + ... + Z/m_k with exact integer arithmetic.

Elements are tuples of residues.  The canonical enumeration is mixed radix
with coordinate 0 varying fastest; index 0 is the zero element.  Vectorised
helpers work on integer arrays whose last axis holds coordinates.

Characters are exponent vectors ``t``: chi_t(x) = exp(2 pi i sum_j t_j x_j / m_j).
They are evaluated as an integer ``k`` modulo the group exponent ``e``, so the
value is zeta_e^k and no floating point ever enters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import lcm, prod
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InfiniteGroup, NotTwoDivisible

AbElement = tuple  # tuple of residues


@dataclass(frozen=True)
class FinAbGroup:
    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if any(m < 2 for m in moduli):
            raise ValueError(f"moduli must be >= 2, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    def __repr__(self):
        return f"FinAbGroup({list(self.moduli)})"

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return prod(self.moduli)

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.moduli) if self.moduli else 1

    @cached_property
    def mod(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    @cached_property
    def strides(self) -> np.ndarray:
        s = np.ones(self.rank, dtype=np.int64)
        for i in range(1, self.rank):
            s[i] = s[i - 1] * self.moduli[i - 1]
        return s

    @cached_property
    def elements(self) -> np.ndarray:
        """All elements as an ``(order, rank)`` array in canonical order."""
        idx = np.arange(self.order, dtype=np.int64)
        return (idx[:, None] // self.strides[None, :]) % self.mod[None, :]

    @property
    def zero(self) -> AbElement:
        return (0,) * self.rank

    def __len__(self):
        return self.order

    def __iter__(self):
        for row in self.elements:
            yield tuple(int(v) for v in row)

    # -- element <-> index -------------------------------------------------

    def check(self, x) -> AbElement:
        x = tuple(int(v) for v in x)
        if len(x) != self.rank:
            raise DimensionMismatch(f"{x} has {len(x)} coordinates, group has rank {self.rank}")
        return x

    def reduce(self, x) -> AbElement:
        x = self.check(x)
        return tuple(v % m for v, m in zip(x, self.moduli))

    def index(self, x) -> int:
        x = self.reduce(x)
        return int(sum(v * s for v, s in zip(x, self.strides.tolist())))

    def element(self, i: int) -> AbElement:
        return tuple(int(v) for v in self.elements[i])

    def index_array(self, X: np.ndarray) -> np.ndarray:
        """Indices of the coordinate rows in ``X`` (last axis = coordinates)."""
        X = np.asarray(X, dtype=np.int64)
        return (X % self.mod) @ self.strides if self.rank else np.zeros(X.shape[:-1], dtype=np.int64)

    # -- arithmetic ----------------------------------------------------------

    def add(self, x, y) -> AbElement:
        x, y = self.check(x), self.check(y)
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x) -> AbElement:
        return tuple((-a) % m for a, m in zip(self.check(x), self.moduli))

    def sub(self, x, y) -> AbElement:
        return self.add(x, self.neg(y))

    def scale(self, k: int, x) -> AbElement:
        return tuple((k * a) % m for a, m in zip(self.check(x), self.moduli))

    @cached_property
    def add_table(self) -> np.ndarray:
        X = self.elements
        return self.index_array(X[:, None, :] + X[None, :, :])

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.index_array(-self.elements)

    def is_two_divisible(self) -> bool:
        return all(m % 2 for m in self.moduli)

    @cached_property
    def half_factors(self) -> np.ndarray:
        if not self.is_two_divisible():
            raise NotTwoDivisible(f"{self} has even order; doubling is not invertible")
        return (self.mod + 1) // 2

    def halve(self, x) -> AbElement:
        x = self.check(x)
        h = self.half_factors.tolist()
        return tuple((a * f) % m for a, f, m in zip(x, h, self.moduli))

    def halve_array(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=np.int64) * self.half_factors) % self.mod

    # -- characters ----------------------------------------------------------

    @cached_property
    def char_weights(self) -> np.ndarray:
        """e / m_j, so that chi_t(x) = zeta_e^(sum t_j x_j e/m_j)."""
        return self.exponent // self.mod

    def char_exponent(self, t, x) -> int:
        t, x = self.check(t), self.check(x)
        w = self.char_weights.tolist()
        return sum(a * b * c for a, b, c in zip(t, x, w)) % self.exponent

    def char_exponent_table(self, T: np.ndarray, X: np.ndarray) -> np.ndarray:
        """``out[i, j]`` = exponent of chi_{T[i]} at X[j], modulo the exponent."""
        T = np.asarray(T, dtype=np.int64) * self.char_weights
        return (T @ np.asarray(X, dtype=np.int64).T) % self.exponent


def ab_add(G: FinAbGroup, x, y) -> AbElement:
    return G.add(x, y)


def is_two_divisible(G: FinAbGroup) -> bool:
    return G.is_two_divisible()


def halve(G: FinAbGroup, a) -> AbElement:
    return G.halve(a)


def all_characters(G: FinAbGroup) -> list[AbElement]:
    """Exponent vectors of every character, in the canonical element order."""
    return list(G)


def direct_sum(*groups: FinAbGroup) -> FinAbGroup:
    return FinAbGroup(tuple(m for G in groups for m in G.moduli))


# ---------------------------------------------------------------------------
# Smith normal form and presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Abelian group on ``n_gens`` generators; each relation row r means sum r_j g_j = 0."""

    n_gens: int
    relations: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        rels = tuple(tuple(int(v) for v in row) for row in self.relations)
        for row in rels:
            if len(row) != self.n_gens:
                raise DimensionMismatch(f"relation {row} has length {len(row)}, expected {self.n_gens}")
        object.__setattr__(self, "relations", rels)


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Return ``(D, U, V, Vinv)`` with ``U M V = D`` diagonal, d_1 | d_2 | ....

    Python integers throughout, so transform entries may grow freely.  U and V
    are unimodular; ``Vinv`` is tracked alongside V to avoid a later inversion.
    """
    A = [list(map(int, row)) for row in M]
    r = len(A)
    n = len(A[0]) if r else 0
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, k):  # row_dst += k row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k col_src ; Vinv row_src -= k row_dst
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]
        Vi[src] = [a - k * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(r, n)):
        while True:
            pivots = [(abs(A[i][j]), i, j) for i in range(t, r) for j in range(t, n) if A[i][j]]
            if not pivots:
                break
            _, pi, pj = min(pivots)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    done = done and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    done = done and A[t][j] == 0
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < r and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V, Vi


def smith_decompose(p: Presentation):
    """Invariant-factor form of a finite presented abelian group.

    Returns ``(G, forward, backward)``: ``forward`` sends a generator-coefficient
    vector to coordinates in G, ``backward`` sends G-coordinates to a coefficient
    vector representing the same coset.  Both also accept 2-d arrays of rows.
    """
    n = p.n_gens
    rels = [list(r) for r in p.relations]
    if n == 0:
        G = FinAbGroup(())
        return G, (lambda v: np.zeros(np.shape(v)[:-1] + (0,), dtype=np.int64)), \
            (lambda y: np.zeros(np.shape(y)[:-1] + (0,), dtype=np.int64))
    if len(rels) < n:
        raise InfiniteGroup(f"{len(rels)} relations cannot bound {n} generators")
    D, _, V, Vi = smith_normal_form(rels)
    diag = [D[i][i] for i in range(n)]
    if any(d == 0 for d in diag):
        raise InfiniteGroup(f"relation matrix is rank deficient (invariant factors {diag})")
    keep = [i for i, d in enumerate(diag) if d > 1]
    G = FinAbGroup(tuple(diag[i] for i in keep))
    # v -> v V is well defined modulo the relation lattice, which V maps onto the diagonal lattice
    Vk = np.array([[V[i][j] for j in keep] for i in range(n)], dtype=object)
    Vik = np.array([Vi[j] for j in keep], dtype=object).reshape(len(keep), n)

    def forward(v):
        v = np.asarray(v, dtype=object)
        out = v @ Vk if len(keep) else np.zeros(v.shape[:-1] + (0,), dtype=object)
        return (out % G.mod.astype(object)).astype(np.int64)

    def backward(y):
        y = np.asarray(y, dtype=object)
        if not len(keep):
            return np.zeros(y.shape[:-1] + (n,), dtype=np.int64)
        return (y @ Vik).astype(np.int64)

    return G, forward, backward


def element_order(G: FinAbGroup, x) -> int:
    x = G.reduce(x)
    return lcm(*(m // np.gcd(a, m) for a, m in zip(x, G.moduli))) if G.rank else 1
