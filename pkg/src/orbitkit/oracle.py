"""Character tables by Burnside's class-sum method, independent of the orbit method.

Class sums satisfy K_i K_j = sum_k a_ijk K_k.  Central characters
w_k = |K_k| chi(g_k) / chi(1) form a common eigenvector of the matrices
(M_i)_{jk} = a_ijk with eigenvalue w_i, so diagonalising one random real
combination of the M_i yields every irreducible; the degree follows from
sum_k |K_k| |chi(g_k)|^2 = |B|.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, NoBijection
from .nilgroup import Class2Group
from .orbits import CharacterTable, class_order

MAX_ORDER = 3**7
CLUSTER_TOL = 1e-9
MAX_RETRIES = 8


def default_seed() -> int:
    return int(os.environ.get("ORBITKIT_SEED", "0"))


def class_multiplication(B: Class2Group, classes) -> np.ndarray:
    """``M[i, j, k]`` = #{x in K_i : x^-1 g_k in K_j}, g_k the representative of K_k."""
    r = len(classes)
    label = np.empty(B.order, dtype=np.int64)
    for k, cls in enumerate(classes):
        label[cls] = k
    reps = np.array([int(c[0]) for c in classes])
    m = np.asarray(B.mul_table, dtype=np.int64)
    M = np.zeros((r, r, r), dtype=np.int64)
    for i, cls in enumerate(classes):
        y = label[m[B.inv_table[cls][:, None], reps[None, :]]]  # [x, k]
        for k in range(r):
            M[i, :, k] = np.bincount(y[:, k], minlength=r)
    return M


def burnside_table(B: Class2Group, seed=None) -> CharacterTable:
    if B.order > MAX_ORDER:
        raise ValueError(f"|B| = {B.order} exceeds the oracle limit {MAX_ORDER}")
    seed = default_seed() if seed is None else seed
    classes = class_order(B)
    sizes = np.array([len(c) for c in classes], dtype=float)
    M = class_multiplication(B, classes).astype(float)
    r = len(classes)
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES + 1):
        coeffs = rng.random(r)
        S = np.tensordot(coeffs, M, axes=1)
        vals, vecs = np.linalg.eig(S)
        gaps = np.abs(vals[:, None] - vals[None, :])
        np.fill_diagonal(gaps, np.inf)
        if r == 1 or gaps.min() > CLUSTER_TOL * max(1.0, np.abs(vals).max()):
            break
    else:
        raise DegenerateSpectrum(f"no separating combination after {MAX_RETRIES} retries")
    w = vecs / vecs[0]  # the identity class has w = 1
    degrees = np.sqrt(B.order / np.sum(np.abs(w) ** 2 / sizes[:, None], axis=0))
    chars = (w * degrees[None, :] / sizes[:, None]).T  # rows = irreducibles
    table = CharacterTable(
        class_reps=[int(c[0]) for c in classes],
        class_sizes=[len(c) for c in classes],
        values=chars,
        degrees=[int(round(d)) for d in degrees],
    )
    return canonicalize(table)


def _row_key(degree: int, row: np.ndarray):
    rounded = np.round(row, 6) + 0.0  # +0.0 folds -0.0
    return (degree,) + tuple(v for z in rounded for v in (z.real + 0.0, z.imag + 0.0))


def canonicalize(table: CharacterTable) -> CharacterTable:
    order = sorted(range(len(table.degrees)), key=lambda i: _row_key(table.degrees[i], table.values[i]))
    return CharacterTable(
        class_reps=table.class_reps,
        class_sizes=table.class_sizes,
        values=table.values[order],
        degrees=[table.degrees[i] for i in order],
        exact=[table.exact[i] for i in order] if table.exact else None,
        labels=[table.labels[i] for i in order] if table.labels else None,
    )


@dataclass
class SelfCheck:
    row_orthogonality: float
    column_orthogonality: float
    degree_sum: int
    degrees_divide_order: bool

    def ok(self, order: int, tol: float = 1e-9) -> bool:
        return (self.row_orthogonality < tol and self.column_orthogonality < tol
                and self.degree_sum == order and self.degrees_divide_order)


def self_check(table: CharacterTable, order: int) -> SelfCheck:
    X = table.values
    sizes = np.array(table.class_sizes, dtype=float)
    rows = (X * sizes) @ X.conj().T / order
    cols = X.conj().T @ X
    cols_expected = np.diag(order / sizes)
    return SelfCheck(
        row_orthogonality=float(np.abs(rows - np.eye(len(X))).max()),
        column_orthogonality=float(np.abs(cols - cols_expected).max()),
        degree_sum=int(sum(d * d for d in table.degrees)),
        degrees_divide_order=all(order % d == 0 for d in table.degrees),
    )


@dataclass
class MatchReport:
    mapping: list  # orbit row -> oracle row
    max_deviation: float


def match_tables(orbit_table: CharacterTable, oracle_table: CharacterTable, tol: float = 1e-6) -> MatchReport:
    """Bijection between rows agreeing within ``tol`` at every class representative."""
    if orbit_table.class_reps != oracle_table.class_reps:
        raise NoBijection("tables use different class representatives")
    P, Q = orbit_table.values, oracle_table.values
    if P.shape != Q.shape:
        raise NoBijection(f"table shapes differ: {P.shape} vs {Q.shape}")
    dev = np.abs(P[:, None, :] - Q[None, :, :]).max(axis=2)
    close = dev < tol
    mapping = []
    for i in range(len(P)):
        hits = np.flatnonzero(close[i])
        if len(hits) != 1:
            raise NoBijection(f"orbit row {i} matches {len(hits)} oracle rows")
        mapping.append(int(hits[0]))
    if len(set(mapping)) != len(mapping):
        raise NoBijection("two orbit rows match the same oracle row")
    return MatchReport(mapping, float(max(dev[i, j] for i, j in enumerate(mapping))))
