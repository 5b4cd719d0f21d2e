"""Groups of nilpotency class 2 built as central extensions B = A x C.

Multiplication is (a1, c1)(a2, c2) = (a1 + a2 + psi(c1, c2), c1 + c2).  The
cocycle is centered on construction so the identity is (0, 0); the caller's
cocycle is kept as ``raw_psi`` together with the relabelling that carries raw
coordinates to stored ones.

Elements are indexed ``ia + |A| * ic`` (A coordinates vary fastest), and all
heavy operations go through dense index tables.
"""
from __future__ import annotations

from functools import cached_property
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .abelian import FinAbGroup, direct_sum
from .cocycle import Cocycle, center, centering_chain, from_bilinear, is_nondegenerate, zero_cocycle
from .errors import CenterMismatch, EvenPrime, NotTwoRootable


class GroupElement(NamedTuple):
    a: tuple
    c: tuple

    def __str__(self):
        return f"({','.join(map(str, self.a))}|{','.join(map(str, self.c))})"


class Class2Group:
    def __init__(self, A: FinAbGroup, C: FinAbGroup, psi: Cocycle, strict_center=False, name=None):
        if psi.A != A or psi.C != C:
            raise ValueError("cocycle groups do not match (A, C)")
        self.A = A
        self.C = C
        self.raw_psi = psi
        self.psi = center(psi)
        self.name = name
        self.strict_center = strict_center
        # raw (a, c) corresponds to stored (a - q(c), c) with q the centering chain
        self._raw_shift = centering_chain(psi)[0] if C.order else np.zeros(A.rank, np.int64)
        if strict_center and not is_nondegenerate(self.psi):
            witness = _degenerate_witness(self.psi)
            raise CenterMismatch(
                f"strict_center requested but psi is degenerate: c = {witness} commutes with all of C",
                witness)

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"Class2Group({label}A={list(self.A.moduli)}, C={list(self.C.moduli)}, order={self.order})"

    @property
    def order(self) -> int:
        return self.A.order * self.C.order

    def __len__(self):
        return self.order

    # -- indexing -------------------------------------------------------------

    def index(self, x) -> int:
        x = GroupElement(*x)
        return self.A.index(x.a) + self.A.order * self.C.index(x.c)

    def element(self, i: int) -> GroupElement:
        i = int(i)
        return GroupElement(self.A.element(i % self.A.order), self.C.element(i // self.A.order))

    def elements(self) -> list[GroupElement]:
        return [self.element(i) for i in range(self.order)]

    @cached_property
    def a_index(self) -> np.ndarray:
        return np.arange(self.order) % self.A.order

    @cached_property
    def c_index(self) -> np.ndarray:
        return np.arange(self.order) // self.A.order

    @property
    def identity(self) -> int:
        return 0

    # -- tables ---------------------------------------------------------------

    @cached_property
    def mul_table(self) -> np.ndarray:
        nA = self.A.order
        ia, ic = self.a_index, self.c_index
        psi = self.psi.index_table
        Aadd = self.A.add_table
        a = Aadd[Aadd[ia[:, None], ia[None, :]], psi[ic[:, None], ic[None, :]]]
        c = self.C.add_table[ic[:, None], ic[None, :]]
        out = (a + nA * c).astype(np.int32 if self.order < 2**31 else np.int64)
        out.setflags(write=False)
        return out

    @cached_property
    def inv_table(self) -> np.ndarray:
        nC = self.C.order
        negc = self.C.neg_table
        t = self.psi.index_table[np.arange(nC), negc]  # psi(c, -c)
        a = self.A.add_table[self.A.neg_table[self.a_index], self.A.neg_table[t[self.c_index]]]
        return a + self.A.order * negc[self.c_index]

    @cached_property
    def orders(self) -> np.ndarray:
        """Order of every element (vectorised power chain)."""
        orders = np.zeros(self.order, dtype=np.int64)
        power = np.arange(self.order)
        k = 1
        idx = np.arange(self.order)
        while True:
            hit = (power == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            power = self.mul_table[power, idx]
            k += 1

    # -- element API ------------------------------------------------------------

    def mul(self, x, y) -> GroupElement:
        return self.element(self.mul_table[self.index(x), self.index(y)])

    def inv(self, x) -> GroupElement:
        return self.element(self.inv_table[self.index(x)])

    def commutator(self, x, y) -> GroupElement:
        return self.element(self.commutator_idx(self.index(x), self.index(y)))

    def commutator_idx(self, i, j):
        m, v = self.mul_table, self.inv_table
        return m[m[m[i, j], v[i]], v[j]]

    @cached_property
    def commutator_table(self) -> np.ndarray:
        i = np.arange(self.order)
        return self.commutator_idx(i[:, None], i[None, :])

    def power_idx(self, i: int, k: int) -> int:
        result, base = 0, int(i)
        k = int(k)
        while k:
            if k & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            k >>= 1
        return result

    def half_idx(self, i: int) -> int:
        if self.order % 2 == 0:
            raise NotTwoRootable(f"group of order {self.order} is not 2-rootable")
        return self.power_idx(i, (int(self.orders[i]) + 1) // 2)

    @cached_property
    def half_table(self) -> np.ndarray:
        return np.array([self.half_idx(i) for i in range(self.order)], dtype=np.int64)

    def half_element(self, x) -> GroupElement:
        return self.element(self.half_idx(self.index(x)))

    # -- raw-cocycle view (psi(0,0) possibly nonzero) -------------------------

    def raw_mul(self, x, y) -> GroupElement:
        x, y = GroupElement(*x), GroupElement(*y)
        A = self.A
        a = A.add(A.add(x.a, y.a), self.raw_psi(x.c, y.c))
        return GroupElement(a, self.C.add(x.c, y.c))

    def raw_identity(self) -> GroupElement:
        return GroupElement(self.A.neg(self.raw_psi(self.C.zero, self.C.zero)), self.C.zero)

    def raw_inv(self, x) -> GroupElement:
        """(-a - psi(c,-c) - psi(0,0), -c) in raw coordinates."""
        x = GroupElement(*x)
        A, C, psi = self.A, self.C, self.raw_psi
        negc = C.neg(x.c)
        a = A.sub(A.sub(A.neg(x.a), psi(x.c, negc)), psi(C.zero, C.zero))
        return GroupElement(a, negc)

    def from_raw(self, x) -> GroupElement:
        x = GroupElement(*x)
        return GroupElement(self.A.sub(x.a, tuple(int(v) for v in self._raw_shift)), x.c)

    # -- structure ---------------------------------------------------------------

    def center_idx(self) -> np.ndarray:
        comm = self.mul_table == self.mul_table.T
        return np.flatnonzero(comm.all(axis=1))

    def center_of(self) -> list[GroupElement]:
        return [self.element(i) for i in self.center_idx()]

    @cached_property
    def conjugacy_labels(self) -> np.ndarray:
        """Least element index in each element's conjugacy class."""
        m, v = self.mul_table, self.inv_table
        g = np.arange(self.order)
        # conj[g, x] = g x g^-1
        conj = m[m[g[:, None], g[None, :]], v[g][:, None]]
        return conj.min(axis=0)

    def conjugacy_classes_idx(self) -> list[np.ndarray]:
        labels = self.conjugacy_labels
        reps = np.unique(labels)
        return [np.flatnonzero(labels == r) for r in reps]

    def conjugacy_classes(self) -> list[list[GroupElement]]:
        return [[self.element(i) for i in cls] for cls in self.conjugacy_classes_idx()]

    def is_class_at_most_two(self) -> bool:
        """All commutators central."""
        comm = np.unique(self.commutator_table)
        centre = set(self.center_idx().tolist())
        return all(int(x) in centre for x in comm)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.T))

    def associativity_check(self, samples=None, rng=None):
        """Exhaustive when ``samples`` is None; returns the first failing triple or None."""
        m = self.mul_table
        n = self.order
        if samples is None:
            for i in range(n):
                lhs = m[m[i][:, None], np.arange(n)[None, :]]
                rhs = m[i][m]
                bad = np.argwhere(lhs != rhs)
                if len(bad):
                    return i, int(bad[0][0]), int(bad[0][1])
            return None
        rng = np.random.default_rng(rng)
        x, y, z = rng.integers(0, n, size=(3, samples))
        bad = np.flatnonzero(m[m[x, y], z] != m[x, m[y, z]])
        if len(bad):
            t = bad[0]
            return int(x[t]), int(y[t]), int(z[t])
        return None


def _degenerate_witness(psi: Cocycle):
    diff = np.any((psi.table - psi.table.transpose(1, 0, 2)) % psi.A.mod, axis=-1)
    for i in range(1, psi.C.order):
        if not diff[i].any():
            return psi.C.element(i)
    return None


# -- free functions mirroring the methods ---------------------------------------


def mul(B: Class2Group, x, y) -> GroupElement:
    return B.mul(x, y)


def inv(B: Class2Group, x) -> GroupElement:
    return B.inv(x)


def commutator(B: Class2Group, x, y) -> GroupElement:
    return B.commutator(x, y)


def center_of(B: Class2Group) -> list[GroupElement]:
    return B.center_of()


def conjugacy_classes(B: Class2Group) -> list[list[GroupElement]]:
    return B.conjugacy_classes()


def half_element(B: Class2Group, x) -> GroupElement:
    return B.half_element(x)


def as_index_map(B1, B2, f) -> np.ndarray:
    """Normalise a dense element map (index array, or dict/callable on elements)."""
    if callable(f) and not isinstance(f, (np.ndarray, Mapping)):
        return np.array([B2.index(f(B1.element(i))) for i in range(B1.order)], dtype=np.int64)
    if isinstance(f, Mapping):
        return np.array([B2.index(f[B1.element(i)]) for i in range(B1.order)], dtype=np.int64)
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (B1.order,):
        raise ValueError(f"element map has shape {f.shape}, expected ({B1.order},)")
    return f


def hom_violation(m1: np.ndarray, m2: np.ndarray, f: np.ndarray):
    """First pair (i, j) with f(i j) != f(i) f(j), given multiplication tables."""
    bad = np.argwhere(f[m1] != m2[f[:, None], f[None, :]])
    return (int(bad[0][0]), int(bad[0][1])) if len(bad) else None


def hom_check(B1: Class2Group, B2: Class2Group, f) -> bool:
    f = as_index_map(B1, B2, f)
    return hom_violation(B1.mul_table, B2.mul_table, f) is None


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def _odd_prime(p: int) -> int:
    p = int(p)
    if p == 2:
        raise EvenPrime("p = 2 is outside the odd-order scope")
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not a prime")
    return p


def heisenberg(p: int) -> Class2Group:
    p = _odd_prime(p)
    A, C = FinAbGroup((p,)), FinAbGroup((p, p))
    return Class2Group(A, C, from_bilinear(C, A, [[0, 1], [0, 0]]), name=f"heisenberg:{p}")


def extraspecial_exp_p(p: int, n: int) -> Class2Group:
    """Extraspecial group of order p^(2n+1), exponent p: psi(c, c') = sum_i c_i c'_(n+i)."""
    p = _odd_prime(p)
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    A, C = FinAbGroup((p,)), FinAbGroup((p,) * (2 * n))
    M = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        M[i, n + i] = 1
    return Class2Group(A, C, from_bilinear(C, A, M), name=f"extraspecial_exp_p:{p},{n}")


def abelian(moduli: Sequence[int]) -> Class2Group:
    """Abelian group: the whole group sits in A (its centre), C is trivial."""
    A, C = FinAbGroup(tuple(moduli)), FinAbGroup(())
    name = "abelian:[" + ",".join(map(str, A.moduli)) + "]"
    return Class2Group(A, C, zero_cocycle(C, A), name=name)


def direct_product(B1: Class2Group, B2: Class2Group) -> Class2Group:
    A, C = direct_sum(B1.A, B2.A), direct_sum(B1.C, B2.C)
    n1 = B1.C.order
    # C = C1 + C2 with C1 coordinates fastest: index i1 + n1 * i2
    i1 = np.arange(C.order) % n1
    i2 = np.arange(C.order) // n1
    t1 = B1.raw_psi.table[i1[:, None], i1[None, :]]
    t2 = B2.raw_psi.table[i2[:, None], i2[None, :]]
    psi = Cocycle(C, A, np.concatenate([t1, t2], axis=-1), check=False)
    name = f"{B1.name}*{B2.name}" if B1.name and B2.name else None
    return Class2Group(A, C, psi, name=name)


CATALOG_BUILDERS = {
    "heisenberg": heisenberg,
    "extraspecial_exp_p": extraspecial_exp_p,
    "abelian": abelian,
    "direct_product": direct_product,
}


def catalog(name: str, *params) -> Class2Group:
    try:
        builder = CATALOG_BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown catalog group {name!r}; known: {sorted(CATALOG_BUILDERS)}") from None
    return builder(*params)


# (name, args) pairs listed by ``orbitkit catalog``; kept small enough for dense work
STANDARD_CATALOG = [
    ("abelian", ([3],)),
    ("abelian", ([5],)),
    ("abelian", ([9],)),
    ("abelian", ([3, 3],)),
    ("abelian", ([15],)),
    ("abelian", ([3, 9],)),
    ("heisenberg", (3,)),
    ("direct_product", ("heisenberg:3", "abelian:[3]")),
    ("heisenberg", (5,)),
    ("extraspecial_exp_p", (3, 2)),
    ("heisenberg", (7,)),
]


def standard_catalog(max_order=None) -> list[Class2Group]:
    from .groupspec import parse_shorthand

    groups = []
    for name, args in STANDARD_CATALOG:
        if name == "direct_product":
            groups.append(direct_product(*(parse_shorthand(s) for s in args)))
        else:
            groups.append(catalog(name, *args))
    if max_order is not None:
        groups = [B for B in groups if B.order <= max_order]
    return sorted(groups, key=lambda B: (B.order, B.name))
