"""Coadjoint orbits and the character formula.

Characters of the additive group of L(B) are exponent vectors on its
invariant-factor form G (see ``additive_structure``), indexed like G's elements.
The coadjoint action Ad*(b) chi (l) = chi(l - [b, l]) is computed exactly on
exponents; orbits come from closing under the generators of B only.

Because L(B) and B share their element set, a character can be evaluated at a
group element directly, which is what the character formula

    char_Omega(b) = n chi(b)  if b in Stab(chi),  else 0,    n^2 = #Omega

needs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import isqrt
from typing import Optional

import numpy as np

from .abelian import FinAbGroup, Presentation, smith_decompose
from .cyclo import RootMultiple
from .errors import CountMismatch, InternalPresentationError, NotPerfectSquare, NotTwoDivisible
from .lazard import LieRing, L_group
from .nilgroup import Class2Group, GroupElement


# ---------------------------------------------------------------------------
# additive structure of L(B)
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class AdditiveStructure:
    ring: LieRing
    G: FinAbGroup
    to_idx: np.ndarray  # Lie-element index -> G-element index
    from_idx: np.ndarray  # G-element index -> Lie-element index

    def to_coords(self, l) -> tuple:
        return self.G.element(self.to_idx[self.ring.index(l)])

    def from_coords(self, g) -> GroupElement:
        return self.ring.element(self.from_idx[self.G.index(g)])

    @cached_property
    def coords(self) -> np.ndarray:
        """G-coordinates of every Lie element, rows in Lie-index order."""
        return self.G.elements[self.to_idx]

    @cached_property
    def basis(self) -> np.ndarray:
        """Lie indices of G's unit vectors; they generate the additive group."""
        return self.from_idx[self.G.strides] if self.G.rank else np.zeros(0, dtype=np.int64)


def additive_structure(ring: LieRing) -> AdditiveStructure:
    """Invariant-factor form of (L(B), +).

    Generators x_i = (e_i, 0) and y_j = (0, f_j); relations d_i x_i = 0 and
    m_j y_j = sigma_j with sigma_j = sum_{t=1}^{m_j - 1} phi(t f_j, f_j) in A.
    The relation matrix is block triangular with determinant |A||C| = |L(B)|,
    so the presentation is complete.
    """
    A, C, phi = ring.A, ring.C, ring.phi
    kA, kC = A.rank, C.rank
    rels = []
    for i, d in enumerate(A.moduli):
        rels.append([d if k == i else 0 for k in range(kA + kC)])
    for j, m in enumerate(C.moduli):
        f = [int(k == j) for k in range(kC)]
        sigma = [0] * kA
        for t in range(1, m):
            sigma = A.add(sigma, phi(C.scale(t, f), f))
        rels.append([-s for s in sigma] + [m if k == j else 0 for k in range(kC)])
    pres = Presentation(kA + kC, rels)
    G, forward, _ = smith_decompose(pres)

    # enumerate sum u_i x_i + sum v_j y_j for 0 <= u_i < d_i, 0 <= v_j < m_j (first coordinate fastest)
    gens = [ring.index((tuple(int(k == i) for k in range(kA)), C.zero)) for i in range(kA)]
    gens += [ring.index((A.zero, tuple(int(k == j) for k in range(kC)))) for j in range(kC)]
    radices = list(A.moduli) + list(C.moduli)
    elems = np.zeros(1, dtype=np.int64)
    for g, r in zip(gens, radices):
        multiples = [ring.scale_idx(g, s) for s in range(r)]
        elems = np.concatenate([ring.add_table[elems, s] for s in multiples])
    pres_coords = FinAbGroup(tuple(radices)).elements if radices else np.zeros((1, 0), np.int64)
    g_idx = G.index_array(forward(pres_coords))

    if len(np.unique(elems)) != ring.order or len(np.unique(g_idx)) != G.order or G.order != ring.order:
        raise InternalPresentationError("presentation transversal is not a bijection")
    to_idx = np.empty(ring.order, dtype=np.int64)
    to_idx[elems] = g_idx
    from_idx = np.empty(G.order, dtype=np.int64)
    from_idx[to_idx] = np.arange(ring.order)
    structure = AdditiveStructure(ring, G, to_idx, from_idx)
    X = structure.coords
    lhs = X[ring.add_table]
    rhs = (X[:, None, :] + X[None, :, :]) % G.mod
    if not np.array_equal(lhs, rhs):
        raise InternalPresentationError("coordinate map is not additive")
    return structure


# ---------------------------------------------------------------------------
# characters and orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    t: tuple
    structure: AdditiveStructure = field(compare=False, repr=False)

    @property
    def index(self) -> int:
        return self.structure.G.index(self.t)

    def exponent_at(self, l) -> int:
        """chi(l) = zeta_e^k with e the exponent of G; returns k."""
        return self.structure.G.char_exponent(self.t, self.structure.to_coords(l))

    def value(self, l) -> RootMultiple:
        return RootMultiple(1, self.structure.G.exponent, self.exponent_at(l))

    def __neg__(self) -> "Character":
        return Character(self.structure.G.neg(self.t), self.structure)


@dataclass(frozen=True)
class Orbit:
    members: tuple  # Characters, lexicographic in t
    member_idx: tuple = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def representative(self) -> Character:
        return self.members[0]

    def __contains__(self, chi) -> bool:
        return chi in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def _components(n: int, perms) -> list[list[int]]:
    seen = np.zeros(n, dtype=bool)
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            x = queue.popleft()
            for p in perms:
                y = int(p[x])
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(comp)
    return comps


class OrbitMethod:
    """Cached orbit-method data for one odd-order class-2 group."""

    def __init__(self, B: Class2Group):
        if B.order % 2 == 0:
            raise NotTwoDivisible(f"|B| = {B.order} is even")
        self.B = B

    @cached_property
    def ring(self) -> LieRing:
        return L_group(self.B)

    @cached_property
    def structure(self) -> AdditiveStructure:
        return additive_structure(self.ring)

    @property
    def G(self) -> FinAbGroup:
        return self.structure.G

    @property
    def e(self) -> int:
        return self.G.exponent

    @cached_property
    def chi_table(self) -> np.ndarray:
        """``chi_table[t, l]`` = exponent of chi_t at Lie/group element l."""
        return self.G.char_exponent_table(self.G.elements, self.structure.coords)

    @cached_property
    def lex_rank(self) -> np.ndarray:
        """Position of each character index in lexicographic order of exponent vectors."""
        T = self.G.elements
        order = np.lexsort(T.T[::-1]) if self.G.rank else np.zeros(1, dtype=np.int64)
        rank = np.empty(len(order), dtype=np.int64)
        rank[order] = np.arange(len(order))
        return rank

    def character(self, t) -> Character:
        return Character(self.G.reduce(t), self.structure)

    def character_at(self, idx: int) -> Character:
        return Character(self.G.element(idx), self.structure)

    # -- adjoint ------------------------------------------------------------

    def ad_idx(self, b, l):
        """Ad(b) l = l + [b, l]."""
        ring = self.ring
        return ring.add_table[l, ring.bracket_table[b, l]]

    def ad_conj_idx(self, b, l):
        """Ad(b) l = b l b^-1, read back in L(B)."""
        m = self.B.mul_table
        return m[m[b, l], self.B.inv_table[b]]

    # -- coadjoint ----------------------------------------------------------

    def coad_perm(self, b: int) -> np.ndarray:
        """Character index of Ad*(b) chi_t for every t."""
        ring, G = self.ring, self.G
        basis = self.structure.basis
        shifted = ring.sub_idx(basis, ring.bracket_table[b, basis])  # l_j - [b, l_j]
        vals = self.chi_table[:, shifted]
        w = G.char_weights
        if np.any(vals % w):
            raise InternalPresentationError("coadjoint image is not a character")
        return G.index_array(vals // w)

    @cached_property
    def coad_table(self) -> np.ndarray:
        """``coad_table[b, t]`` = index of Ad*(b) chi_t."""
        return np.stack([self.coad_perm(b) for b in range(self.B.order)])

    @cached_property
    def generators(self) -> np.ndarray:
        """Indices of the A-basis and the C-basis lifts (0, f_j)."""
        B = self.B
        gens = [B.index((tuple(int(k == i) for k in range(B.A.rank)), B.C.zero)) for i in range(B.A.rank)]
        gens += [B.index((B.A.zero, tuple(int(k == j) for k in range(B.C.rank)))) for j in range(B.C.rank)]
        return np.array(gens, dtype=np.int64)

    @cached_property
    def orbits(self) -> list[Orbit]:
        perms = [self.coad_perm(int(g)) for g in self.generators]
        comps = _components(self.G.order, perms)
        rank = self.lex_rank
        out = []
        for comp in comps:
            idx = sorted(comp, key=lambda i: rank[i])
            out.append(Orbit(tuple(self.character_at(i) for i in idx), tuple(idx)))
        out.sort(key=lambda o: (o.size, rank[o.member_idx[0]]))
        return out

    @cached_property
    def orbit_of(self) -> np.ndarray:
        """Orbit number of each character index."""
        lab = np.empty(self.G.order, dtype=np.int64)
        for k, o in enumerate(self.orbits):
            lab[list(o.member_idx)] = k
        return lab

    def ad_orbit_count(self) -> int:
        n = self.B.order
        perms = [self.ad_idx(int(g), np.arange(n)) for g in self.generators]
        return len(_components(n, perms))

    # -- stabilisers and the character formula --------------------------------

    def stabilizer_idx(self, t: int) -> np.ndarray:
        """{b : chi_t([b, l]) = 1 for every generator l of the additive group}."""
        basis = self.structure.basis
        vals = self.chi_table[t][self.ring.bracket_table[:, basis]]
        return np.flatnonzero(~np.any(vals, axis=1)) if len(basis) else np.arange(self.B.order)

    def stabilizer_naive_idx(self, t: int) -> np.ndarray:
        return np.flatnonzero(self.coad_table[:, t] == t)

    @cached_property
    def orbit_stabilizers(self) -> list[np.ndarray]:
        return [self.stabilizer_idx(o.member_idx[0]) for o in self.orbits]

    def dimension(self, k: int) -> int:
        return orbit_dimension(self.orbits[k])

    def character_row(self, k: int) -> list[RootMultiple]:
        """Exact character of the k-th orbit at every group element."""
        o = self.orbits[k]
        n = orbit_dimension(o)
        t = o.member_idx[0]
        row = [RootMultiple.zero(self.e)] * self.B.order
        for b in self.orbit_stabilizers[k]:
            row[b] = RootMultiple(n, self.e, int(self.chi_table[t, b]))
        return row

    @cached_property
    def character_matrix(self) -> np.ndarray:
        """Complex character values, rows = orbits, columns = group elements."""
        out = np.zeros((len(self.orbits), self.B.order), dtype=complex)
        for k, o in enumerate(self.orbits):
            n = orbit_dimension(o)
            st = self.orbit_stabilizers[k]
            out[k, st] = n * np.exp(2j * np.pi * self.chi_table[o.member_idx[0], st] / self.e)
        return out

    def dual_index(self, k: int) -> int:
        t = self.orbits[k].member_idx[0]
        return int(self.orbit_of[self.G.neg_table[t]])


def orbit_method(B: Class2Group) -> OrbitMethod:
    om = getattr(B, "_orbit_method", None)
    if om is None:
        om = OrbitMethod(B)
        B._orbit_method = om
    return om


# ---------------------------------------------------------------------------
# element-level API
# ---------------------------------------------------------------------------


def ad(B: Class2Group, b, l) -> GroupElement:
    om = orbit_method(B)
    return B.element(om.ad_idx(B.index(b), B.index(l)))


def coad(B: Class2Group, b, chi: Character) -> Character:
    om = orbit_method(B)
    return om.character_at(om.coad_perm(B.index(b))[chi.index])


def enumerate_orbits(B: Class2Group) -> list[Orbit]:
    return orbit_method(B).orbits


def stabilizer(B: Class2Group, chi: Character) -> list[GroupElement]:
    return [B.element(i) for i in orbit_method(B).stabilizer_idx(chi.index)]


def orbit_dimension(orbit: Orbit) -> int:
    n = isqrt(orbit.size)
    if n * n != orbit.size:
        raise NotPerfectSquare(f"orbit of size {orbit.size} is not a perfect square")
    return n


def orbit_character(B: Class2Group, orbit: Orbit, b, chi: Optional[Character] = None) -> RootMultiple:
    """Character-formula value at b, using ``chi`` (default: the representative) from the orbit."""
    om = orbit_method(B)
    chi = orbit.representative if chi is None else chi
    n = orbit_dimension(orbit)
    bi = B.index(b)
    if bi in set(om.stabilizer_idx(chi.index).tolist()):
        return RootMultiple(n, om.e, int(om.chi_table[chi.index, bi]))
    return RootMultiple.zero(om.e)


def dual_orbit(B: Class2Group, orbit: Orbit) -> Orbit:
    om = orbit_method(B)
    return om.orbits[int(om.orbit_of[om.G.neg_table[orbit.member_idx[0]]])]


@dataclass
class DualityReport:
    ad_orbits: int
    coad_orbits: int
    conjugacy_classes: int

    @property
    def ok(self) -> bool:
        return self.ad_orbits == self.coad_orbits == self.conjugacy_classes


def duality_count_check(B: Class2Group, strict: bool = True) -> DualityReport:
    om = orbit_method(B)
    report = DualityReport(om.ad_orbit_count(), len(om.orbits), len(B.conjugacy_classes_idx()))
    if strict and not report.ok:
        raise CountMismatch(f"orbit/class counts disagree: {report}")
    return report


# ---------------------------------------------------------------------------
# character table
# ---------------------------------------------------------------------------


@dataclass
class CharacterTable:
    """Rows = irreducibles, columns = conjugacy classes (ordered by size, then representative)."""

    class_reps: list[int]
    class_sizes: list[int]
    values: np.ndarray  # complex, rows x classes
    degrees: list[int]
    exact: Optional[list[list[RootMultiple]]] = None
    labels: Optional[list[str]] = None


def class_order(B: Class2Group) -> list[np.ndarray]:
    classes = B.conjugacy_classes_idx()
    return sorted(classes, key=lambda c: (len(c), int(c[0])))


def orbit_character_table(B: Class2Group) -> CharacterTable:
    om = orbit_method(B)
    classes = class_order(B)
    reps = [int(c[0]) for c in classes]
    exact = []
    for k in range(len(om.orbits)):
        row = om.character_row(k)
        exact.append([row[r] for r in reps])
    labels = [str(o.representative.t) for o in om.orbits]
    return CharacterTable(
        class_reps=reps,
        class_sizes=[len(c) for c in classes],
        values=om.character_matrix[:, reps],
        degrees=[orbit_dimension(o) for o in om.orbits],
        exact=exact,
        labels=labels,
    )
