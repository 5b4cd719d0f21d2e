import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from orbitkit.abelian import FinAbGroup
from orbitkit.cocycle import Cocycle, random_cocycle
from orbitkit.cyclo import RootMultiple, reduce_counts
from orbitkit.errors import NotPerfectSquare, NotTwoDivisible
from orbitkit.lazard import L_group
from orbitkit.nilgroup import Class2Group, abelian, extraspecial_exp_p, heisenberg
from orbitkit.orbits import (Orbit, ad, additive_structure, coad, dual_orbit, duality_count_check,
                             enumerate_orbits, orbit_character, orbit_character_table, orbit_dimension,
                             orbit_method, stabilizer)


def carry_group():
    """Z/9 as an extension of Z/3 by Z/3 via the carry cocycle."""
    C = A = FinAbGroup((3,))
    table = np.array([[[1 if i + j >= 3 else 0] for j in range(3)] for i in range(3)])
    return Class2Group(A, C, Cocycle(C, A, table))


def size_histogram(orbits):
    vals, counts = np.unique([o.size for o in orbits], return_counts=True)
    return dict(zip(vals.tolist(), counts.tolist()))


@pytest.fixture(scope="module")
def h3():
    return heisenberg(3)


# -- additive structure ---------------------------------------------------------------


def test_abelian_ring_structure():
    s = additive_structure(L_group(abelian([3, 9])))
    assert s.G.moduli == (3, 9)


def test_carry_cocycle_gives_cyclic_nine():
    ring = L_group(carry_group())
    s = additive_structure(ring)
    assert s.G.moduli == (9,)
    # brute force: some element has additive order 9
    orders = []
    for i in range(ring.order):
        k, x = 1, i
        while x != 0:
            x = ring.add_table[x, i]
            k += 1
        orders.append(k)
    assert max(orders) == 9


def test_heisenberg_ring_structure(h3):
    ring = L_group(h3)
    assert additive_structure(ring).G.moduli == (3, 3, 3)
    for i in range(1, ring.order):
        assert ring.scale_idx(i, 3) == 0 and ring.scale_idx(i, 1) == i


def test_even_order_rejected():
    d8 = Class2Group(FinAbGroup((2,)), FinAbGroup((2, 2)),
                     Cocycle(FinAbGroup((2, 2)), FinAbGroup((2,)), np.zeros((4, 4), np.int64)))
    with pytest.raises(NotTwoDivisible):
        orbit_method(d8)


# -- adjoint and coadjoint actions -------------------------------------------------


def test_ad_examples(h3):
    z = ((1,), (0, 0))
    for l in h3.elements():
        assert ad(h3, z, l) == l
    B = abelian([3, 9])
    assert all(ad(B, b, l) == l for b in B.elements()[:5] for l in B.elements())
    # generator (0|1,0) shifts the a-component of (0|0,1) by the pairing
    assert ad(h3, ((0,), (1, 0)), ((0,), (0, 1))) == ((1,), (0, 1))


@pytest.mark.parametrize("B", [heisenberg(3), heisenberg(5), extraspecial_exp_p(3, 2)], ids=lambda B: B.name)
def test_ad_bracket_equals_conjugation(B):
    om = orbit_method(B)
    n = B.order
    b, l = (x.ravel() for x in np.meshgrid(np.arange(n), np.arange(n), indexing="ij"))
    assert np.array_equal(om.ad_idx(b, l), om.ad_conj_idx(b, l))


@pytest.mark.parametrize("B", [heisenberg(3), extraspecial_exp_p(3, 2)], ids=lambda B: B.name)
def test_coadjoint_is_an_action(B):
    om = orbit_method(B)
    T = om.coad_table
    m = B.mul_table
    for b1 in range(B.order):
        assert np.array_equal(T[b1][T], T[m[b1]])  # row b2: Ad*(b1) Ad*(b2) = Ad*(b1 b2)
    assert np.all(T[0] == np.arange(om.G.order))


def test_coad_examples(h3):
    om = orbit_method(h3)
    trivial = om.character((0, 0, 0))
    for b in h3.elements():
        assert coad(h3, b, trivial) == trivial
    z = ((2,), (0, 0))
    for t in om.G:
        chi = om.character(t)
        assert coad(h3, z, chi) == chi


# -- orbits ------------------------------------------------------------------------


def test_abelian_orbits():
    B = abelian([3, 9])
    orbits = enumerate_orbits(B)
    assert len(orbits) == 27 and all(o.size == 1 for o in orbits)


@pytest.mark.parametrize("p,hist", [(3, {1: 9, 9: 2}), (5, {1: 25, 25: 4}), (7, {1: 49, 49: 6})])
def test_heisenberg_orbits(p, hist):
    B = heisenberg(p)
    orbits = enumerate_orbits(B)
    assert size_histogram(orbits) == hist
    assert len(orbits) == p * p + p - 1
    assert [orbit_dimension(o) for o in orbits if o.size > 1] == [p] * (p - 1)


def test_orbits_are_canonical(h3):
    orbits = enumerate_orbits(h3)
    keys = [(o.size, o.representative.t) for o in orbits]
    assert keys == sorted(keys)
    for o in orbits:
        ts = [chi.t for chi in o]
        assert ts == sorted(ts)


def test_orbit_dimension_requires_square():
    with pytest.raises(NotPerfectSquare):
        orbit_dimension(Orbit(tuple(range(3)), tuple(range(3))))


# -- stabilisers and the character formula ------------------------------------------


def test_stabilizer_examples(h3):
    om = orbit_method(h3)
    assert len(stabilizer(h3, om.character((0, 0, 0)))) == 27
    for o in enumerate_orbits(h3):
        st_ = stabilizer(h3, o.representative)
        assert len(st_) == 27 // o.size
        if o.size == 9:
            assert sorted(st_) == sorted(h3.center_of())


@pytest.mark.parametrize("B", [heisenberg(3), heisenberg(5), extraspecial_exp_p(3, 2)], ids=lambda B: B.name)
def test_stabilizer_lemma(B):
    om = orbit_method(B)
    for o in om.orbits:
        ref = om.stabilizer_idx(o.member_idx[0])
        assert np.array_equal(ref, om.stabilizer_naive_idx(o.member_idx[0]))
        for t in o.member_idx[1:4]:
            assert np.array_equal(om.stabilizer_idx(t), ref)
            assert np.array_equal(om.chi_table[t, ref], om.chi_table[o.member_idx[0], ref])


def test_orbit_character_examples(h3):
    orbits = enumerate_orbits(h3)
    e = ((0,), (0, 0))
    for o in orbits:
        assert orbit_character(h3, o, e) == RootMultiple(orbit_dimension(o), 3, 0)
    big = orbits[-1]
    assert orbit_character(h3, big, ((0,), (1, 0))) == RootMultiple.zero(3)
    assert orbit_character(h3, big, ((1,), (0, 0))).scale == 3
    # every member of the orbit gives the same character
    for chi in big:
        for b in h3.elements():
            assert orbit_character(h3, big, b, chi) == orbit_character(h3, big, b)


def test_abelian_characters_are_the_characters_themselves():
    B = abelian([3, 9])
    om = orbit_method(B)
    for o in om.orbits:
        chi = o.representative
        for b in B.elements():
            assert orbit_character(B, o, b) == chi.value(b)


@pytest.mark.parametrize("B", [abelian([3, 9]), heisenberg(3), heisenberg(5)], ids=lambda B: B.name)
def test_first_orthogonality_exact(B):
    om = orbit_method(B)
    rows = [om.character_row(k) for k in range(len(om.orbits))]
    e = om.e
    for i, r in enumerate(rows):
        for j, s in enumerate(rows):
            counts = np.zeros(e, dtype=np.int64)
            for x, y in zip(r, s):
                if x.scale and y.scale:
                    counts[(x.exponent - y.exponent) % e] += x.scale * y.scale
            counts[0] -= B.order * (i == j)
            assert not np.any(reduce_counts(counts, e)), (i, j)


def test_dual_orbits(h3):
    orbits = enumerate_orbits(h3)
    assert dual_orbit(h3, orbits[0]) == orbits[0]
    big = [o for o in orbits if o.size == 9]
    assert dual_orbit(h3, big[0]) == big[1] and dual_orbit(h3, big[1]) == big[0]
    for o in orbits:
        d = dual_orbit(h3, o)
        for b in h3.elements():
            assert orbit_character(h3, d, b) == orbit_character(h3, o, b).conjugate()


# -- counting -----------------------------------------------------------------------


@pytest.mark.parametrize("B,count", [(abelian([3, 9]), 27), (heisenberg(3), 11), (heisenberg(5), 29),
                                     (heisenberg(7), 55), (extraspecial_exp_p(3, 2), 83)],
                         ids=lambda x: getattr(x, "name", str(x)))
def test_duality_counts(B, count):
    rep = duality_count_check(B)
    assert rep.ok
    assert rep.ad_orbits == rep.coad_orbits == rep.conjugacy_classes == count


PAIRS = [(FinAbGroup(c), FinAbGroup(a)) for c, a in
         [((3, 3), (3,)), ((9,), (3,)), ((3, 9), (9,)), ((5, 5), (5,)), ((3, 3, 3), (3, 3)), ((9, 9), (3,)),
          ((3, 3, 3, 3), (3,)), ((3, 3), (9,))]]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(0, 2**32 - 1))
def test_orbit_method_on_random_groups(pair, seed):
    C, A = pair
    B = Class2Group(A, C, random_cocycle(C, A, rng=seed))
    om = orbit_method(B)
    sizes = [o.size for o in om.orbits]
    assert sum(sizes) == B.order
    assert all(int(round(s**0.5)) ** 2 == s for s in sizes)
    assert duality_count_check(B).ok
    for k, o in enumerate(om.orbits):
        assert len(om.orbit_stabilizers[k]) * o.size == B.order
        assert om.dual_index(om.dual_index(k)) == k
    table = orbit_character_table(B)
    X, w = table.values, np.array(table.class_sizes)
    assert np.allclose((X * w) @ X.conj().T / B.order, np.eye(len(X)), atol=1e-9)
