import itertools

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import assume, given, settings

from orbitkit.abelian import (FinAbGroup, Presentation, ab_add, all_characters, direct_sum, element_order, halve,
                              is_two_divisible, smith_decompose, smith_normal_form)
from orbitkit.cyclo import exponent_counts, reduce_counts
from orbitkit.errors import DimensionMismatch, InfiniteGroup, NotTwoDivisible

moduli = st.lists(st.integers(2, 9), min_size=1, max_size=3)
odd_moduli = st.lists(st.sampled_from([3, 5, 7, 9, 15]), min_size=1, max_size=3)


# -- brute-force presentation oracle ----------------------------------------------


def presented_order(relations) -> int:
    """|Z^n / <relations>| for a square nonsingular relation matrix, by subgroup closure.

    With N = |det R|, N Z^n lies inside the relation lattice, so the quotient is
    (Z/N)^n modulo the image of the relations; count that image by closure.
    """
    R = np.array(relations, dtype=np.int64)
    n = R.shape[1]
    N = abs(round(np.linalg.det(R)))
    gens = [tuple(int(v) % N for v in row) for row in R]
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % N for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return N**n // len(seen)


def generated_order(G: FinAbGroup, gens) -> int:
    seen = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


# -- basic arithmetic --------------------------------------------------------------


def test_add_examples():
    assert ab_add(FinAbGroup((3, 3)), (1, 2), (2, 2)) == (0, 1)
    assert ab_add(FinAbGroup((9,)), (8,), (1,)) == (0,)
    assert ab_add(FinAbGroup((3, 5)), (2, 4), (0, 0)) == (2, 4)


def test_order_and_exponent():
    G = FinAbGroup((4, 6, 9))
    assert G.order == 216
    assert G.exponent == 36


def test_enumeration_is_mixed_radix():
    G = FinAbGroup((3, 2))
    assert [tuple(x) for x in G.elements] == [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]
    assert G.index(G.zero) == 0


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        FinAbGroup((3, 3)).add((1,), (1, 1))


def test_two_divisibility_examples():
    assert is_two_divisible(FinAbGroup((3, 9)))
    assert not is_two_divisible(FinAbGroup((2, 2)))
    assert is_two_divisible(FinAbGroup((15,)))


def test_halve_examples():
    assert halve(FinAbGroup((3,)), (1,)) == (2,)
    assert halve(FinAbGroup((9,)), (4,)) == (2,)
    with pytest.raises(NotTwoDivisible):
        halve(FinAbGroup((2,)), (1,))


@given(odd_moduli, st.data())
def test_halve_properties(ms, data):
    G = FinAbGroup(tuple(ms))
    a = tuple(data.draw(st.integers(0, m - 1)) for m in ms)
    h = halve(G, a)
    assert G.add(h, h) == a
    assert halve(G, G.add(a, a)) == a


@given(moduli)
def test_tables_are_group_tables(ms):
    G = FinAbGroup(tuple(ms))
    T = G.add_table
    assert np.array_equal(T, T.T)
    assert np.all(T[0] == np.arange(G.order))
    assert np.all(T[np.arange(G.order), G.neg_table] == 0)
    for i in range(G.order):
        assert G.index(G.element(i)) == i


def test_direct_sum():
    assert direct_sum(FinAbGroup((3,)), FinAbGroup((5, 9))).moduli == (3, 5, 9)
    assert direct_sum().order == 1


# -- characters --------------------------------------------------------------------


def test_character_examples():
    assert all_characters(FinAbGroup((3,))) == [(0,), (1,), (2,)]
    assert len(all_characters(FinAbGroup((3, 3)))) == 9
    G = FinAbGroup((3, 9))
    assert all(G.char_exponent(G.zero, x) == 0 for x in G)


@pytest.mark.parametrize("ms", [(3,), (9,), (3, 9), (5, 5), (3, 3, 3), (27, 27)])
def test_character_orthogonality_exact(ms):
    # chi_s conj(chi_t) = chi_(s-t), so orthogonality is sum_x chi_u(x) = |G| [u = 0]
    G = FinAbGroup(ms)
    E = G.char_exponent_table(G.elements, G.elements)  # [u, x]
    e = G.exponent
    counts = exponent_counts(E, e)
    counts[0, 0] -= G.order
    assert not np.any(reduce_counts(counts, e))
    s, t = 1 % G.order, G.order - 1
    u = G.index(G.sub(G.element(s), G.element(t)))
    assert np.array_equal((E[s] - E[t]) % e, E[u])


# -- Smith normal form and presentations ------------------------------------------


def test_snf_transforms():
    M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    D, U, V, Vi = smith_normal_form(M)
    U, V, Vi, D = (np.array(x, dtype=object) for x in (U, V, Vi, D))
    assert np.array_equal(U @ np.array(M, dtype=object) @ V, D)
    assert np.array_equal(V @ Vi, np.eye(3, dtype=int).astype(object))
    assert [D[i, i] for i in range(3)] == [2, 6, 12]
    assert abs(round(np.linalg.det(U.astype(float)))) == 1


def test_presentation_cyclic_of_order_nine():
    # <x, y | 3x = 0, 3y = x>
    G, fwd, bwd = smith_decompose(Presentation(2, [[3, 0], [-1, 3]]))
    assert G.moduli == (9,)
    assert presented_order([[3, 0], [-1, 3]]) == 9
    y = fwd([0, 1])
    x = fwd([1, 0])
    assert element_order(G, y) == 9
    assert G.reduce(3 * np.array(y)) == tuple(x)


def test_presentation_trivial_cases():
    G, fwd, _ = smith_decompose(Presentation(1, [[5]]))
    assert G.moduli == (5,)
    assert tuple(fwd([1])) in {(1,), (4,), (2,), (3,)}
    G, _, _ = smith_decompose(Presentation(2, [[3, 0], [0, 3]]))
    assert G.moduli == (3, 3)


def test_presentation_infinite():
    with pytest.raises(InfiniteGroup):
        smith_decompose(Presentation(2, [[3, 0]]))
    with pytest.raises(InfiniteGroup):
        smith_decompose(Presentation(2, [[3, 0], [6, 0]]))


square_relations = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(square_relations)
def test_decomposition_matches_bruteforce(rels):
    det = abs(round(np.linalg.det(np.array(rels, dtype=float))))
    assume(0 < det <= 150)
    G, fwd, bwd = smith_decompose(Presentation(len(rels), rels))
    # forward kills relations, is onto, and |G| is the presented order: an isomorphism
    assert all(not any(fwd(r)) for r in rels)
    n = len(rels)
    units = [tuple(fwd(e)) for e in np.eye(n, dtype=np.int64)]
    assert generated_order(G, units) == G.order
    assert G.order == presented_order(rels)
    for k in range(len(G.moduli) - 1):
        assert G.moduli[k + 1] % G.moduli[k] == 0
    for y in itertools.islice(G, 200):
        assert tuple(fwd(bwd(np.array(y)))) == tuple(y)
