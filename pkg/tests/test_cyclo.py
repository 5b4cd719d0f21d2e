import hypothesis.strategies as st
import numpy as np
from hypothesis import given

from orbitkit.cyclo import (RootMultiple, cyclotomic_coeffs, exponent_counts, format_complex, reduce_counts,
                            root_sum_equals)


def test_cyclotomic_coefficients():
    assert cyclotomic_coeffs(3) == (1, 1, 1)
    assert cyclotomic_coeffs(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_coeffs(15) == (1, -1, 0, 1, -1, 1, 0, -1, 1)


def test_sum_of_all_roots_vanishes():
    for e in (1, 3, 5, 9, 15, 27):
        counts = np.ones(e, dtype=np.int64)
        counts[0] -= 1 if e == 1 else 0
        assert not np.any(reduce_counts(counts, e))


@given(st.sampled_from([3, 5, 7, 9, 15, 25, 27]), st.data())
def test_reduction_detects_zero(e, data):
    counts = np.array(data.draw(st.lists(st.integers(0, 3), min_size=e, max_size=e)))
    # add a random multiple of a vanishing sum over a coset of a prime-order subgroup
    p = min(d for d in range(2, e + 1) if e % d == 0)
    shift = data.draw(st.integers(0, e - 1))
    counts[(shift + np.arange(p) * (e // p)) % e] += data.draw(st.integers(0, 2))
    value = complex(np.sum(counts * np.exp(2j * np.pi * np.arange(e) / e)))
    assert (not np.any(reduce_counts(counts, e))) == (abs(value) < 1e-9)


def test_root_sum_equals():
    e = 9
    counts = exponent_counts(np.array([3, 3, 3]), e)
    assert root_sum_equals(counts, RootMultiple(3, 3, 1), e)
    assert not root_sum_equals(counts, RootMultiple(3, 3, 2), e)
    assert root_sum_equals(np.ones(e, np.int64), RootMultiple.zero(e), e)


def test_root_multiple_rendering():
    z = RootMultiple(3, 3, 1)
    assert z.render() == "3*zeta(3)^1"
    assert z.to_json() == {"scale": 3, "root_order": 3, "exponent": 1}
    assert RootMultiple.zero(9).render() == "0"
    assert RootMultiple(2, 9, 3).normalized() == RootMultiple(2, 3, 1)
    assert abs(complex(z.conjugate()) - complex(z).conjugate()) < 1e-12


def test_format_complex():
    assert format_complex(1 + 0j) == "1+0i"
    assert format_complex(complex(-0.5, 3**0.5 / 2)) == "-0.5+0.866025403784i"
    assert format_complex(complex(1e-15, -1e-14)) == "0+0i"
