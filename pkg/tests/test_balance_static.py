import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from planebalance import (Norm, Vec2, balance_odd, brute_force_min_signs,
                          random_unit_vectors, separating_functional,
                          signed_sum)

EUCLID = Norm.euclidean()


def unit_circle(degrees):
    return [Vec2(math.cos(math.radians(a)), math.sin(math.radians(a)))
            for a in degrees]


def test_separating_single_vector():
    h = separating_functional([(1, 0)])
    assert abs(h.dot(Vec2(1, 0))) > 1e-9


def test_separating_two_orthogonal():
    vs = unit_circle([0, 90])
    h = separating_functional(vs)
    for v in vs:
        assert abs(h.dot(v)) > 1e-9


def test_separating_antipodal_pair():
    vs = [Vec2(1, 0), Vec2(-1, 0)]
    h = separating_functional(vs)
    for v in vs:
        assert abs(h.dot(v)) > 1e-9


def test_separating_rejects_zero_vector():
    with pytest.raises(ValueError):
        separating_functional([(0, 0)])


def test_three_equal_vectors():
    vs = [Vec2(1, 0)] * 3
    signs = balance_odd(EUCLID, vs)
    assert signs == (1, -1, 1)
    assert EUCLID.value(signed_sum(vs, signs)) == pytest.approx(1.0, abs=1e-12)


def test_single_vector():
    signs = balance_odd(EUCLID, [(1, 0)])
    assert signs in ((1,), (-1,))
    assert EUCLID.value(signed_sum([Vec2(1, 0)], signs)) == 1.0


def test_regular_pentagon_with_enumeration_oracle():
    vs = unit_circle([0, 72, 144, 216, 288])
    signs = balance_odd(EUCLID, vs)
    achieved = EUCLID.value(signed_sum(vs, signs))
    assert achieved <= 1.0 + 1e-9
    oracle = brute_force_min_signs(EUCLID, vs)
    # The five fifth roots of unity cancel exactly, so the enumerated
    # optimum is zero.
    assert oracle.min_value <= 1e-12
    assert oracle.min_value <= achieved + 1e-12


def test_even_length_rejected():
    with pytest.raises(ValueError, match="odd"):
        balance_odd(EUCLID, unit_circle([0, 90]))


def test_non_unit_rejected_with_index():
    vs = [Vec2(1, 0), Vec2(0.5, 0), Vec2(0, 1)]
    with pytest.raises(ValueError, match="index 1"):
        balance_odd(EUCLID, vs)


def test_duplicates_and_antipodal_vectors():
    vs = [Vec2(1, 0), Vec2(-1, 0), Vec2(1, 0)]
    signs = balance_odd(EUCLID, vs)
    assert EUCLID.value(signed_sum(vs, signs)) <= 1.0 + 1e-12


def test_soundness_and_oracle_dominance(norm):
    rng = np.random.default_rng(29)
    for t in range(300):
        n = (1, 3, 5, 7, 9, 11)[t % 6]
        vs = random_unit_vectors(norm, n, rng)
        signs = balance_odd(norm, vs)
        assert set(signs) <= {-1, 1} and len(signs) == n
        achieved = norm.value(signed_sum(vs, signs))
        assert achieved <= 1.0 + 1e-9
        oracle = brute_force_min_signs(norm, vs)
        assert oracle.min_value <= achieved + 1e-12
        assert oracle.min_value <= 1.0 + 1e-9


def test_all_equal_is_tight(norm):
    u = norm.unit((0.3, 0.7))
    for n in (1, 3, 7):
        vs = [u] * n
        signs = balance_odd(norm, vs)
        assert norm.value(signed_sum(vs, signs)) == pytest.approx(1.0, abs=1e-12)


def test_permutation_equivariance_distinct_directions():
    vs = unit_circle([3, 47, 101, 190, 275])
    signs = balance_odd(EUCLID, vs)
    perm = [3, 0, 4, 1, 2]
    permuted = [vs[i] for i in perm]
    signs_p = balance_odd(EUCLID, permuted)
    assert tuple(signs_p[j] for j in range(5)) == tuple(signs[perm[j]] for j in range(5))
    a, b = signed_sum(permuted, signs_p), signed_sum(vs, signs)
    assert abs(a.x - b.x) <= 1e-12 and abs(a.y - b.y) <= 1e-12


def test_permutation_preserves_signed_sum_with_duplicates():
    vs = unit_circle([10, 10, 120, 120, 240])
    signs = balance_odd(EUCLID, vs)
    perm = [4, 2, 0, 3, 1]
    permuted = [vs[i] for i in perm]
    signs_p = balance_odd(EUCLID, permuted)
    a = signed_sum(vs, signs)
    b = signed_sum(permuted, signs_p)
    assert abs(a.x - b.x) <= 1e-12 and abs(a.y - b.y) <= 1e-12


@given(st.lists(st.floats(min_value=0.0, max_value=2 * math.pi),
                min_size=1, max_size=9).filter(lambda a: len(a) % 2 == 1))
@settings(max_examples=300, deadline=None)
def test_bound_property_euclidean(angles):
    vs = [Vec2(math.cos(a), math.sin(a)) for a in angles]
    signs = balance_odd(EUCLID, vs)
    assert EUCLID.value(signed_sum(vs, signs)) <= 1.0 + 1e-9
