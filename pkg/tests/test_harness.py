import math

import numpy as np
import pytest

from planebalance import (Configuration, GameConfig, Norm, Scenario, Vec2,
                          brute_force_min_signs, brute_force_stream_bound,
                          check_opposite_rays, generate_instance,
                          random_unit_vectors, standard_norms)

EUCLID = Norm.euclidean()
L1 = Norm.lp(1.0)


def test_min_signs_three_equal():
    result = brute_force_min_signs(EUCLID, [(1, 0)] * 3)
    assert result.min_value == pytest.approx(1.0, abs=1e-12)
    assert result.enumerated == 8


def test_min_signs_orthogonal_pair_all_tie():
    result = brute_force_min_signs(EUCLID, [(1, 0), (0, 1)])
    assert result.min_value == pytest.approx(math.sqrt(2), abs=1e-12)
    assert result.signs == (-1, -1)  # lexicographically smallest of the tie


def test_min_signs_lexicographic_tie_break():
    result = brute_force_min_signs(EUCLID, [(1, 0), (1, 0)])
    assert result.min_value == 0.0
    assert result.signs == (-1, 1)


def test_min_signs_seven_random_below_one(norm):
    vs = random_unit_vectors(norm, 7, np.random.default_rng(3))
    result = brute_force_min_signs(norm, vs)
    assert result.min_value <= 1.0 + 1e-9
    assert len(result.signs) == 7


def test_min_signs_capacity():
    with pytest.raises(ValueError):
        brute_force_min_signs(EUCLID, [(1, 0)] * 25)
    with pytest.raises(ValueError):
        brute_force_min_signs(EUCLID, [])


def test_stream_bound_l1_pairs():
    assert brute_force_stream_bound(L1, [(1, 0), (0, 1)] * 2) == pytest.approx(2.0, abs=1e-12)


def test_stream_bound_identical_vectors():
    assert brute_force_stream_bound(EUCLID, [(1, 0)] * 4) == 0.0


def test_stream_bound_random_below_online():
    from planebalance import prefix_positions, stream_balance
    vs = random_unit_vectors(EUCLID, 12, np.random.default_rng(9))
    offline = brute_force_stream_bound(EUCLID, vs)
    signs = stream_balance(EUCLID, vs)
    positions = prefix_positions(vs, signs)
    online = max(EUCLID.value(positions[i]) for i in range(1, 12, 2))
    assert offline <= online + 1e-12
    assert online <= 2.0 + 1e-9


def test_stream_bound_capacity_and_parity():
    with pytest.raises(ValueError):
        brute_force_stream_bound(EUCLID, [(1, 0)] * 22)
    with pytest.raises(ValueError):
        brute_force_stream_bound(EUCLID, [(1, 0)] * 3)


def test_unit_vector_generator(norm):
    vs = random_unit_vectors(norm, 200, np.random.default_rng(1))
    for v in vs:
        assert abs(norm.value(v) - 1.0) <= 1e-9


def test_generator_determinism():
    a = generate_instance("unit-vectors", EUCLID, 5, seed=1)
    b = generate_instance("unit-vectors", EUCLID, 5, seed=1)
    assert a == b
    c = generate_instance("ft-config", Norm.lp(3.0), 5, seed=7)
    d = generate_instance("ft-config", Norm.lp(3.0), 5, seed=7)
    assert c == d


def test_ft_config_generator_satisfies_hypothesis():
    scenario = generate_instance("ft-config", Norm.lp(3.0), 5, seed=7)
    assert check_opposite_rays(scenario.points).holds


def test_generate_instance_modes():
    assert generate_instance("unit-vectors", EUCLID, 5, seed=0).mode == "balance"
    assert generate_instance("unit-vectors", EUCLID, 6, seed=0).mode == "stream"
    assert generate_instance("game", L1, 2, seed=0).mode == "game"
    with pytest.raises(ValueError):
        generate_instance("mystery", EUCLID, 5, seed=0)


def test_scenario_round_trip_all_modes():
    fixtures = [
        generate_instance("unit-vectors", Norm.lp(1.5), 5, seed=2),
        generate_instance("unit-vectors", EUCLID, 6, seed=3),
        generate_instance("ft-config", L1, 3, seed=4),
        generate_instance("game", Norm.polygon([(1, 1), (-1, 1)]), 4, seed=5),
    ]
    for scenario in fixtures:
        assert Scenario.loads(scenario.dumps()) == scenario


def test_scenario_field_validation():
    with pytest.raises(ValueError):
        Scenario("balance", EUCLID)
    with pytest.raises(ValueError):
        Scenario("ft", EUCLID, vectors=(Vec2(1, 0),))
    with pytest.raises(ValueError):
        Scenario("game", EUCLID, vectors=(Vec2(1, 0),))
    with pytest.raises(ValueError):
        Scenario("quiz", EUCLID, vectors=(Vec2(1, 0),))


def test_standard_norms_battery():
    names = [name for name, _ in standard_norms()]
    assert names == ["euclidean", "l1", "l1.5", "l3", "maxpoly", "hexagon"]
    for _, norm in standard_norms():
        assert norm.value(norm.unit((0.4, 0.8))) == pytest.approx(1.0, abs=1e-12)
