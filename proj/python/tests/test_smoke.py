import math

import pytest

import minsum


def line(*xs):
    return minsum.MetricSpace.from_points([[x] for x in xs])


def test_two_groups_on_a_line():
    space = line(0, 1, 10, 11)
    sol = minsum.exact_msr(space, 2)
    assert minsum.verify_balls(space, sol, 2) == []
    assert math.isclose(minsum.ball_cost(space, sol), 2.0)
    part = minsum.exact_msd(space, 2)
    assert math.isclose(minsum.partition_cost(space, part), 2.0)


def test_approximations_match_oracles():
    space = minsum.random_euclidean(8, 2, 5)
    eps = 0.5
    ref = minsum.ball_cost(space, minsum.oracle_msr(space, 2))
    got = minsum.ball_cost(space, minsum.approximate_msr(space, 2, eps))
    assert ref - 1e-9 <= got <= (1 + eps) * ref + 1e-9
    ref = minsum.partition_cost(space, minsum.oracle_msd(space, 2, 1))
    sol = minsum.approximate_msd(space, 2, eps, 1)
    assert minsum.verify_partition(space, sol, 2, 1) == []
    assert minsum.partition_cost(space, sol) <= (1 + eps) * ref + 1e-9


def test_fair_caps_and_infeasibility():
    space = line(0, 1, 10, 11)
    fair = minsum.FairSpec([0, 0, 1, 1], [1, 1])
    sol = minsum.fair_msr_approx(space, fair, 0.5)
    assert sorted(fair.colors[b.center] for b in sol.balls) == [0, 1]
    blocked = minsum.FairSpec([0, 0, 0, 0], [0, 2])
    assert minsum.fair_msr_approx(space, blocked, 0.5) is None
    assert minsum.oracle_msr(space, 2, fair=blocked) is None


def test_k_center_and_decompose():
    space = line(0, 1, 10, 11)
    sol = minsum.k_center_approx(space, 2, 0.25)
    assert max(b.radius for b in sol.balls) <= 1.25 + 1e-9
    dec = minsum.decompose(space, 2)
    assert dec.components == [[0, 1], [2, 3]]


def test_errors_become_value_errors():
    with pytest.raises(minsum.MetricError):
        minsum.MetricSpace.from_matrix([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(ValueError):
        minsum.load_instance("{")
    with pytest.raises(minsum.InstanceTooLarge):
        minsum.oracle_msd(minsum.random_euclidean(11, 2, 1), 2)
