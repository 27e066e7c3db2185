import math

import numpy as np
import pytest

from signlab.alternating import (
    FUNCTIONS,
    Interval,
    alt_f_sum,
    alt_theta_sum,
    grid_nodes,
    riemann_grid_sum,
)
from signlab.roots import find_roots, initial_guesses

N2 = (math.acos(1 / math.sqrt(3)), math.acos(-1 / math.sqrt(3)))


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(0.0, 1.0)
    with pytest.raises(ValueError):
        Interval(1.0, 0.5)
    with pytest.raises(ValueError):
        Interval(0.5, math.pi)
    assert Interval.parse("0.3,1.2") == Interval(0.3, 1.2)


def test_n2_example():
    rep = alt_theta_sum(find_roots(2), Interval(0.5, 2.5))
    expected = N2[1] - N2[0]
    assert rep.root_count == 2 and rep.parity == "even"
    assert rep.sum == pytest.approx(expected, abs=1e-14)
    assert rep.sum == pytest.approx(1.2309594, abs=1e-7)
    assert rep.theorem1_deviation == pytest.approx(expected - 1.0, abs=1e-14)


def test_empty_interval():
    r = find_roots(10)
    gap = Interval(r.thetas[3] + 0.01, r.thetas[4] - 0.01)
    rep = alt_theta_sum(r, gap)
    assert rep.root_count == 0 and rep.parity == "even"
    assert rep.sum == 0.0
    assert rep.theorem1_deviation == pytest.approx(gap.length / 2)


def test_odd_parity_has_no_deviation():
    r = find_roots(10)
    rep = alt_theta_sum(r, Interval(r.thetas[0] - 0.01, r.thetas[2] + 0.01))
    assert rep.root_count == 3 and rep.parity == "odd"
    assert rep.theorem1_deviation is None


def test_constant_function_cancels():
    r = find_roots(37)
    rep = alt_f_sum(r, Interval(r.thetas[4] - 0.01, r.thetas[11] + 0.01), "one")
    assert rep.root_count == 8
    assert rep.sum == 0.0 and rep.grid_sum == 0.0


def test_identity_matches_theta_sum():
    r = find_roots(80)
    interval = Interval(0.3, 2.0)
    assert alt_f_sum(r, interval, "identity").sum == alt_theta_sum(r, interval).sum


def test_unknown_function():
    with pytest.raises(ValueError):
        alt_f_sum(find_roots(3), Interval(0.1, 3.0), "abs")


def test_grid_nodes_are_laplace_zeros():
    for n in (1, 5, 400, 3200):
        j = np.arange(1, n + 1)
        assert np.max(np.abs(grid_nodes(n, j) - initial_guesses(n))) <= 1e-15 * math.pi


def test_global_index_used():
    r = find_roots(20)
    # interval whose first enclosed root has even global index
    interval = Interval(r.thetas[1] - 0.01, r.thetas[4] + 0.01)
    rep = alt_theta_sum(r, interval)
    assert rep.first_index == 2
    t = r.thetas[1:5]
    local = float(np.sum((-1.0) ** np.arange(1, 5) * t))
    assert rep.sum == pytest.approx(-local, abs=1e-14)
    assert rep.sum == pytest.approx(t[0] - t[1] + t[2] - t[3], abs=1e-14)


def test_local_index_agrees_when_first_index_odd():
    r = find_roots(20)
    interval = Interval(r.thetas[2] - 0.01, r.thetas[5] + 0.01)
    rep = alt_theta_sum(r, interval)
    assert rep.first_index == 3
    t = r.thetas[2:6]
    assert rep.sum == pytest.approx(float(np.sum((-1.0) ** np.arange(1, 5) * t)), abs=1e-14)


def test_endpoint_nudge():
    r = find_roots(9)
    rep = alt_theta_sum(r, Interval(r.thetas[2], r.thetas[5] + 0.01))
    assert rep.interval.nudged
    assert rep.interval.a == pytest.approx(r.thetas[2] - 1e-8)
    assert rep.root_count == 4


@pytest.mark.parametrize("n", [1, 3, 11, 101, 2001])
def test_odd_degree_cos_antisymmetry(n):
    r = find_roots(n)
    rep = alt_f_sum(r, Interval(1e-6, math.pi - 1e-6), "cos")
    assert rep.root_count == n
    assert abs(rep.sum) <= 1e-12


def test_cos_grid_deviation_n800():
    rep = alt_f_sum(find_roots(800), Interval(0.3, 2.8), "cos")
    assert rep.grid_deviation <= 1.0 / 800


@pytest.mark.parametrize("name", sorted(FUNCTIONS))
def test_registry_functions_vectorize(name):
    t = np.linspace(0.1, 3.0, 5)
    assert np.asarray(FUNCTIONS[name](t)).shape == t.shape


def test_riemann_small():
    assert riemann_grid_sum(1) == pytest.approx(0.0, abs=1e-16)
    assert riemann_grid_sum(2) == pytest.approx(-2 * math.cos(3 * math.pi / 10), abs=1e-15)
    assert riemann_grid_sum(2) == pytest.approx(-1.1755705, abs=1e-7)


def test_riemann_envelope_even():
    for n in list(range(10, 300, 2)) + [1000, 4096, 10000]:
        assert abs(riemann_grid_sum(n) + 1) <= 3 / n


def test_riemann_odd_vanishes():
    # terms j and n+1-j cancel when n is odd
    for n in (3, 11, 101, 9999):
        assert abs(riemann_grid_sum(n)) <= 1e-12
