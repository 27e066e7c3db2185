import math

import numpy as np
import pytest

from signlab.alternating import Interval, alt_theta_sum
from signlab.contour import (
    ContourError,
    alpha_floor_sweep,
    build_contour,
    default_radius,
    integrate_contour,
    phase_factor,
)
from signlab.roots import find_roots, initial_guesses

FULL = Interval(0.05, math.pi - 0.05)
INTERVALS = [FULL, Interval(0.3, 1.2), Interval(1.0, 2.0)]


def test_n1_single_circle():
    spec = build_contour(find_roots(1), FULL)
    assert spec.size == 1 and spec.centers[0] == pytest.approx(math.pi / 2)
    assert list(spec.orientations) == [-1]
    rep = integrate_contour(spec)
    assert rep.integral_value.real == pytest.approx(-math.pi / 2, abs=1e-12)
    assert rep.imag_residual <= 1e-10


def test_n2_two_circles():
    spec = build_contour(find_roots(2), FULL, "guess")
    assert spec.size == 2 and spec.radius <= math.pi / 10
    assert list(spec.orientations) == [-1, 1]
    rep = integrate_contour(spec)
    expected = math.acos(-1 / math.sqrt(3)) - math.acos(1 / math.sqrt(3))
    assert rep.integral_value.real == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n", [3, 10, 37, 120, 200])
@pytest.mark.parametrize("interval", INTERVALS, ids=["full", "low", "mid"])
def test_identity_matches_root_sum(n, interval):
    r = find_roots(n)
    rep = integrate_contour(build_contour(r, interval))
    assert rep.mismatch <= 1e-8
    assert rep.imag_residual <= 1e-8
    assert rep.root_sum == pytest.approx(alt_theta_sum(r, interval).sum, abs=1e-13)


def test_reversal_negates():
    spec = build_contour(find_roots(30), Interval(0.3, 1.2))
    a = integrate_contour(spec).integral_value
    b = integrate_contour(spec.reversed()).integral_value
    assert abs(a.real + b.real) <= 1e-10


@pytest.mark.parametrize("n", [1, 2, 25, 200])
def test_pole_capture(n):
    spec = build_contour(find_roots(n), FULL, "guess")
    counts = integrate_contour(spec, "count").circle_values
    assert np.max(np.abs(counts - spec.orientations)) <= 1e-8


def test_guess_mode_n100():
    r = find_roots(100)
    spec = build_contour(r, FULL, "guess")
    gap = np.abs(r.thetas - initial_guesses(100))
    assert np.all(gap < default_radius(100))
    assert not spec.failed_over.any()
    assert np.allclose(spec.centers, initial_guesses(100)[spec.indices - 1])


def test_failover_with_small_radius():
    r = find_roots(40)
    gap = np.abs(r.thetas - initial_guesses(40))
    radius = float(np.median(gap))
    spec = build_contour(r, FULL, "guess", radius=radius)
    assert spec.failed_over.any()
    rep = integrate_contour(spec)
    assert rep.mismatch <= 1e-8


def test_overlap_rejected():
    with pytest.raises(ContourError):
        build_contour(find_roots(20), FULL, radius=0.5)


def test_alpha_n1():
    [(n, alpha)] = alpha_floor_sweep([1], FULL)
    t = np.linspace(0, 2 * math.pi, 4096, endpoint=False)
    brute = phase_factor(1, math.pi / 2 + math.pi / 6 * np.exp(1j * t)).min()
    assert alpha > 0 and alpha == pytest.approx(brute, abs=1e-6)


def test_phase_factor_zero_at_centres():
    for n in (5, 50):
        assert np.max(phase_factor(n, initial_guesses(n))) <= 1e-12


def test_alpha_n_independent():
    vals = [a for _, a in alpha_floor_sweep([10, 100, 1000], Interval(0.3, 1.2))]
    assert max(vals) < 2 * min(vals)
    assert min(vals) > 0.1


def test_report_rows():
    rep = integrate_contour(build_contour(find_roots(6), FULL))
    rows = list(rep.circle_rows())
    assert len(rows) == 6 and rows[0]["orientation"] == -1
    assert rep.summary_row()["mismatch"] == rep.mismatch
