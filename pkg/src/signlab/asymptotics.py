"""Laplace main term, its error, the Stieltjes remainder and log-log rate fits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import betaln

from .special import check_degree, eval_legendre_cos

__all__ = [
    "QuadratureError",
    "LaplaceProfile",
    "RateFit",
    "laplace_main",
    "laplace_main_deriv",
    "error_profile",
    "fit_rate",
    "order_sweep",
    "stieltjes_remainder",
    "stieltjes_comparison",
    "stieltjes_check",
    "adaptive_gauss_legendre",
]

DEFAULT_SAMPLES = 33


class QuadratureError(RuntimeError):
    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


def _check_theta(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any((theta <= 0) | (theta >= math.pi)):
        raise ValueError("theta must lie strictly inside (0, pi)")
    return theta


def laplace_main(n: int, theta):
    """A(theta) = sqrt(2 / (n pi sin theta)) cos((n + 1/2) theta - pi/4)."""
    n = check_degree(n)
    scalar = np.ndim(theta) == 0
    theta = _check_theta(theta)
    out = np.sqrt(2.0 / (n * math.pi * np.sin(theta))) * np.cos((n + 0.5) * theta - 0.25 * math.pi)
    return float(out) if scalar else out


def laplace_main_deriv(n: int, theta):
    """Exact theta-derivative of :func:`laplace_main`."""
    n = check_degree(n)
    scalar = np.ndim(theta) == 0
    theta = _check_theta(theta)
    s = np.sin(theta)
    amp = np.sqrt(2.0 / (n * math.pi * s))
    phase = (n + 0.5) * theta - 0.25 * math.pi
    # d/dtheta amp = -amp cos(theta) / (2 sin(theta))
    out = -0.5 * amp * np.cos(theta) / s * np.cos(phase) - (n + 0.5) * amp * np.sin(phase)
    return float(out) if scalar else out


@dataclass(frozen=True)
class LaplaceProfile:
    n: int
    epsilon: float
    theta: np.ndarray
    A: np.ndarray
    A_prime: np.ndarray
    E: np.ndarray
    E_prime: np.ndarray
    stieltjes_E: np.ndarray | None = None

    def rows(self):
        for i in range(self.theta.size):
            yield {
                "theta": float(self.theta[i]),
                "A": float(self.A[i]),
                "A_prime": float(self.A_prime[i]),
                "E": float(self.E[i]),
                "E_prime": float(self.E_prime[i]),
                "stieltjes_E": "" if self.stieltjes_E is None else float(self.stieltjes_E[i]),
            }


def error_profile(n: int, epsilon: float, k: int = DEFAULT_SAMPLES, stieltjes: bool = False):
    """Sample A, A', E = P_n(cos) - A and E' on k equispaced angles in [eps, pi - eps]."""
    n = check_degree(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < epsilon < 0.5 * math.pi:
        raise ValueError("epsilon must lie in (0, pi/2)")
    if k < 2:
        raise ValueError("need at least two samples")
    theta = np.linspace(epsilon, math.pi - epsilon, k)
    p, dp = eval_legendre_cos(n, theta, deriv=True)
    a = laplace_main(n, theta)
    ap = laplace_main_deriv(n, theta)
    st = None
    if stieltjes:
        st = np.array([stieltjes_remainder(n, t) for t in theta])
    return LaplaceProfile(n, float(epsilon), theta, a, ap, p - a, dp - ap, st)


@dataclass(frozen=True)
class RateFit:
    """Least-squares line through (log n, log error)."""

    pairs: tuple
    slope: float
    intercept: float
    residual: float

    def predict(self, n):
        return math.exp(self.intercept) * np.asarray(n, dtype=float) ** self.slope

    def summary(self) -> str:
        return f"slope={self.slope!r} intercept={self.intercept!r} residual={self.residual!r}"


def fit_rate(pairs, min_pairs: int = 4) -> RateFit:
    """Fit error ~ C n^slope by least squares in log-log coordinates.

    `residual` is the root-mean-square deviation of log(error) from the line.
    """
    pairs = tuple((int(n), float(e)) for n, e in pairs)
    if len({n for n, _ in pairs}) < min_pairs:
        raise ValueError(f"need at least {min_pairs} distinct degrees, got {len(pairs)}")
    if any(e <= 0 or not math.isfinite(e) for _, e in pairs):
        raise ValueError("error magnitudes must be positive and finite")
    x = np.log([n for n, _ in pairs])
    y = np.log([e for _, e in pairs])
    slope, intercept = np.polyfit(x, y, 1)
    res = y - (slope * x + intercept)
    return RateFit(pairs, float(slope), float(intercept), float(np.sqrt(np.mean(res**2))))


def order_sweep(degrees, epsilon: float = 0.3, k: int = DEFAULT_SAMPLES) -> dict:
    """max|E|, max|E'| and max|A'| per degree on the sampled window, with fits.

    The max over the sample grid stands in for the sup over the window.
    """
    rows = []
    for n in degrees:
        prof = error_profile(n, epsilon, k)
        rows.append(
            (
                n,
                float(np.max(np.abs(prof.E))),
                float(np.max(np.abs(prof.E_prime))),
                float(np.max(np.abs(prof.A_prime))),
            )
        )
    return {
        "rows": rows,
        "E": fit_rate([(r[0], r[1]) for r in rows]),
        "E_prime": fit_rate([(r[0], r[2]) for r in rows]),
        "A_prime": fit_rate([(r[0], r[3]) for r in rows]),
    }


@lru_cache(maxsize=None)
def _gl_rule(k: int):
    return np.polynomial.legendre.leggauss(k)


def adaptive_gauss_legendre(f, a: float, b: float, rtol: float = 1e-9, order: int = 20,
                            max_intervals: int = 4000):
    """Globally adaptive Gauss-Legendre quadrature of a vectorized f on [a, b].

    Each panel is scored by comparing its `order`-point estimate with the sum
    over its two halves; the worst panel is split until the total error
    estimate falls below ``rtol * |integral|``.
    """
    x, w = _gl_rule(order)

    def panel(lo, hi):
        half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
        return half * np.sum(w * f(mid + half * x))

    def scored(lo, hi):
        whole = panel(lo, hi)
        m = 0.5 * (lo + hi)
        left, right = panel(lo, m), panel(m, hi)
        return [abs(left + right - whole), lo, hi, left + right]

    panels = [scored(a, b)]
    while True:
        total = sum(p[3] for p in panels)
        err = sum(p[0] for p in panels)
        if err <= rtol * abs(total) or err == 0:
            return total
        if len(panels) >= max_intervals:
            raise QuadratureError(
                f"adaptive quadrature did not reach rtol={rtol}", achieved=err / abs(total)
            )
        worst = max(range(len(panels)), key=lambda i: panels[i][0])
        _, lo, hi, _ = panels.pop(worst)
        m = 0.5 * (lo + hi)
        panels.append(scored(lo, m))
        panels.append(scored(m, hi))


def stieltjes_remainder(n: int, theta: float, inner_points: int = 64, rtol: float = 1e-9) -> float:
    """Stieltjes double-integral remainder of the Laplace formula.

    Evaluates

        (2/pi) Im[ e^{i(n+1)t} e^{i(pi/4 - t/2)} (2 sin t)^{-1/2}
                   * int_0^1 u^n (1-u)^{-1/2} (1/pi) int_0^pi
                     w sin^2(phi) / (1 - w sin^2(phi)) dphi du ],
        w = (1-u) e^{i(t - pi/2)} / (2 sin t).

    The outer variable is changed to u = 1 - s^2, which turns the
    (1-u)^{-1/2} endpoint singularity into the smooth weight 2 (1-s^2)^n.
    """
    n = check_degree(n)
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0.2 <= theta <= math.pi - 0.2:
        raise ValueError("theta must lie in [0.2, pi - 0.2]")
    sin_t = math.sin(theta)
    rot = np.exp(1j * (theta - 0.5 * math.pi)) / (2.0 * sin_t)
    xg, wg = _gl_rule(inner_points)
    phi = 0.5 * math.pi * (xg + 1.0)
    sin2 = np.sin(phi) ** 2
    w_phi = 0.5 * wg  # (pi/2) weights times the 1/pi prefactor

    def integrand(s):
        s = np.asarray(s, dtype=float)
        w = (s * s)[:, None] * rot
        inner = np.sum(w_phi * (w * sin2 / (1.0 - w * sin2)), axis=1)
        return 2.0 * (1.0 - s * s) ** n * inner

    outer = adaptive_gauss_legendre(integrand, 0.0, 1.0, rtol=rtol)
    pref = np.exp(1j * (n + 1) * theta) * np.exp(1j * (0.25 * math.pi - 0.5 * theta)) / math.sqrt(
        2.0 * sin_t
    )
    return float(2.0 / math.pi * (pref * outer).imag)


def _beta_main(n: int, theta: float) -> float:
    # leading Stieltjes term, whose prefactor is B(n+1, 1/2) rather than sqrt(pi/n)
    b = math.exp(betaln(n + 1, 0.5))
    return 2.0 / math.pi * b / math.sqrt(2.0 * math.sin(theta)) * math.cos(
        (n + 0.5) * theta - 0.25 * math.pi
    )


def stieltjes_comparison(n: int, theta: float) -> dict:
    """Compare the Stieltjes remainder with the direct difference P_n(cos t) - A(t).

    Also reports the gap against P_n(cos t) minus the Beta-normalized leading
    term, which is the quantity the double integral represents exactly.
    """
    p = float(eval_legendre_cos(n, theta))
    direct = p - laplace_main(n, theta)
    st = stieltjes_remainder(n, theta)
    beta_direct = p - _beta_main(n, theta)
    return {
        "n": n,
        "theta": theta,
        "direct_E": direct,
        "stieltjes_E": st,
        "ratio": st / direct,
        "rel_diff": abs(st - direct) / abs(direct),
        "beta_direct_E": beta_direct,
        "beta_rel_diff": abs(st - beta_direct) / abs(beta_direct),
    }


def stieltjes_check(points, rel_tol: float = 0.1) -> dict:
    """Two-branch agreement test over (n, theta) points.

    Passes when every point agrees within `rel_tol`, or when the ratio
    stieltjes/direct is the same constant at every point (spread within
    `rel_tol` of its mean); the second branch sets ``discrepancy``.
    """
    rows = [stieltjes_comparison(n, t) for n, t in points]
    ratios = np.array([r["ratio"] for r in rows])
    within = all(r["rel_diff"] <= rel_tol for r in rows)
    mean = float(np.mean(ratios))
    spread = float(np.max(np.abs(ratios - mean)) / abs(mean)) if mean else math.inf
    constant = spread <= rel_tol
    return {
        "rows": rows,
        "within_tolerance": within,
        "constant_ratio": constant,
        "ratio_mean": mean,
        "ratio_spread": spread,
        "discrepancy": (not within) and constant,
        "passed": within or constant,
        "beta_max_rel_diff": max(r["beta_rel_diff"] for r in rows),
    }
