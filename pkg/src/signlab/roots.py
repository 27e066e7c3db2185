"""Zeros of P_n(cos theta) and the classical bracketing inequalities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .special import check_degree, eval_legendre_cos, eval_legendre_theta_deriv

__all__ = [
    "ConvergenceError",
    "RootSet",
    "BoundViolation",
    "BoundReport",
    "initial_guesses",
    "bruns_brackets",
    "find_roots",
    "validate_bounds",
    "gauss_weight_checksum",
]

MAX_NEWTON = 50


class ConvergenceError(RuntimeError):
    """Root finding failed even after the bisection fallback."""


@dataclass(frozen=True)
class RootSet:
    """Increasing zeros theta_1 < ... < theta_n of P_n(cos theta)."""

    n: int
    thetas: np.ndarray
    residuals: np.ndarray
    newton_iters: np.ndarray

    def __post_init__(self):
        for name in ("thetas", "residuals", "newton_iters"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.n

    @property
    def indices(self) -> np.ndarray:
        """Global 1-based indices j."""
        return np.arange(1, self.n + 1)

    def amplitude(self) -> np.ndarray:
        """Local Laplace amplitude sqrt(2 / (n pi sin theta_j))."""
        return np.sqrt(2.0 / (self.n * math.pi * np.sin(self.thetas)))

    def rows(self):
        for j, t, r, k in zip(self.indices, self.thetas, self.residuals, self.newton_iters):
            yield {"j": int(j), "theta_j": float(t), "residual": float(r), "newton_iters": int(k)}


@dataclass(frozen=True)
class BoundViolation:
    j: int
    theta: float
    family: str
    lower: float
    upper: float


@dataclass(frozen=True)
class BoundReport:
    n: int
    bruns_ok: np.ndarray
    markoff_stieltjes_ok: np.ndarray
    szego_ok: np.ndarray
    worst_margin: float
    margins: dict = field(default_factory=dict)
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return bool(
            self.bruns_ok.all() and self.markoff_stieltjes_ok.all() and self.szego_ok.all()
        )

    def rows(self):
        for i in range(self.n):
            yield {
                "j": i + 1,
                "bruns": "pass" if self.bruns_ok[i] else "fail",
                "markoff_stieltjes": "pass" if self.markoff_stieltjes_ok[i] else "fail",
                "szego": "pass" if self.szego_ok[i] else "fail",
                "bruns_margin": float(self.margins["bruns"][i]),
                "markoff_stieltjes_margin": float(self.margins["markoff_stieltjes"][i]),
                "szego_margin": float(self.margins["szego"][i]),
            }


def initial_guesses(n: int) -> np.ndarray:
    """theta0_j = pi (j - 1/4) / (n + 1/2), j = 1..n."""
    n = check_degree(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    j = np.arange(1, n + 1)
    return math.pi * (j - 0.25) / (n + 0.5)


def bruns_brackets(n: int) -> tuple[np.ndarray, np.ndarray]:
    j = np.arange(1, n + 1)
    return math.pi * (j - 0.5) / (n + 0.5), math.pi * j / (n + 0.5)


def _bisect(n: int, lo: float, hi: float, j: int) -> float:
    f_lo = eval_legendre_cos(n, lo)
    f_hi = eval_legendre_cos(n, hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise ConvergenceError(f"no sign change in Bruns bracket for n={n}, j={j}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = eval_legendre_cos(n, mid)
        if f_mid == 0:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_roots(n: int) -> RootSet:
    """Zeros of P_n(cos theta) in (0, pi) by vectorized Newton iteration.

    Starts from :func:`initial_guesses`. Any root whose iterate leaves its
    Bruns bracket, or that has not converged after 50 steps, is recomputed
    by bisection on that bracket.
    """
    n = check_degree(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    theta = initial_guesses(n)
    lo, hi = bruns_brackets(n)
    iters = np.zeros(n, dtype=int)
    active = np.ones(n, dtype=bool)
    escaped = np.zeros(n, dtype=bool)
    # once a step is this small the quadratic tail is below rounding
    tol = 1e-10 * math.pi / (n + 0.5)
    for _ in range(MAX_NEWTON):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        t = theta[idx]
        p, dp = eval_legendre_cos(n, t, deriv=True)
        step = p / dp
        t_new = t - step
        iters[idx] += 1
        out = (t_new <= lo[idx]) | (t_new >= hi[idx]) | ~np.isfinite(t_new)
        escaped[idx[out]] = True
        theta[idx] = np.where(out, t, t_new)
        done = out | (np.abs(step) <= tol)
        active[idx[done]] = False
    for i in np.flatnonzero(active | escaped):
        theta[i] = _bisect(n, lo[i], hi[i], i + 1)
        if not lo[i] <= theta[i] <= hi[i]:
            raise ConvergenceError(f"root finding failed for n={n}, j={i + 1}")
    if np.any(np.diff(theta) <= 0):
        bad = int(np.flatnonzero(np.diff(theta) <= 0)[0]) + 1
        raise ConvergenceError(f"roots not strictly increasing for n={n}, j={bad}")
    residuals = np.abs(eval_legendre_cos(n, theta))
    return RootSet(n=n, thetas=theta, residuals=residuals, newton_iters=iters)


def _bracket_margin(theta, lower, upper):
    return np.minimum(theta - lower, upper - theta)


def validate_bounds(roots: RootSet) -> BoundReport:
    """Check Bruns, Markoff-Stieltjes and Szego brackets for every root.

    Markoff-Stieltjes and Szego are stated for j <= floor(n/2); roots in the
    upper half are checked through the mirror theta_{n+1-j} = pi - theta_j.
    The middle root of an odd degree is pi/2 and is exempt from those two.
    """
    n = roots.n
    theta = roots.thetas
    j = roots.indices
    b_lo, b_hi = bruns_brackets(n)
    bruns = _bracket_margin(theta, b_lo, b_hi)

    # fold the upper half onto the lower half
    lower_half = j <= n // 2
    jj = np.where(lower_half, j, n + 1 - j)
    tt = np.where(lower_half, theta, math.pi - theta)
    middle = (n % 2 == 1) & (j == (n + 1) // 2)

    ms_lo = math.pi * (jj - 0.5) / n
    ms_hi = math.pi * jj / (n + 1)
    sz_lo = math.pi * (jj - 0.25) / (n + 0.5)
    sz_hi = ms_hi
    ms = np.where(middle, np.inf, _bracket_margin(tt, ms_lo, ms_hi))
    sz = np.where(middle, np.inf, _bracket_margin(tt, sz_lo, sz_hi))

    violations = []
    for family, margin, lo_, hi_, t_ in (
        ("bruns", bruns, b_lo, b_hi, theta),
        ("markoff_stieltjes", ms, ms_lo, ms_hi, tt),
        ("szego", sz, sz_lo, sz_hi, tt),
    ):
        for i in np.flatnonzero(margin <= 0):
            violations.append(
                BoundViolation(int(j[i]), float(theta[i]), family, float(lo_[i]), float(hi_[i]))
            )
    worst = float(min(bruns.min(), ms.min(), sz.min()))
    return BoundReport(
        n=n,
        bruns_ok=bruns > 0,
        markoff_stieltjes_ok=ms > 0,
        szego_ok=sz > 0,
        worst_margin=worst,
        margins={"bruns": bruns, "markoff_stieltjes": ms, "szego": sz},
        violations=tuple(violations),
    )


def gauss_weight_checksum(roots: RootSet) -> float:
    """Sum of Gauss-Legendre weights at x_j = cos theta_j; exact nodes give 2.

    With x = cos theta, (1 - x^2) P_n'(x)^2 equals (d/dtheta P_n(cos theta))^2.
    """
    d = eval_legendre_theta_deriv(roots.n, roots.thetas)
    return float(np.sum(2.0 / d**2))
