"""Legendre and associated Legendre functions by upward recurrence.

All evaluators accept scalars or numpy arrays, real or complex. Scalar input
gives a scalar back.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "MAX_DEGREE",
    "CapacityError",
    "CONVENTION",
    "check_degree",
    "eval_legendre",
    "eval_legendre_pair",
    "eval_legendre_deriv",
    "eval_legendre_theta_deriv",
    "eval_legendre_cos",
    "eval_assoc_legendre",
    "eval_assoc_legendre_normalized",
]

MAX_DEGREE = 5000

# Condon-Shortley phase (-1)^m is included in every associated function.
CONVENTION = "condon-shortley"


class CapacityError(ValueError):
    """Degree above the configured maximum."""


def check_degree(n, max_degree: int | None = None) -> int:
    cap = MAX_DEGREE if max_degree is None else max_degree
    n = int(n)
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    if n > cap:
        raise CapacityError(f"degree {n} exceeds maximum {cap}")
    return n


def _as_array(x):
    x = np.asarray(x)
    if not np.iscomplexobj(x):
        x = x.astype(float)
    return x


def _unwrap(value, scalar: bool):
    if scalar:
        return value[()] if isinstance(value, np.ndarray) else value
    return value


def eval_legendre_pair(n: int, x, max_degree: int | None = None):
    """Return ``(P_n(x), P_{n-1}(x))``; ``P_{-1}`` is taken as 0."""
    n = check_degree(n, max_degree)
    x = _as_array(x)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    for k in range(n):
        # (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p, p_prev


def eval_legendre(n: int, x, max_degree: int | None = None):
    """Legendre polynomial P_n at real or complex x.

    Parameters
    ----------
    n : int
        Degree, ``0 <= n <= MAX_DEGREE``.
    x : scalar or ndarray
        Abscissa(s). Complex input is evaluated on the same recurrence.

    Returns
    -------
    scalar or ndarray
        P_n(x), same shape as `x`.
    """
    scalar = np.ndim(x) == 0
    p, _ = eval_legendre_pair(n, x, max_degree)
    return _unwrap(p, scalar)


def eval_legendre_deriv(n: int, x, max_degree: int | None = None):
    """dP_n/dx, via n (x P_n - P_{n-1}) / (x^2 - 1) with exact endpoint values."""
    scalar = np.ndim(x) == 0
    x = _as_array(x)
    p, pm1 = eval_legendre_pair(n, x, max_degree)
    n = int(n)
    denom = x * x - 1
    at_end = denom == 0
    safe = np.where(at_end, 1, denom)
    d = n * (x * p - pm1) / safe
    if np.any(at_end):
        # P_n'(+-1) = (+-1)^(n-1) n (n+1) / 2
        end_val = np.where(np.real(x) > 0, 1.0, (-1.0) ** (n - 1)) * n * (n + 1) / 2
        d = np.where(at_end, end_val, d)
    return _unwrap(d, scalar)


def _legendre_cos_pair(n: int, theta: np.ndarray):
    """P_n(cos t) and d/dt P_n(cos t) for real t in [0, pi/2].

    Runs the recurrence on u = 1 - cos t = 2 sin^2(t/2) in difference form,
    D_{k+1} = (k D_k - (2k+1) u P_k) / (k+1), so that no precision is lost
    forming cos t near t = 0.
    """
    u = 2.0 * np.sin(0.5 * theta) ** 2
    p = np.ones_like(theta)
    d = np.zeros_like(theta)
    for k in range(n):
        d = (k * d - (2 * k + 1) * u * p) / (k + 1)
        p = p + d
    s = np.sin(theta)
    pole = s == 0
    # d/dt P_n(cos t) = n (cos t P_n - P_{n-1}) / sin t = n (D_n - u P_n) / sin t
    dp = n * (d - u * p) / np.where(pole, 1.0, s)
    return p, np.where(pole, 0.0, dp)


def eval_legendre_cos(n: int, theta, max_degree: int | None = None, deriv: bool = False):
    """P_n(cos theta) for real theta, accurate near theta = 0 and pi.

    With ``deriv=True`` returns ``(value, d/dtheta value)``. Angles past pi/2
    are reflected through P_n(cos(pi - t)) = (-1)^n P_n(cos t).
    """
    n = check_degree(n, max_degree)
    scalar = np.ndim(theta) == 0
    theta = np.asarray(theta, dtype=float)
    upper = theta > 0.5 * math.pi
    t = np.where(upper, math.pi - theta, theta)
    p, dp = _legendre_cos_pair(n, t)
    sign = -1.0 if n % 2 else 1.0
    p = np.where(upper, sign * p, p)
    dp = np.where(upper, -sign * dp, dp)
    if deriv:
        return _unwrap(p, scalar), _unwrap(dp, scalar)
    return _unwrap(p, scalar)


def eval_legendre_theta_deriv(n: int, theta, max_degree: int | None = None):
    """d/dtheta of P_n(cos theta), for real or complex theta.

    Real input goes through :func:`eval_legendre_cos`. Complex input uses
    -sin(theta) P_n'(cos theta) = n (cos theta P_n - P_{n-1}) / sin theta
    on the plain recurrence.
    """
    if not np.iscomplexobj(theta):
        return eval_legendre_cos(n, theta, max_degree, deriv=True)[1]
    scalar = np.ndim(theta) == 0
    theta = _as_array(theta)
    c = np.cos(theta)
    s = np.sin(theta)
    p, pm1 = eval_legendre_pair(n, c, max_degree)
    pole = s == 0
    d = int(n) * (c * p - pm1) / np.where(pole, 1, s)
    if np.any(pole):
        d = np.where(pole, 0, d)
    return _unwrap(d, scalar)


def eval_assoc_legendre(n: int, m: int, x, max_degree: int | None = None):
    """Unnormalized associated Legendre function P_n^m(x) on [-1, 1].

    Condon-Shortley phase included, so ``P_1^1(x) = -sqrt(1 - x^2)``.
    Overflows past n of roughly 150 for large m; use
    :func:`eval_assoc_legendre_normalized` there.
    """
    n = check_degree(n, max_degree)
    m = int(m)
    if m < 0 or m > n:
        raise ValueError(f"order m={m} must satisfy 0 <= m <= n={n}")
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    sq = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    # seed P_m^m = (-1)^m (2m-1)!! (1-x^2)^(m/2)
    pmm = np.ones_like(x)
    for k in range(1, m + 1):
        pmm = -(2 * k - 1) * sq * pmm
    if n == m:
        return _unwrap(pmm, scalar)
    p_prev, p = pmm, (2 * m + 1) * x * pmm
    for k in range(m + 1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - (k + m) * p_prev) / (k - m + 1)
    return _unwrap(p, scalar)


def eval_assoc_legendre_normalized(n: int, m: int, x, max_degree: int | None = None):
    """Associated Legendre function normalized to unit L2 norm on the sphere.

    Returns ``sqrt((2n+1)/(4 pi) (n-m)!/(n+m)!) P_n^m(x)``, so that
    ``Y = value * exp(i m phi)`` is orthonormal. Same sign structure as
    :func:`eval_assoc_legendre`.
    """
    n = check_degree(n, max_degree)
    m = int(m)
    if m < 0 or m > n:
        raise ValueError(f"order m={m} must satisfy 0 <= m <= n={n}")
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    sq = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    pmm = np.full_like(x, math.sqrt(1.0 / (4.0 * math.pi)))
    for k in range(1, m + 1):
        pmm = -math.sqrt((2 * k + 1) / (2 * k)) * sq * pmm
    if n == m:
        return _unwrap(pmm, scalar)
    p_prev, p = pmm, math.sqrt(2 * m + 3) * x * pmm
    for k in range(m + 2, n + 1):
        a_k = math.sqrt((4 * k * k - 1) / (k * k - m * m))
        a_km1 = math.sqrt((4 * (k - 1) ** 2 - 1) / ((k - 1) ** 2 - m * m))
        p_prev, p = p, a_k * (x * p - p_prev / a_km1)
    return _unwrap(p, scalar)
