"""Argument-principle check: alternating-orientation circles around the zeros.

Each enclosed zero theta_j gets its own small circle, traversed
counterclockwise when j is even and clockwise when j is odd. Summed, the
circles wind around the zeros exactly like a braid alternating between
consecutive zeros, so

    (1/2 pi i) sum_j o_j oint z (d/dz P_n(cos z)) / P_n(cos z) dz
        = sum_j (-1)^j theta_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .alternating import Interval
from .roots import RootSet, find_roots, initial_guesses
from .special import eval_legendre_pair

__all__ = [
    "ContourError",
    "ContourSpec",
    "ContourReport",
    "default_radius",
    "build_contour",
    "integrate_contour",
    "phase_factor",
    "alpha_floor_sweep",
]


class ContourError(RuntimeError):
    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


def default_radius(n: int) -> float:
    """pi / (2 (2n + 1)): a quarter of the spacing of the Laplace zeros."""
    return math.pi / (2 * (2 * n + 1))


@dataclass(frozen=True)
class ContourSpec:
    n: int
    indices: np.ndarray
    centers: np.ndarray
    radius: float
    orientations: np.ndarray
    roots: np.ndarray
    mode: str
    failed_over: np.ndarray
    quad_points: int = 16

    def reversed(self) -> "ContourSpec":
        return replace(self, orientations=-self.orientations)

    @property
    def size(self) -> int:
        return int(self.centers.size)


@dataclass(frozen=True)
class ContourReport:
    n: int
    integral_value: complex
    root_sum: float
    alpha: float
    circle_values: np.ndarray
    quad_points: np.ndarray
    alpha_local: np.ndarray
    spec: ContourSpec

    @property
    def imag_residual(self) -> float:
        return abs(self.integral_value.imag)

    @property
    def mismatch(self) -> float:
        return abs(self.integral_value.real - self.root_sum)

    def circle_rows(self):
        s = self.spec
        for i in range(s.size):
            yield {
                "j": int(s.indices[i]),
                "center": float(s.centers[i]),
                "orientation": int(s.orientations[i]),
                "value_re": float(self.circle_values[i].real),
                "value_im": float(self.circle_values[i].imag),
                "quad_points": int(self.quad_points[i]),
                "alpha_local": float(self.alpha_local[i]),
            }

    def summary_row(self) -> dict:
        return {
            "n": self.n,
            "circles": self.spec.size,
            "mode": self.spec.mode,
            "integral_re": float(self.integral_value.real),
            "integral_im": float(self.integral_value.imag),
            "root_sum": self.root_sum,
            "mismatch": self.mismatch,
            "imag_residual": self.imag_residual,
            "alpha": self.alpha,
            "failed_over": int(np.sum(self.spec.failed_over)),
        }


def build_contour(roots: RootSet, interval: Interval, mode: str = "root",
                  radius: float | None = None) -> ContourSpec:
    """One circle per zero in `interval`, orientation (-1)^j.

    ``mode="guess"`` centres circles on the Laplace zeros
    pi (j - 1/4) / (n + 1/2); any circle that would miss its zero is moved onto
    the zero and flagged in ``failed_over``.
    """
    if mode not in ("root", "guess"):
        raise ValueError("mode must be 'root' or 'guess'")
    n = roots.n
    r = default_radius(n) if radius is None else float(radius)
    interval = interval.avoiding(roots.thetas)
    mask = interval.mask(roots.thetas)
    j = roots.indices[mask]
    theta = roots.thetas[mask]
    if mode == "guess":
        guess = initial_guesses(n)[mask]
        failed = np.abs(theta - guess) >= r
        centers = np.where(failed, theta, guess)
    else:
        failed = np.zeros(theta.size, dtype=bool)
        centers = theta.copy()
    if centers.size > 1 and np.min(np.diff(centers)) <= 2 * r:
        raise ContourError(f"circles of radius {r} overlap for n={n}")
    # every circle must hold its own zero and no other (mirror zeros at
    # -theta_1 and 2 pi - theta_n included)
    all_zeros = np.concatenate(([-roots.thetas[0]], roots.thetas, [2 * math.pi - roots.thetas[-1]]))
    for c, t, jj in zip(centers, theta, j):
        inside = np.abs(all_zeros - c) < r
        if inside.sum() != 1 or abs(t - c) >= r:
            raise ContourError(f"circle for j={jj} does not isolate its zero (n={n})")
    orient = np.where(j % 2 == 0, 1, -1)
    return ContourSpec(n, j, centers, r, orient, theta, mode, failed)


def _log_deriv(n: int, z: np.ndarray) -> np.ndarray:
    """(d/dz P_n(cos z)) / P_n(cos z) for complex z."""
    c = np.cos(z)
    p, pm1 = eval_legendre_pair(n, c)
    return n * (c * p - pm1) / (np.sin(z) * p)


def phase_factor(n: int, z) -> np.ndarray:
    """|cos((n + 1/2) z - pi/4)|, whose floor on the contour is alpha."""
    return np.abs(np.cos((n + 0.5) * np.asarray(z) - 0.25 * math.pi))


def integrate_contour(spec: ContourSpec, integrand: str = "moment", tol: float = 1e-10,
                      max_points: int = 2**16) -> ContourReport:
    """Trapezoidal rule on every circle, doubling nodes until two levels agree.

    ``integrand="moment"`` integrates z P'/P (giving theta_j per circle);
    ``integrand="count"`` integrates P'/P (giving 1 per circle). Circle values
    are reported with their orientation applied.
    """
    if integrand not in ("moment", "count"):
        raise ValueError("integrand must be 'moment' or 'count'")
    n, r = spec.n, spec.radius
    m = spec.size
    sums = np.zeros(m, dtype=complex)
    points = np.full(m, spec.quad_points, dtype=int)
    alpha_local = np.full(m, np.inf)
    values = np.zeros(m, dtype=complex)

    def node_sum(idx, t):
        ring = r * np.exp(1j * t)
        z = spec.centers[idx, None] + ring[None, :]
        g = _log_deriv(n, z)
        if integrand == "moment":
            g = z * g
        alpha_local[idx] = np.minimum(alpha_local[idx], phase_factor(n, z).min(axis=1))
        # dz / (2 pi i) = r e^{it} dt / (2 pi); dt = 2 pi / N
        return np.sum(g * ring[None, :], axis=1)

    if m:
        n0 = spec.quad_points
        idx = np.arange(m)
        sums[idx] = node_sum(idx, 2 * math.pi * np.arange(n0) / n0)
        values = sums / n0
        active = idx
        delta = np.zeros(0)
        while active.size:
            N = points[active[0]]
            if 2 * N > max_points:
                raise ContourError(
                    f"trapezoid rule did not converge with {max_points} points",
                    achieved=float(np.max(delta)) if delta.size else None,
                )
            # odd nodes of the refined grid
            t_new = 2 * math.pi * (np.arange(N) + 0.5) / N
            sums[active] += node_sum(active, t_new)
            points[active] = 2 * N
            new_vals = sums[active] / (2 * N)
            delta = np.abs(new_vals - values[active])
            values[active] = new_vals
            active = active[delta > tol]
    oriented = spec.orientations * values
    total = complex(np.sum(oriented))
    root_sum = float(np.sum(spec.orientations * spec.roots))
    return ContourReport(
        n=n,
        integral_value=total,
        root_sum=root_sum,
        alpha=float(alpha_local.min()) if m else math.inf,
        circle_values=oriented,
        quad_points=points,
        alpha_local=alpha_local,
        spec=spec,
    )


def alpha_floor_sweep(degrees, interval: Interval, nodes: int = 256, roots_for=find_roots):
    """Minimum of the Laplace phase factor on circles centred at the Laplace zeros.

    Circles use the default radius around pi (j - 1/4) / (n + 1/2) for the
    zeros in `interval`, regardless of any fail-over during integration.
    """
    out = []
    t = 2 * math.pi * np.arange(nodes) / nodes
    for n in degrees:
        roots = roots_for(n)
        mask = interval.avoiding(roots.thetas).mask(roots.thetas)
        centers = initial_guesses(n)[mask]
        if centers.size == 0:
            out.append((n, math.inf))
            continue
        z = centers[:, None] + default_radius(n) * np.exp(1j * t)[None, :]
        out.append((n, float(phase_factor(n, z).min())))
    return out
