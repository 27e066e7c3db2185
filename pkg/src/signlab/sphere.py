"""Positive and negative areas on the unit sphere for the product eigenfunctions.

The basis consists of P_n(cos theta) and P_n^m(cos theta) cos(m phi),
P_n^m(cos theta) sin(m phi) for 1 <= m <= n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import RateFit, fit_rate
from .roots import RootSet, find_roots
from .special import eval_assoc_legendre_normalized

__all__ = [
    "BasisFunction",
    "SphereSymmetryReport",
    "zonal_band_areas",
    "azimuthal_ratio",
    "sphere_report",
    "symmetry_sweep",
]

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class BasisFunction:
    n: int
    m: int = 0
    azimuthal: str = "none"

    def __post_init__(self):
        if not 0 <= self.m <= self.n:
            raise ValueError(f"need 0 <= m <= n, got m={self.m}, n={self.n}")
        if self.azimuthal not in ("none", "cosine", "sine"):
            raise ValueError("azimuthal must be 'none', 'cosine' or 'sine'")
        if (self.m == 0) != (self.azimuthal == "none"):
            raise ValueError("azimuthal factor is 'none' exactly when m = 0")


@dataclass(frozen=True)
class SphereSymmetryReport:
    function: BasisFunction
    vol_pos: float
    vol_neg: float
    method: str
    quadrature_ratio: float | None = None
    alternating_sum: float | None = None

    @property
    def ratio(self) -> float:
        return self.vol_pos / self.vol_neg

    @property
    def df_ratio_bound(self) -> float:
        return max(self.ratio, 1.0 / self.ratio)

    def row(self) -> dict:
        f = self.function
        return {
            "n": f.n,
            "m": f.m,
            "azimuthal": f.azimuthal,
            "vol_pos": self.vol_pos,
            "vol_neg": self.vol_neg,
            "ratio": self.ratio,
            "method": self.method,
            "quadrature_ratio": "" if self.quadrature_ratio is None else self.quadrature_ratio,
            "df_ratio_bound": self.df_ratio_bound,
        }


def zonal_band_areas(roots: RootSet) -> SphereSymmetryReport:
    """Areas where P_n(cos theta) is positive / negative, from the zeros alone.

    The zeros z_j = cos theta_j cut [-1, 1] into bands; the band touching
    z = 1 is positive since P_n(1) = 1, and signs alternate across the simple
    zeros. A band of height h has area 2 pi h.
    """
    z = np.cos(roots.thetas)
    edges = np.concatenate(([1.0], z, [-1.0]))
    widths = edges[:-1] - edges[1:]
    pos = 2 * math.pi * float(np.sum(widths[0::2]))
    neg = 2 * math.pi * float(np.sum(widths[1::2]))
    j = roots.indices
    alt = float(np.sum(np.where(j % 2 == 0, 1.0, -1.0) * z))
    return SphereSymmetryReport(BasisFunction(roots.n), pos, neg, "band-sum", alternating_sum=alt)


def azimuthal_ratio(f: BasisFunction, theta_nodes: int = 512, phi_per_m: int = 256) -> SphereSymmetryReport:
    """Exact areas for m >= 1, with a tensor-product quadrature cross-check.

    Shifting phi by pi/m negates the function and preserves area, so each
    sign owns exactly half the sphere. The quadrature uses Gauss-Legendre in
    cos theta and ``phi_per_m * m`` midpoint nodes in phi.
    """
    if f.m == 0:
        raise ValueError("m = 0 is the zonal case; use zonal_band_areas")
    x, w = np.polynomial.legendre.leggauss(theta_nodes)
    k = phi_per_m * f.m
    phi = 2 * math.pi * (np.arange(k) + 0.5) / k
    radial = eval_assoc_legendre_normalized(f.n, f.m, x)
    ang = np.cos(f.m * phi) if f.azimuthal == "cosine" else np.sin(f.m * phi)
    sign = np.sign(radial[:, None] * ang[None, :])
    cell = w[:, None] * (2 * math.pi / k)
    q_pos = float(np.sum(cell * (sign > 0)))
    q_neg = float(np.sum(cell * (sign < 0)))
    return SphereSymmetryReport(f, 2 * math.pi, 2 * math.pi, "analytic", quadrature_ratio=q_pos / q_neg)


def sphere_report(f: BasisFunction, roots_for=find_roots) -> SphereSymmetryReport:
    if f.m == 0:
        return zonal_band_areas(roots_for(f.n))
    return azimuthal_ratio(f)


@dataclass(frozen=True)
class SweepResult:
    reports: list
    fit: RateFit | None
    exact_symmetry: bool


def symmetry_sweep(degrees, roots_for=find_roots) -> SweepResult:
    """Zonal reports for even degrees and a fit of |ratio - 1| against n.

    A sweep in which every ratio is exactly 1 has nothing to fit and is
    flagged as exact symmetry.
    """
    degrees = list(degrees)
    if any(n % 2 for n in degrees):
        raise ValueError("symmetry sweeps take even degrees; odd degrees are exactly symmetric")
    reports = [zonal_band_areas(roots_for(n)) for n in degrees]
    return _fit_sweep(reports)


def _fit_sweep(reports) -> SweepResult:
    pairs = [(r.function.n, abs(r.ratio - 1.0)) for r in reports]
    if all(e == 0 for _, e in pairs):
        return SweepResult(reports, None, True)
    fit = fit_rate(pairs) if len({n for n, _ in pairs}) >= 4 else None
    return SweepResult(reports, fit, False)
