"""Alternating sums over the zeros inside an interval, and their grid counterparts."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import fit_rate
from .roots import RootSet, find_roots

__all__ = [
    "Interval",
    "AltSumReport",
    "FUNCTIONS",
    "grid_nodes",
    "alt_theta_sum",
    "alt_f_sum",
    "riemann_grid_sum",
    "sign_sum_sweep",
    "theorem1_rate",
    "theorem2_rate",
]

NUDGE_WINDOW = 1e-9
NUDGE_STEP = 1e-8

# Entire functions only: each is analytic on a neighbourhood of any interval.
FUNCTIONS = {
    "one": lambda t: np.ones_like(t),
    "identity": lambda t: t,
    "cos": np.cos,
    "sin": np.sin,
    "exp": lambda t: np.exp(0.5 * t),
    "poly": lambda t: 1.0 + t - 0.5 * t**2 + t**3 / 6.0,
}


@dataclass(frozen=True)
class Interval:
    """Closed interval [a, b] with 0 < a < b < pi."""

    a: float
    b: float
    nudged: bool = False

    def __post_init__(self):
        if not 0 < self.a < self.b < math.pi:
            raise ValueError(f"need 0 < a < b < pi, got [{self.a}, {self.b}]")

    @classmethod
    def parse(cls, text: str) -> "Interval":
        a, b = (float(v) for v in text.split(","))
        return cls(a, b)

    @property
    def length(self) -> float:
        return self.b - self.a

    def mask(self, thetas) -> np.ndarray:
        thetas = np.asarray(thetas)
        return (thetas >= self.a) & (thetas <= self.b)

    def avoiding(self, thetas) -> "Interval":
        """Move endpoints within 1e-9 of a root outward by 1e-8."""
        thetas = np.asarray(thetas)
        a, b, moved = self.a, self.b, self.nudged
        if thetas.size and np.min(np.abs(thetas - a)) < NUDGE_WINDOW:
            a, moved = a - NUDGE_STEP, True
        if thetas.size and np.min(np.abs(thetas - b)) < NUDGE_WINDOW:
            b, moved = b + NUDGE_STEP, True
        return Interval(a, b, moved)


@dataclass(frozen=True)
class AltSumReport:
    n: int
    interval: Interval
    function: str
    root_count: int
    first_index: int | None
    sum: float
    grid_sum: float
    theorem1_deviation: float | None

    @property
    def parity(self) -> str:
        return "even" if self.root_count % 2 == 0 else "odd"

    @property
    def grid_deviation(self) -> float:
        return abs(self.sum - self.grid_sum)

    def row(self) -> dict:
        return {
            "n": self.n,
            "a": self.interval.a,
            "b": self.interval.b,
            "function": self.function,
            "root_count": self.root_count,
            "parity": self.parity,
            "sum": self.sum,
            "theorem1_deviation": "" if self.theorem1_deviation is None else self.theorem1_deviation,
            "grid_sum": self.grid_sum,
            "grid_deviation": self.grid_deviation,
            "nudged": int(self.interval.nudged),
        }


def grid_nodes(n: int, j) -> np.ndarray:
    """(2 pi j - pi/2) / (2n + 1), checked against pi (j - 1/4) / (n + 1/2)."""
    j = np.asarray(j, dtype=float)
    nodes = (2 * math.pi * j - 0.5 * math.pi) / (2 * n + 1)
    guesses = math.pi * (j - 0.25) / (n + 0.5)
    if nodes.size and np.max(np.abs(nodes - guesses)) > 1e-15 * max(1.0, float(np.max(guesses))):
        raise AssertionError("grid nodes disagree with the Laplace zeros")
    return nodes


def alt_f_sum(roots: RootSet, interval: Interval, f: str = "identity") -> AltSumReport:
    """Sum of (-1)^j f(theta_j) over roots in the interval, global index j.

    The grid sum runs over the same j with theta_j replaced by the grid node.
    """
    try:
        func = FUNCTIONS[f]
    except KeyError:
        raise ValueError(f"unknown function {f!r}; choose from {sorted(FUNCTIONS)}") from None
    interval = interval.avoiding(roots.thetas)
    mask = interval.mask(roots.thetas)
    j = roots.indices[mask]
    signs = np.where(j % 2 == 0, 1.0, -1.0)
    total = float(np.sum(signs * func(roots.thetas[mask]))) if j.size else 0.0
    grid = float(np.sum(signs * func(grid_nodes(roots.n, j)))) if j.size else 0.0
    count = int(j.size)
    dev = None
    if f == "identity" and count % 2 == 0:
        dev = abs(abs(total) - 0.5 * interval.length)
    return AltSumReport(
        n=roots.n,
        interval=interval,
        function=f,
        root_count=count,
        first_index=int(j[0]) if count else None,
        sum=total,
        grid_sum=grid,
        theorem1_deviation=dev,
    )


def alt_theta_sum(roots: RootSet, interval: Interval) -> AltSumReport:
    """Sum of (-1)^j theta_j over the roots in the interval.

    `theorem1_deviation` is | |sum| - length/2 |, set only for an even
    number of enclosed roots.
    """
    return alt_f_sum(roots, interval, "identity")


def riemann_grid_sum(n: int) -> float:
    """Sum over j = 1..n of (-1)^j cos((2 pi j - pi/2) / (2n + 1)).

    Tends to -1 along even n. For odd n the terms j and n+1-j cancel and
    the sum is 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    j = np.arange(1, n + 1)
    return float(np.sum(np.where(j % 2 == 0, 1.0, -1.0) * np.cos(grid_nodes(n, j))))


def sign_sum_sweep(degrees, interval: Interval, f: str = "identity", roots_for=find_roots):
    return [alt_f_sum(roots_for(n), interval, f) for n in degrees]


def theorem1_rate(reports, min_pairs: int = 4):
    """Fit the identity-f deviation against n over even-parity reports."""
    pairs = [(r.n, r.theorem1_deviation) for r in reports if r.theorem1_deviation is not None]
    return fit_rate(pairs, min_pairs=min_pairs)


def theorem2_rate(reports, even_only: bool = True, min_pairs: int = 4):
    pairs = [(r.n, r.grid_deviation) for r in reports if r.parity == "even" or not even_only]
    return fit_rate(pairs, min_pairs=min_pairs)
