"""Norms on Hardy, Dirichlet and Bergman spaces; axiom (X3) and the
Blaschke distance probe."""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_GRID
from .disk import DEFAULT_LADDER, BoundaryGrid, RadialLadder, area_mean, circle_mean
from .series import TaylorSeries

__all__ = [
    "TaylorSeries",
    "SpaceNorm",
    "NumericalWarning",
    "hp_norm",
    "h2_norm_coeff",
    "dirichlet_energy",
    "dirichlet_norm",
    "bergman_a2_norm",
    "dirichlet_area_energy",
    "axiom_x3_check",
    "blaschke_distance_probe",
]


class NumericalWarning(UserWarning):
    pass


def _circle_power_mean(values: np.ndarray, p: float) -> float:
    return float(circle_mean(np.abs(values) ** p)) ** (1.0 / p)


def hp_norm(
    f,
    p: float,
    ladder: RadialLadder = DEFAULT_LADDER,
    grid: BoundaryGrid = BoundaryGrid(DEFAULT_GRID),
    include_boundary: bool | None = None,
) -> float:
    """``sup_r (mean |f(r e^{it})|^p)^{1/p}`` over the ladder rungs.

    Handles exposing exact radial limits (polynomials, finite Blaschke
    products, compositions of those) also get the ``r = 1`` rung, which is
    the supremum itself.  Rung means must be nondecreasing in ``r``
    (subharmonicity of ``|f|^p``); a violation above 1e-9 is warned about.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    rungs = [_circle_power_mean(f(grid.points(r)), p) for r in ladder]
    boundary = getattr(f, "boundary", None)
    if include_boundary is None:
        include_boundary = boundary is not None
    if include_boundary:
        rungs.append(_circle_power_mean(boundary(grid.angles), p))
    drops = np.diff(rungs)
    if drops.size and drops.min() < -1e-9 * max(1.0, max(rungs)):
        warnings.warn(
            f"H^{p} rung means decrease by {-drops.min():.3e}; grid may be too coarse",
            NumericalWarning,
            stacklevel=2,
        )
    return float(max(rungs))


def h2_norm_coeff(f: TaylorSeries) -> float:
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))


def dirichlet_energy(f: TaylorSeries) -> float:
    """``sum n |a_n|^2``, equal to ``(1/pi) * area integral of |f'|^2``."""
    n = np.arange(len(f.coeffs))
    return float(np.sum(n * np.abs(f.coeffs) ** 2))


def dirichlet_norm(f: TaylorSeries) -> float:
    return math.sqrt(h2_norm_coeff(f) ** 2 + dirichlet_energy(f))


def bergman_a2_norm(f: TaylorSeries) -> float:
    n = np.arange(len(f.coeffs))
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 / (n + 1))))


def dirichlet_area_energy(f: TaylorSeries, n_r: int | None = None, n_t: int | None = None) -> float:
    """Polar quadrature of ``(1/pi) * integral |f'|^2 dA`` (exact for polynomials
    once the rules resolve the degree)."""
    df = f.derivative()
    d = max(df.order, 1)
    n_r = n_r or d + 2
    n_t = n_t or 2 * d + 8
    return float(area_mean(lambda z: np.abs(df(z)) ** 2, n_r, n_t).real)


@dataclass(frozen=True)
class SpaceNorm:
    """One of the concrete norms: ``Hp``, ``Dirichlet`` or ``BergmanAp``."""

    variant: str
    p: float = 2.0

    def __post_init__(self):
        if self.variant not in ("Hp", "Dirichlet", "BergmanAp"):
            raise ValueError(f"unknown norm variant {self.variant!r}")
        if self.p < 1:
            raise ValueError("p must be >= 1")

    @classmethod
    def hardy(cls, p: float = 2.0) -> "SpaceNorm":
        return cls("Hp", p)

    @classmethod
    def dirichlet(cls) -> "SpaceNorm":
        return cls("Dirichlet")

    @classmethod
    def bergman(cls, p: float = 2.0) -> "SpaceNorm":
        return cls("BergmanAp", p)

    @classmethod
    def parse(cls, name: str) -> "SpaceNorm":
        """``h2``, ``hp:4``, ``dirichlet``, ``bergman``, ``a2``, ``ap:3`` ..."""
        key, _, p = name.lower().partition(":")
        m = re.fullmatch(r"([ha])(\d+(?:\.\d+)?)", key)
        if m:
            key, p = m.group(1), m.group(2)
        if key in ("dirichlet", "d"):
            return cls.dirichlet()
        if key in ("hp", "h", "hardy"):
            return cls.hardy(float(p or 2))
        if key in ("ap", "a", "bergman"):
            return cls.bergman(float(p or 2))
        raise ValueError(f"unknown norm {name!r}")

    @property
    def label(self) -> str:
        return "Dirichlet" if self.variant == "Dirichlet" else f"{self.variant}(p={self.p:g})"

    def norm(self, f: TaylorSeries, n_t: int | None = None) -> float:
        if self.variant == "Dirichlet":
            return dirichlet_norm(f)
        d = f.order
        if n_t is None:
            n_t = max(64, 1 << int(math.ceil(math.log2(4 * (d + 1) * max(self.p, 1.0)))))
        if self.variant == "Hp":
            if self.p == 2:
                return h2_norm_coeff(f)
            return _circle_power_mean(f.boundary(BoundaryGrid(n_t).angles), self.p)
        if self.p == 2:
            return bergman_a2_norm(f)
        n_r = max(32, int(d * self.p / 2) + 16)
        val = area_mean(lambda z: np.abs(f(z)) ** self.p, n_r, n_t)
        return float(val.real) ** (1.0 / self.p)

    def monomial_norm(self, n: int) -> float:
        return self.norm(TaylorSeries.monomial(n))


def axiom_x3_check(norm: SpaceNorm, n_max: int) -> np.ndarray:
    """``||z^n||^(1/n)`` for ``n = 1..n_max``."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    return np.array([norm.monomial_norm(n) ** (1.0 / n) for n in range(1, n_max + 1)])


def blaschke_distance_probe(B, h, grid: BoundaryGrid = BoundaryGrid(1 << 12), r: float = 0.999) -> float:
    """Lower estimate ``max_j |B - h|`` at radius ``r`` of the sup-norm distance."""
    z = grid.points(r)
    return float(np.abs(B(z) - h(z)).max())
