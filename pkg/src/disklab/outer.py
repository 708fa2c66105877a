"""Outer functions from boundary modulus data, inner-outer factorization of
sampled functions and a Smirnov-class diagnostic."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .config import BOUNDARY_RADIUS, DEFAULT_GRID, TEST_RADIUS
from .disk import BoundaryGrid, RadialLadder, DEFAULT_LADDER, log_modulus
from .series import TaylorSeries, series_exp


@dataclass(frozen=True, eq=False)
class BoundaryModulus:
    """Positive samples ``G_j`` of a boundary modulus on a uniform grid."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size < 8:
            raise ValueError("boundary modulus needs at least 8 samples")
        if not np.all(np.isfinite(v)) or not np.all(v > 0):
            raise ValueError("boundary modulus samples must be finite and positive")
        object.__setattr__(self, "values", v)

    @property
    def grid(self) -> BoundaryGrid:
        return BoundaryGrid(len(self.values))

    @property
    def logs(self) -> np.ndarray:
        return np.log(self.values)


class OuterFunction:
    """Outer function with prescribed ``log G`` on a uniform grid.

    The log-modulus samples are replaced by their trigonometric interpolant
    and ``log g`` is its analytic completion: a polynomial of degree ``n/2``
    whose real part on the circle interpolates ``log G_j``.  Away from the
    circle this coincides with the discrete Herglotz sum (see
    :meth:`herglotz_sum`) up to ``|z|**n``; unlike that sum it stays
    accurate right up to the boundary.
    """

    def __init__(self, log_values):
        u = np.asarray(log_values, dtype=float).ravel()
        if u.size < 8 or not np.all(np.isfinite(u)):
            raise ValueError("outer function needs >= 8 finite log-modulus samples")
        self.log_values = u
        n = u.size
        uh = np.fft.fft(u) / n
        half = n // 2
        c = np.zeros(half + 1, dtype=complex)
        c[0] = uh[0].real
        c[1:half] = 2.0 * uh[1:half]
        if n % 2 == 0:
            c[half] = uh[half].real
        else:
            c[half] = 2.0 * uh[half]
        self.coeffs = c

    @property
    def n(self) -> int:
        return self.log_values.size

    def __repr__(self):
        return f"OuterFunction(n={self.n})"

    def log(self, z):
        return P.polyval(np.asarray(z, dtype=complex), self.coeffs)

    def __call__(self, z):
        return np.exp(self.log(z))

    def log_abs(self, z):
        return self.log(z).real

    def boundary(self, t):
        return self(np.exp(1j * np.asarray(t, dtype=float)))

    def at_origin(self) -> float:
        return float(np.exp(self.log_values.mean()))

    def taylor(self, K: int) -> TaylorSeries:
        return TaylorSeries(series_exp(self.coeffs, K))

    def herglotz_sum(self, z, chunk: int = 512):
        """``exp((1/n) sum_j (zeta_j + z)/(zeta_j - z) log G_j)``, evaluated directly."""
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        zeta = np.exp(2j * np.pi * np.arange(self.n) / self.n)
        out = np.empty(flat.shape, dtype=complex)
        for s in range(0, flat.size, chunk):
            w = flat[s : s + chunk, None]
            out[s : s + chunk] = ((zeta + w) / (zeta - w)) @ self.log_values / self.n
        return np.exp(out).reshape(z.shape)


def outer_from_modulus(G) -> OuterFunction:
    if not isinstance(G, BoundaryModulus):
        G = BoundaryModulus(G)
    return OuterFunction(G.logs)


class InnerPart:
    """``f / outer``, the inner factor recovered by :func:`factorize`."""

    def __init__(self, f, outer: OuterFunction):
        self.f = f
        self.outer = outer

    def __call__(self, z):
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return self.f(z) / self.outer(z)

    def log_abs(self, z):
        return log_modulus(self.f, z) - self.outer.log_abs(z)


@dataclass(frozen=True)
class Factorization:
    outer: OuterFunction
    inner: InnerPart
    inner_residual: float


def factorize(
    f,
    grid: BoundaryGrid = BoundaryGrid(DEFAULT_GRID),
    r_boundary: float = BOUNDARY_RADIUS,
    r_test: float = TEST_RADIUS,
) -> Factorization:
    """Split ``f`` into an outer part built from ``|f|`` on ``|z| = r_boundary``
    and the remaining quotient.

    ``inner_residual`` is ``max | |f/outer| - 1 |`` on ``|z| = r_test``; it is
    small for members of the Smirnov class and large when no bounded inner
    factor exists.
    """
    logs = log_modulus(f, grid.points(r_boundary))
    if not np.all(np.isfinite(logs)):
        raise ValueError("boundary samples of f are not finite")
    if logs.min() <= math.log(1e-8):
        j = int(np.argmin(logs))
        raise ValueError(
            f"|f| = {math.exp(logs[j]):.3e} at angle {grid.angles[j]!r}: "
            "boundary samples must stay above 1e-8"
        )
    outer = OuterFunction(logs)
    inner = InnerPart(f, outer)
    d = inner.log_abs(grid.points(r_test))
    with np.errstate(over="ignore", invalid="ignore"):
        dev = np.abs(np.expm1(d))
    residual = float(dev.max()) if np.all(np.isfinite(dev)) else math.inf
    return Factorization(outer, inner, residual)


@dataclass(frozen=True)
class SmirnovScore:
    score: float
    rung_scores: tuple[float, ...]

    @property
    def growth(self) -> float:
        """Ratio of the last two rung scores (nan when undefined)."""
        if len(self.rung_scores) < 2 or self.rung_scores[-2] == 0:
            return math.nan
        return self.rung_scores[-1] / self.rung_scores[-2]


def smirnov_diagnostic(
    f,
    ladder: RadialLadder = DEFAULT_LADDER,
    grid: BoundaryGrid = BoundaryGrid(DEFAULT_GRID),
    percentile: float = 99.0,
) -> SmirnovScore:
    """Tail mass of ``log+ |f_r|`` above its upper percentile, per ladder rung.

    Heuristic only: a bounded, settling score is consistent with uniform
    integrability of ``{log+ |f_r|}``, a score that keeps doubling along a
    halving ladder points at mass concentrating on a null set.
    """
    scores = []
    for r in ladder:
        v = np.maximum(log_modulus(f, grid.points(r)), 0.0)
        cut = np.percentile(v, percentile)
        scores.append(float(np.where(v > cut, v, 0.0).sum() / v.size))
    return SmirnovScore(max(scores), tuple(scores))
