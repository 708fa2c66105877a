"""Primitives on the unit disk: Moebius maps, circle grids, radial traces and
quadrature.

Functions handled by this package are plain callables accepting numpy arrays
of complex points.  Some of them additionally expose

``boundary(t)``
    exact radial limits at angles ``t`` (available for finite Blaschke
    products, atomic singular functions, polynomials, ...);
``log_abs(z)``
    ``log|f(z)|`` computed without under/overflow;
``taylor(K)``
    the first ``K + 1`` Taylor coefficients at the origin;
``atom_angles()``
    angles near which radial limits are not attained uniformly.

The helpers below use these hooks when they are present and fall back to
sampling at a radius slightly inside the circle otherwise.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

Handle = Callable[[np.ndarray], np.ndarray]


def as_disk_point(a: complex) -> complex:
    a = complex(a)
    if not abs(a) < 1.0:
        raise ValueError(f"point {a} is not in the open unit disk")
    return a


def as_unimodular(value: complex, tol: float = 1e-14) -> complex:
    """Validate ``| |value| - 1 | <= tol`` and renormalize to exact unit modulus."""
    value = complex(value)
    modulus = abs(value)
    if not abs(modulus - 1.0) <= tol:
        raise ValueError(f"constant {value} is not unimodular (|c| = {modulus!r})")
    # leave rounding-level deviations alone so that renormalizing is idempotent
    if abs(modulus - 1.0) <= 1e-15:
        return value
    return value / modulus


def mobius_eval(a: complex, z):
    """The disk automorphism ``(a - z) / (1 - conj(a) z)``; an involution."""
    a = complex(a)
    z = np.asarray(z, dtype=complex)
    return (a - z) / (1.0 - np.conj(a) * z)


def circle_mean(samples) -> complex | float:
    """Rectangle rule for the normalized circle integral on a uniform grid."""
    arr = np.asarray(samples)
    if arr.size == 0:
        raise ValueError("circle_mean of an empty sample sequence")
    return arr.mean()


@dataclass(frozen=True)
class BoundaryGrid:
    """Uniform grid ``t_j = 2 pi j / n`` on the unit circle."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8:
            raise ValueError(f"grid size must be an integer >= 8, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def angles(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n

    def points(self, r: float = 1.0) -> np.ndarray:
        return r * np.exp(1j * self.angles)

    def resolving(self, r: float, per_width: float = 32.0) -> "BoundaryGrid":
        """A power-of-two refinement fine enough for features of width ``1 - r``.

        The rectangle rule applied to a Poisson kernel of radius ``r`` has
        aliasing error of order ``r**n``; ``n (1 - r) >= 32`` pushes it below
        double precision.
        """
        needed = per_width / max(1.0 - r, 1e-15)
        if self.n >= needed:
            return self
        return BoundaryGrid(1 << int(math.ceil(math.log2(needed))))


_LADDER_RE = re.compile(r"^\s*1\s*-\s*2\^-k\s*:\s*(\d+)\s*\.\.\s*(\d+)\s*$")


@dataclass(frozen=True)
class RadialLadder:
    """Strictly increasing radii in (0, 1) approximating a radial limit."""

    radii: tuple[float, ...]

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise ValueError("radial ladder needs at least one radius")
        if not all(0.0 < r < 1.0 for r in radii):
            raise ValueError("ladder radii must lie in (0, 1)")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("ladder radii must be strictly increasing")
        object.__setattr__(self, "radii", radii)

    @classmethod
    def geometric(cls, k_min: int = 1, k_max: int = 20) -> "RadialLadder":
        """Radii ``1 - 2**-k`` for ``k = k_min..k_max``."""
        return cls(tuple(1.0 - 2.0 ** -k for k in range(k_min, k_max + 1)))

    @classmethod
    def reaching(cls, eps: float, k_min: int = 1) -> "RadialLadder":
        """Geometric ladder ending exactly at ``1 - eps``."""
        radii = []
        k = k_min
        while 2.0 ** -k > eps * 1.5:
            radii.append(1.0 - 2.0 ** -k)
            k += 1
        radii.append(1.0 - eps)
        return cls(tuple(radii))

    @classmethod
    def parse(cls, spec: str) -> "RadialLadder":
        """Parse ``"1-2^-k:1..20"`` or a comma separated list of radii."""
        m = _LADDER_RE.match(spec)
        if m:
            return cls.geometric(int(m.group(1)), int(m.group(2)))
        try:
            return cls(tuple(float(x) for x in spec.split(",")))
        except ValueError as exc:
            raise ValueError(f"cannot parse ladder spec {spec!r}: {exc}") from None

    def __iter__(self):
        return iter(self.radii)

    def __len__(self):
        return len(self.radii)

    @property
    def last(self) -> float:
        return self.radii[-1]


DEFAULT_LADDER = RadialLadder.geometric()


def radial_trace(f: Handle, grid: BoundaryGrid, r: float) -> np.ndarray:
    """Samples ``f(r e^{i t_j})``."""
    return np.asarray(f(grid.points(r)), dtype=complex)


def boundary_trace(f: Handle, grid: BoundaryGrid, r: float) -> np.ndarray:
    """Radial limits on the grid when ``f`` knows them, else samples at radius ``r``."""
    boundary = getattr(f, "boundary", None)
    if boundary is not None:
        return np.asarray(boundary(grid.angles), dtype=complex)
    return radial_trace(f, grid, r)


def log_modulus(f: Handle, z) -> np.ndarray:
    log_abs = getattr(f, "log_abs", None)
    if log_abs is not None:
        return np.asarray(log_abs(z), dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        return np.log(np.abs(np.asarray(f(z), dtype=complex)))


def atom_angles_of(f) -> tuple[float, ...]:
    getter = getattr(f, "atom_angles", None)
    return tuple(getter()) if getter is not None else ()


def angular_distance(t, s) -> np.ndarray:
    d = np.mod(np.asarray(t) - s, TWO_PI)
    return np.minimum(d, TWO_PI - d)


def arc_mask(angles: np.ndarray, centers: Iterable[float], arc: float) -> np.ndarray:
    """True where a grid angle stays at least ``arc`` away from every center."""
    keep = np.ones(angles.shape, dtype=bool)
    for c in centers:
        keep &= angular_distance(angles, c) >= arc
    return keep


def innerness_residual(
    f: Handle,
    grid: BoundaryGrid,
    r: float,
    arc: float = 1e-2,
    exclude: Sequence[float] = (),
) -> float:
    """``max | |f*| - 1 |`` over the grid, skipping arcs around atoms of ``f``."""
    values = boundary_trace(f, grid, r)
    keep = arc_mask(grid.angles, tuple(exclude) + atom_angles_of(f), arc)
    if not keep.any():
        raise ValueError("every grid point lies in an excluded arc")
    dev = np.abs(np.abs(values[keep]) - 1.0)
    if not np.all(np.isfinite(dev)):
        return math.inf
    return float(dev.max())


def winding_number(f: Handle, r: float, n: int) -> int:
    """Argument principle: number of zeros of ``f`` in ``|z| < r``.

    Phase increments between neighbouring samples must stay below pi, so
    ``n`` has to resolve the argument of ``f`` on the circle.
    """
    values = np.asarray(f(BoundaryGrid(n).points(r)), dtype=complex)
    steps = np.angle(np.roll(values, -1) / values)
    return int(round(steps.sum() / TWO_PI))


def area_mean(g: Handle, n_r: int = 64, n_t: int = 128) -> complex | float:
    """``(1/pi) * integral of g over the disk``, Gauss-Legendre in r times the
    rectangle rule in t."""
    x, w = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * (x + 1.0)
    w = 0.5 * w
    t = TWO_PI * np.arange(n_t) / n_t
    z = r[:, None] * np.exp(1j * t)[None, :]
    vals = np.asarray(g(z))
    # (1/pi) * int_0^1 int_0^{2pi} g r dt dr = 2 * int_0^1 r * mean_t(g) dr
    return 2.0 * np.sum(w * r * vals.mean(axis=1))


def probe_points(count: int = 64, radii: Sequence[float] = (0.2, 0.45, 0.7, 0.9)) -> np.ndarray:
    """Deterministic probe set spread over a few concentric circles."""
    per = int(math.ceil(count / len(radii)))
    pts = []
    for i, r in enumerate(radii):
        t = TWO_PI * (np.arange(per) + 0.5 * (i % 2) + 0.173 * i) / per
        pts.append(r * np.exp(1j * t))
    return np.concatenate(pts)[:count]


def random_disk_points(rng: np.random.Generator, count: int, r_max: float = 0.95) -> np.ndarray:
    """Uniform (area measure) random points in the disk of radius ``r_max``."""
    r = r_max * np.sqrt(rng.uniform(0.0, 1.0, count))
    t = rng.uniform(0.0, TWO_PI, count)
    return r * np.exp(1j * t)
