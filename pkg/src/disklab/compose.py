"""Weighted composition operators ``T f = psi * (f o phi)`` and the
composition-flavoured checks: Lindeloef boundary identity, Littlewood
subordination bound and Dirichlet-energy multiplicativity."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_GRID
from .disk import (
    DEFAULT_LADDER,
    BoundaryGrid,
    RadialLadder,
    arc_mask,
    atom_angles_of,
    log_modulus,
    probe_points,
)
from .handles import Composition, _Hooks, _has, boundary_values
from .series import TaylorSeries, mul_truncated, tail_mass, to_taylor
from .spaces import dirichlet_energy, hp_norm


class WeightedCompositionOperator:
    """``f -> psi * (f o phi)``.

    ``phi`` must map the disk into its closure; this is probed on 64 points.
    A unimodular constant ``phi`` is allowed and gives the rank-one operator
    ``f -> f(alpha) psi``.
    """

    def __init__(self, psi, phi):
        self.psi = psi
        self.phi = phi
        vals = np.abs(np.asarray(phi(probe_points(64)), dtype=complex))
        if not np.all(vals <= 1.0 + 1e-12):
            raise ValueError(f"phi leaves the disk on the probe set (max |phi| = {vals.max():.6g})")

    def __repr__(self):
        return f"WeightedCompositionOperator(psi={self.psi!r}, phi={self.phi!r})"

    def __call__(self, f):
        return apply(self, f)


class WeightedImage(_Hooks):
    """The function ``psi * (f o phi)``."""

    def __init__(self, psi, phi, f):
        self.psi = psi
        self.phi = phi
        self.f = f
        self._comp = Composition(f, phi)

    def __call__(self, z):
        return self.psi(z) * self.f(self.phi(z))

    def _boundary_ok(self):
        return _has(self.psi, "boundary") and _has(self.phi, "boundary")

    def _boundary(self, t):
        return self.psi.boundary(t) * boundary_values(self.f, self.phi.boundary(t))

    def log_abs(self, z):
        return log_modulus(self.psi, z) + log_modulus(self._comp, z)

    def atom_angles(self):
        return atom_angles_of(self.psi) + atom_angles_of(self._comp)

    def taylor(self, K):
        return TaylorSeries(
            mul_truncated(to_taylor(self.psi, K).padded(K), to_taylor(self._comp, K).padded(K), K)
        )


def apply(T: WeightedCompositionOperator, f) -> WeightedImage:
    return WeightedImage(T.psi, T.phi, f)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Column ``k`` holds the Taylor coefficients ``0..M`` of ``T(z^k)``."""

    coeffs: np.ndarray
    tail_mass: tuple[float, ...]

    @property
    def shape(self):
        return self.coeffs.shape

    def column(self, k: int) -> TaylorSeries:
        return TaylorSeries(self.coeffs[:, k])

    def to_csv(self) -> str:
        """Rows = coefficient index, one ``re,im`` column pair per ``k``."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        K = self.coeffs.shape[1] - 1
        header = ["n"]
        for k in range(K + 1):
            header += [f"re_k{k}", f"im_k{k}"]
        w.writerow(header)
        for n, row in enumerate(self.coeffs):
            out = [n]
            for v in row:
                out += [f"{v.real:.17g}", f"{v.imag:.17g}"]
            w.writerow(out)
        return buf.getvalue()


def monomial_matrix(T: WeightedCompositionOperator, K: int, M: int) -> OperatorMatrix:
    """Taylor coefficients of ``psi * phi**k`` for ``k = 0..K``, truncated at ``M``."""
    if K < 0 or M < 0:
        raise ValueError("K and M must be >= 0")
    psi = to_taylor(T.psi, M).padded(M)
    phi = to_taylor(T.phi, M).padded(M)
    cols = np.zeros((M + 1, K + 1), dtype=complex)
    col = psi
    tails = []
    for k in range(K + 1):
        cols[:, k] = col
        tails.append(tail_mass(col))
        col = mul_truncated(col, phi, M)
    return OperatorMatrix(cols, tuple(tails))


@dataclass(frozen=True)
class LindelofResult:
    residual: float
    excluded: int
    excluded_angles: tuple[float, ...]


def lindelof_check(
    f,
    h,
    grid: BoundaryGrid = BoundaryGrid(1 << 12),
    r_pair: tuple[float, float] = (1.0 - 1e-6, 1.0 - 1e-9),
    arc: float = 1e-2,
) -> LindelofResult:
    """Compare ``(f o h)`` near the circle with ``f*`` at the rescaled trace of ``h``.

    ``r_pair = (r_trace, r_outer)``: the trace of ``h`` is sampled at
    ``r_trace`` and pushed to the circle, the composition is sampled at
    ``r_outer``.  Grid points within ``arc`` of an atom of ``h`` are
    excluded, as are points where the trace of ``h`` underflows.
    """
    probe = np.concatenate([probe_points(64), 0.99 * np.exp(2j * np.pi * np.arange(64) / 64)])
    fp = np.abs(np.asarray(f(probe), dtype=complex))
    if not np.all(np.isfinite(fp)) or fp.max() > 1e8:
        raise ValueError("f does not look bounded on the probe set")
    r_trace, r_outer = r_pair
    atoms = atom_angles_of(h)
    keep = arc_mask(grid.angles, atoms, arc)
    lhs = np.asarray(f(h(grid.points(r_outer))), dtype=complex)
    trace = np.asarray(h(grid.points(r_trace)), dtype=complex)
    mod = np.abs(trace)
    keep &= mod > 1e-300
    if not keep.any():
        raise ValueError("no grid point left after exclusions")
    rhs = boundary_values(f, trace[keep] / mod[keep])
    residual = float(np.abs(lhs[keep] - rhs).max())
    excluded = tuple(float(t) for t in grid.angles[~keep])
    return LindelofResult(residual, len(excluded), excluded)


def littlewood_check(
    f: TaylorSeries,
    phi,
    p: float,
    ladder: RadialLadder = DEFAULT_LADDER,
    grid: BoundaryGrid = BoundaryGrid(DEFAULT_GRID),
) -> tuple[float, float]:
    """``(||f o phi||_p, ((1+|b|)/(1-|b|))^(1/p) ||f||_p)`` with ``b = phi(0)``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    b = abs(complex(np.asarray(phi(np.zeros(1, dtype=complex)))[0]))
    if not b < 1:
        raise ValueError("phi(0) must lie in the open disk")
    lhs = hp_norm(Composition(f, phi), p, ladder, grid)
    bound = ((1.0 + b) / (1.0 - b)) ** (1.0 / p) * hp_norm(f, p, ladder, grid)
    return lhs, bound


@dataclass(frozen=True)
class DirichletMultResult:
    lhs: float
    rhs: float
    K: int
    tail: float

    @property
    def ok(self) -> bool:
        return abs(self.lhs - self.rhs) <= 1e-4 * max(1.0, self.rhs)


def dirichlet_mult_check(
    f: TaylorSeries,
    B,
    K: int = 400,
    K_max: int = 1600,
    tail_tol: float = 1e-6,
) -> DirichletMultResult:
    """Dirichlet energy of ``f o B`` against ``deg(B) * D(f)``.

    The truncation order doubles while the estimated Dirichlet tail of the
    composed series exceeds ``tail_tol``.
    """
    n = B.degree
    if n < 1:
        raise ValueError("B must have degree >= 1")
    while True:
        comp = f.compose(B.taylor(K), K)
        tail = tail_mass(comp.padded(K), weight=1)
        if tail <= tail_tol:
            break
        if K * 2 > K_max:
            raise ArithmeticError(
                f"Dirichlet tail {tail:.3e} still above {tail_tol} at K={K}; K_max={K_max} insufficient"
            )
        K *= 2
    return DirichletMultResult(dirichlet_energy(comp), n * dirichlet_energy(f), K, tail)
