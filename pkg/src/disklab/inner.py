"""Inner functions with finite Blaschke part and atomic singular part.

An :class:`InnerFunction` is stored through its canonical data: a unimodular
constant, a finite zero multiset and finitely many atoms ``(angle, mass)`` of
the singular measure.  Divisibility and quotients are decided on that data,
exactly, never from sampled values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._parallel import ordered_map
from .blaschke import FiniteBlaschke
from .disk import (
    TWO_PI,
    BoundaryGrid,
    RadialLadder,
    as_unimodular,
    log_modulus,
    mobius_eval,
    random_disk_points,
)
from .series import TaylorSeries, mul_truncated, series_exp

MAX_GRID = 1 << 23


class NotDivisibleError(ValueError):
    def __init__(self, certificate: "DivisibilityCertificate"):
        super().__init__(f"inner function does not divide: {certificate}")
        self.certificate = certificate


class ZeroOnCircleError(ValueError):
    """A sample of ``log|f|`` hit a (numerical) zero; perturb the radius."""


@dataclass(frozen=True)
class SingularMeasure:
    """Finite positive atomic measure on the circle.

    Angles are reduced to ``[0, 2 pi)`` and atoms closer than ``angle_tol``
    are merged (masses added).
    """

    atoms: tuple[tuple[float, float], ...] = ()
    angle_tol: float = field(default=1e-12, repr=False, compare=False)

    def __post_init__(self):
        raw = []
        for t, m in self.atoms:
            t, m = float(t) % TWO_PI, float(m)
            if t == TWO_PI:  # tiny negative angles round up to 2 pi
                t = 0.0
            if not m > 0 or not math.isfinite(m):
                raise ValueError(f"atom mass must be positive and finite, got {m}")
            raw.append((t, m))
        raw.sort()
        merged: list[list[float]] = []
        for t, m in raw:
            if merged and t - merged[-1][0] <= self.angle_tol:
                merged[-1][1] += m
            else:
                merged.append([t, m])
        # wrap-around at 2 pi
        if len(merged) > 1 and merged[0][0] + TWO_PI - merged[-1][0] <= self.angle_tol:
            merged[0][1] += merged.pop()[1]
        object.__setattr__(self, "atoms", tuple((t, m) for t, m in merged))

    @property
    def angles(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms], dtype=float)

    @property
    def masses(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms], dtype=float)

    @property
    def total_mass(self) -> float:
        return float(sum(m for _, m in self.atoms))

    def __bool__(self):
        return bool(self.atoms)

    def __add__(self, other: "SingularMeasure") -> "SingularMeasure":
        return SingularMeasure(self.atoms + other.atoms)

    def scaled(self, k: float) -> "SingularMeasure":
        if k == 0:
            return SingularMeasure()
        return SingularMeasure(tuple((t, k * m) for t, m in self.atoms))


@dataclass(frozen=True)
class SingularInner:
    """``exp(-sum_j m_j (e^{i t_j} + z) / (e^{i t_j} - z))``."""

    measure: SingularMeasure = SingularMeasure()

    @classmethod
    def atom(cls, angle: float, mass: float) -> "SingularInner":
        return cls(SingularMeasure(((angle, mass),)))

    def herglotz(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            for t, m in self.measure.atoms:
                zeta = np.exp(1j * t)
                out = out + m * (zeta + z) / (zeta - z)
        return out

    def __call__(self, z):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return np.exp(-self.herglotz(z))

    def boundary(self, t):
        return self(np.exp(1j * np.asarray(t, dtype=float)))

    def log_abs(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            for t, m in self.measure.atoms:
                out = out - m * (1.0 - np.abs(z) ** 2) / np.abs(np.exp(1j * t) - z) ** 2
        return out

    def taylor(self, K: int) -> TaylorSeries:
        F = np.zeros(K + 1, dtype=complex)
        k = np.arange(1, K + 1)
        for t, m in self.measure.atoms:
            F[0] -= m
            F[1:] -= 2.0 * m * np.exp(-1j * t * k)
        return TaylorSeries(series_exp(F, K))

    def atom_angles(self):
        return tuple(self.measure.angles)


def singular_eval(S: SingularInner, z):
    return S(z)


@dataclass(frozen=True)
class InnerFunction:
    """Canonical inner function ``h = B S``."""

    blaschke: FiniteBlaschke = FiniteBlaschke()
    singular: SingularInner = SingularInner()

    @classmethod
    def from_data(
        cls,
        constant: complex = 1.0,
        zeros: Sequence[complex] = (),
        atoms: Sequence[tuple[float, float]] = (),
    ) -> "InnerFunction":
        return cls(FiniteBlaschke(constant, tuple(zeros)), SingularInner(SingularMeasure(tuple(atoms))))

    @classmethod
    def constant_function(cls, c: complex) -> "InnerFunction":
        return cls(FiniteBlaschke(c))

    @classmethod
    def atom(cls, angle: float, mass: float) -> "InnerFunction":
        return cls(singular=SingularInner.atom(angle, mass))

    @classmethod
    def lift(cls, h) -> "InnerFunction":
        if isinstance(h, InnerFunction):
            return h
        if isinstance(h, FiniteBlaschke):
            return cls(h)
        if isinstance(h, SingularInner):
            return cls(singular=h)
        raise TypeError(f"cannot interpret {type(h).__name__} as canonical inner data")

    @property
    def constant(self) -> complex:
        return self.blaschke.constant

    @property
    def zeros(self) -> tuple[complex, ...]:
        return self.blaschke.zeros

    @property
    def atoms(self) -> tuple[tuple[float, float], ...]:
        return self.singular.measure.atoms

    @property
    def is_constant(self) -> bool:
        return not self.zeros and not self.atoms

    def __call__(self, z):
        if not self.atoms:
            return self.blaschke(z)
        return self.blaschke(z) * self.singular(z)

    def boundary(self, t):
        return self(np.exp(1j * np.asarray(t, dtype=float)))

    def log_abs(self, z):
        return self.blaschke.log_abs(z) + self.singular.log_abs(z)

    def taylor(self, K: int) -> TaylorSeries:
        b = self.blaschke.taylor(K).padded(K)
        if not self.atoms:
            return TaylorSeries(b)
        return TaylorSeries(mul_truncated(b, self.singular.taylor(K).padded(K), K))

    def atom_angles(self):
        return self.singular.atom_angles()

    def __mul__(self, other):
        if isinstance(other, (FiniteBlaschke, SingularInner)):
            other = InnerFunction.lift(other)
        if not isinstance(other, InnerFunction):
            return NotImplemented
        return InnerFunction(
            FiniteBlaschke(self.constant * other.constant, self.zeros + other.zeros),
            SingularInner(self.singular.measure + other.singular.measure),
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "InnerFunction":
        if int(k) != k or k < 0:
            raise ValueError("only nonnegative integer powers stay inner")
        k = int(k)
        return InnerFunction(
            FiniteBlaschke(self.constant**k, self.zeros * k),
            SingularInner(self.singular.measure.scaled(k)),
        )

    def measure_data(self) -> dict:
        """Point masses at zeros plus the singular atoms, as a weight map."""
        out: dict = {}
        for a in self.zeros:
            out[("zero", a)] = out.get(("zero", a), 0) + 1
        for t, m in self.atoms:
            out[("atom", t)] = out.get(("atom", t), 0) + m
        return out


def inner_eval(h: InnerFunction, z):
    return h(z)


@dataclass(frozen=True)
class DivisibilityCertificate:
    divides: bool
    zero_deficits: tuple[complex, ...] = ()
    mass_deficits: tuple[tuple[float, float], ...] = ()
    ambiguous: bool = False

    def __str__(self):
        if self.divides:
            return "divides" + (" (ambiguous zero pairing)" if self.ambiguous else "")
        return f"zero deficits {list(self.zero_deficits)}, mass deficits {list(self.mass_deficits)}"


def _match_zeros(z0: Sequence[complex], z1: Sequence[complex], tol: float):
    """Greedy nearest pairing of ``z0`` into ``z1``; returns leftovers of both."""
    pool = list(z1)
    missing = []
    ambiguous = False
    for a in z0:
        cands = [i for i, b in enumerate(pool) if abs(a - b) <= tol]
        if not cands:
            missing.append(a)
            continue
        if len(cands) > 1 and len({pool[i] for i in cands}) > 1:
            ambiguous = True
        best = min(cands, key=lambda i: abs(a - pool[i]))
        pool.pop(best)
    return missing, pool, ambiguous


def _match_atoms(h0: InnerFunction, h1: InnerFunction, angle_tol: float):
    pairs = []
    for t0, m0 in h0.atoms:
        match = None
        for t1, m1 in h1.atoms:
            d = abs(t0 - t1) % TWO_PI
            if min(d, TWO_PI - d) <= angle_tol:
                match = (t1, m1)
                break
        pairs.append(((t0, m0), match))
    return pairs


def inner_divides(
    h0: InnerFunction,
    h1: InnerFunction,
    zero_tol: float = 1e-10,
    angle_tol: float = 1e-12,
    mass_tol: float = 1e-12,
) -> DivisibilityCertificate:
    """Does ``h1 / h0`` stay inner?  Compares zero multisets and atom masses."""
    h0, h1 = InnerFunction.lift(h0), InnerFunction.lift(h1)
    missing, _, ambiguous = _match_zeros(h0.zeros, h1.zeros, zero_tol)
    deficits = []
    for (t0, m0), match in _match_atoms(h0, h1, angle_tol):
        have = match[1] if match else 0.0
        if have < m0 - mass_tol:
            deficits.append((t0, m0 - have))
    return DivisibilityCertificate(
        divides=not missing and not deficits,
        zero_deficits=tuple(missing),
        mass_deficits=tuple(deficits),
        ambiguous=ambiguous,
    )


def inner_quotient(
    h0: InnerFunction,
    h1: InnerFunction,
    zero_tol: float = 1e-10,
    angle_tol: float = 1e-12,
    mass_tol: float = 1e-12,
    verify: bool = True,
) -> InnerFunction:
    """Canonical data of ``h1 / h0``; raises :class:`NotDivisibleError` otherwise."""
    h0, h1 = InnerFunction.lift(h0), InnerFunction.lift(h1)
    cert = inner_divides(h0, h1, zero_tol, angle_tol, mass_tol)
    if not cert.divides:
        raise NotDivisibleError(cert)
    _, rest, _ = _match_zeros(h0.zeros, h1.zeros, zero_tol)
    used = {}
    for (t0, m0), match in _match_atoms(h0, h1, angle_tol):
        used[match[0]] = used.get(match[0], 0.0) + m0
    atoms = []
    for t1, m1 in h1.atoms:
        left = m1 - used.get(t1, 0.0)
        if left > mass_tol:
            atoms.append((t1, left))
    c = h1.constant / h0.constant
    q = InnerFunction.from_data(as_unimodular(c, 1e-12), rest, atoms)
    if verify:
        z = random_disk_points(np.random.default_rng(0), 32)
        err = np.abs(q(z) * h0(z) - h1(z)).max()
        if err > 1e-9:
            raise ArithmeticError(f"quotient check failed: max |q h0 - h1| = {err:.3e}")
    return q


def lemma_sequence_nonnegative(mu0: Mapping, mu1: Mapping, k_max: int = 50) -> bool:
    """``mu0 + k (mu1 - mu0) >= 0`` componentwise for ``k = 0..k_max``.

    Exact when the weights are ints or Fractions.
    """
    keys = set(mu0) | set(mu1)
    for key in keys:
        a, b = mu0.get(key, 0), mu1.get(key, 0)
        for k in range(k_max + 1):
            if a + k * (b - a) < 0:
                return False
    return True


def measure_dominates(mu0: Mapping, mu1: Mapping) -> bool:
    """``mu1 >= mu0`` componentwise."""
    return all(mu1.get(key, 0) >= mu0.get(key, 0) for key in set(mu0) | set(mu1))


# --- Jensen means and singular mass -------------------------------------------------


def jensen_mean(f, r: float, grid: BoundaryGrid, refine: bool = True) -> float:
    """Circle mean of ``log|f(r e^{it})|``.

    With ``refine`` the grid is enlarged until it resolves features of width
    ``1 - r`` (see :meth:`BoundaryGrid.resolving`).
    """
    g = grid.resolving(r) if refine else grid
    if g.n > MAX_GRID:
        g = BoundaryGrid(MAX_GRID)
    z = g.points(r)
    if getattr(f, "log_abs", None) is not None:
        logs = log_modulus(f, z)
        bad = ~np.isfinite(logs)
    else:
        vals = np.abs(np.asarray(f(z), dtype=complex))
        bad = ~(vals >= 1e-300)
        with np.errstate(divide="ignore"):
            logs = np.log(vals)
    if bad.any():
        j = int(np.argmax(bad))
        raise ZeroOnCircleError(
            f"|f| vanishes numerically at r={r!r}, angle {g.angles[j]!r}; perturb the radius"
        )
    return float(logs.mean())


@dataclass(frozen=True)
class MassEstimate:
    value: float
    radii: tuple[float, ...]
    means: tuple[float, ...]
    reliable: bool

    def __float__(self):
        return self.value


DEFAULT_MASS_LADDER = RadialLadder.reaching(1e-4)


def singular_mass_estimate(
    f,
    ladder: RadialLadder = DEFAULT_MASS_LADDER,
    grid: BoundaryGrid = BoundaryGrid(1 << 14),
    fit_points: int = 3,
) -> MassEstimate:
    """Singular mass of an inner candidate from the limit of its Jensen means.

    For ``f = B S`` the means increase to ``-sigma(T)``; the limit is taken
    by a least-squares line in ``1 - r`` through the last rungs.
    """
    radii = tuple(ladder)
    means = tuple(jensen_mean(f, r, grid) for r in radii)
    diffs = np.diff(means)
    scale = 1.0 + np.abs(np.asarray(means[1:]))
    reliable = bool(np.all(diffs >= -1e-8 * scale))
    m = min(fit_points, len(radii))
    if m >= 2:
        x = 1.0 - np.asarray(radii[-m:])
        y = np.asarray(means[-m:])
        slope, intercept = np.polyfit(x, y, 1)
        limit = float(intercept)
    else:
        limit = means[-1]
    return MassEstimate(-limit, radii, means, reliable)


@dataclass(frozen=True)
class FrostmanShift:
    """``z -> mobius_eval(a, h(z))``."""

    a: complex
    h: object

    def __call__(self, z):
        return mobius_eval(self.a, self.h(z))

    def log_abs(self, z):
        if self.a == 0:
            return log_modulus(self.h, z)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self(z)))

    def boundary(self, t):
        return mobius_eval(self.a, self.h.boundary(t))

    def atom_angles(self):
        getter = getattr(self.h, "atom_angles", None)
        return getter() if getter else ()


@dataclass(frozen=True)
class ScanEntry:
    a: complex
    estimate: float
    reliable: bool
    flagged: bool


def frostman_scan(
    h,
    a_grid: Iterable[complex],
    ladder: RadialLadder = DEFAULT_MASS_LADDER,
    grid: BoundaryGrid = BoundaryGrid(1 << 14),
    threshold: float = 5e-2,
) -> list[ScanEntry]:
    """Singular mass of ``phi_a o h`` for each sampled ``a``.

    Entries whose estimate exceeds ``threshold`` are flagged as candidates
    for the exceptional set; nothing is concluded about density.
    """
    if isinstance(h, InnerFunction) and h.is_constant:
        raise ValueError("frostman_scan needs a nonconstant inner function")

    def one(a):
        est = singular_mass_estimate(FrostmanShift(complex(a), h), ladder, grid)
        return ScanEntry(complex(a), est.value, est.reliable, est.value > threshold)

    return ordered_map(one, list(a_grid))
