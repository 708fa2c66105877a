"""Finite Blaschke products."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .disk import as_disk_point, as_unimodular, random_disk_points
from .series import TaylorSeries, mul_truncated


class PreimageError(RuntimeError):
    """Root extraction for ``B(z) = w`` did not produce ``deg B`` accepted roots."""


def _factor(a: complex, z: np.ndarray) -> np.ndarray:
    # a zero at the origin contributes the factor z (limit a -> 0)
    if a == 0:
        return z
    return (abs(a) / a) * (a - z) / (1.0 - np.conj(a) * z)


def _factor_derivative(a: complex, z: np.ndarray) -> np.ndarray:
    if a == 0:
        return np.ones_like(z)
    return (abs(a) / a) * (abs(a) ** 2 - 1.0) / (1.0 - np.conj(a) * z) ** 2


@dataclass(frozen=True)
class FiniteBlaschke:
    """``c * prod (|a|/a) (a - z) / (1 - conj(a) z)`` over a finite zero multiset.

    Zeros are stored as a tuple; multiplicity is expressed by repetition.
    """

    constant: complex = 1.0
    zeros: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constant", as_unimodular(self.constant))
        object.__setattr__(self, "zeros", tuple(as_disk_point(a) for a in self.zeros))

    @classmethod
    def mobius(cls, a: complex) -> "FiniteBlaschke":
        """The involution ``(a - z) / (1 - conj(a) z)`` in canonical form."""
        a = as_disk_point(a)
        c = a / abs(a) if a != 0 else -1.0
        return cls(c, (a,))

    @classmethod
    def monomial(cls, n: int, constant: complex = 1.0) -> "FiniteBlaschke":
        return cls(constant, (0j,) * n)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.constant, dtype=complex)
        for a in self.zeros:
            out = out * _factor(a, z)
        return out

    def boundary(self, t):
        return self(np.exp(1j * np.asarray(t, dtype=float)))

    def log_abs(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape)
        with np.errstate(divide="ignore"):
            for a in self.zeros:
                out = out + np.log(np.abs(_factor(a, z)))
        return out

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        factors = [_factor(a, z) for a in self.zeros]
        total = np.zeros(z.shape, dtype=complex)
        for i, a in enumerate(self.zeros):
            term = _factor_derivative(a, z)
            for j, f in enumerate(factors):
                if j != i:
                    term = term * f
            total = total + term
        return self.constant * total

    def atom_angles(self):
        return ()

    def __mul__(self, other):
        if isinstance(other, FiniteBlaschke):
            return blaschke_product(self, other)
        return NotImplemented

    def compose(self, other: "FiniteBlaschke") -> "FiniteBlaschke":
        return blaschke_compose(self, other)

    def preimages(self, w: complex) -> list[complex]:
        return blaschke_preimages(self, w)

    def taylor(self, K: int) -> TaylorSeries:
        return blaschke_taylor(self, K)

    def polynomials(self) -> tuple[np.ndarray, np.ndarray]:
        """Ascending coefficients ``(N, D)`` with ``B = N / D``."""
        num = np.array([self.constant], dtype=complex)
        den = np.array([1.0], dtype=complex)
        for a in self.zeros:
            if a == 0:
                num = P.polymul(num, [0.0, 1.0])
            else:
                eta = abs(a) / a
                num = P.polymul(num, [eta * a, -eta])
                den = P.polymul(den, [1.0, -np.conj(a)])
        return num, den


def blaschke_eval(B: FiniteBlaschke, z):
    return B(z)


def blaschke_product(B1: FiniteBlaschke, B2: FiniteBlaschke) -> FiniteBlaschke:
    return FiniteBlaschke(B1.constant * B2.constant, B1.zeros + B2.zeros)


def _roots_of_level(B: FiniteBlaschke, w: complex) -> np.ndarray:
    num, den = B.polynomials()
    poly = P.polysub(num, w * den)
    # leading coefficient has modulus 1 - |w| prod|a| > 0 for |w| <= 1
    return P.polyroots(poly)


def _polish(B: FiniteBlaschke, w: complex, z: complex, steps: int = 8) -> complex:
    best = z
    best_res = abs(B(np.array([z]))[0] - w)
    for _ in range(steps):
        if best_res == 0.0:
            break
        zz = np.array([best])
        d = B.derivative(zz)[0]
        if d == 0:
            break
        cand = best - (B(zz)[0] - w) / d
        res = abs(B(np.array([cand]))[0] - w)
        if not res < best_res:
            break
        best, best_res = cand, res
    return best


def blaschke_preimages(B: FiniteBlaschke, w: complex, tol: float = 1e-9) -> list[complex]:
    """All ``deg B`` solutions of ``B(z) = w`` in the disk, with multiplicity."""
    if B.degree == 0:
        raise ValueError("preimages of a constant Blaschke product are undefined")
    w = complex(w)
    if not abs(w) < 1:
        raise ValueError(f"level {w} must lie in the open disk")
    raw = _roots_of_level(B, w)
    roots = [_polish(B, w, complex(z)) for z in raw]
    inside = [z for z in roots if abs(z) < 1.0]
    if len(inside) != B.degree:
        raise PreimageError(
            f"found {len(inside)} preimages of {w} in the disk, expected {B.degree}"
        )
    res = np.abs(B(np.array(inside)) - w)
    if res.max() >= tol:
        raise PreimageError(f"preimage residual {res.max():.3e} for level {w} exceeds {tol}")
    return inside


def boundary_preimages(B: FiniteBlaschke, w: complex) -> list[complex]:
    """Solutions of ``B(z) = w`` for unimodular ``w``; all lie on the circle."""
    if B.degree == 0:
        return []
    raw = _roots_of_level(B, complex(w))
    return [complex(z) / abs(z) for z in raw]


def blaschke_compose(B1: FiniteBlaschke, B2: FiniteBlaschke, seed: int = 0) -> FiniteBlaschke:
    """``B1 o B2`` in canonical form: zeros are the B2-preimages of zeros of B1."""
    if B2.degree == 0:
        raise ValueError("inner function of a composition must be nonconstant")
    zeros: list[complex] = []
    for a in B1.zeros:
        try:
            zeros.extend(blaschke_preimages(B2, a))
        except PreimageError as exc:
            raise PreimageError(f"while pulling back zero {a}: {exc}") from exc
    bare = FiniteBlaschke(1.0, tuple(zeros))
    # fix the unimodular constant where the bare product is far from zero
    probes = np.array([0.0, 0.5, -0.5, 0.5j, -0.5j, 0.8, -0.8j], dtype=complex)
    vals = bare(probes)
    k = int(np.argmax(np.abs(vals)))
    c = B1(B2(probes[k : k + 1]))[0] / vals[k]
    if abs(abs(c) - 1.0) > 1e-8:
        raise PreimageError(f"composition constant {c} is not unimodular")
    result = FiniteBlaschke(c / abs(c), tuple(zeros))
    check = random_disk_points(np.random.default_rng(seed), 32)
    err = np.abs(result(check) - B1(B2(check))).max()
    if err > 1e-9:
        raise PreimageError(f"composed representation deviates by {err:.3e}")
    return result


def blaschke_taylor(B: FiniteBlaschke, K: int) -> TaylorSeries:
    """First ``K + 1`` Taylor coefficients, multiplying the factor series."""
    if K < 0:
        raise ValueError("truncation order must be >= 0")
    acc = np.zeros(K + 1, dtype=complex)
    acc[0] = B.constant
    k = np.arange(1, K + 1)
    for a in B.zeros:
        f = np.zeros(K + 1, dtype=complex)
        if a == 0:
            if K >= 1:
                f[1] = 1.0
        else:
            eta = abs(a) / a
            ab = np.conj(a)
            # (a - z)/(1 - conj(a) z) = a + sum_{k>=1} -(1-|a|^2) conj(a)^{k-1} z^k
            f[0] = a
            f[1:] = -(1.0 - abs(a) ** 2) * ab ** (k - 1)
            f *= eta
        acc = mul_truncated(acc, f, K)
    return TaylorSeries(acc)
