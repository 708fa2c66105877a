"""Small combinators over function handles.

Each wrapper forwards the optional ``boundary`` / ``log_abs`` /
``atom_angles`` hooks when its operands provide them, so exact radial limits
survive products, quotients and compositions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .disk import atom_angles_of, log_modulus
from .series import TaylorSeries, mul_truncated, taylor_from_samples, to_taylor


def _has(f, name):
    return getattr(f, name, None) is not None


def boundary_values(f, w):
    """``f`` at points ``w``, using radial limits for those on the circle."""
    w = np.asarray(w, dtype=complex)
    on = np.abs(np.abs(w) - 1.0) <= 1e-9
    if not _has(f, "boundary") or not on.any():
        return f(w)
    out = np.empty(w.shape, dtype=complex)
    out[on] = f.boundary(np.angle(w[on]))
    if not on.all():
        out[~on] = f(w[~on])
    return out


class _Hooks:
    """Expose ``boundary`` only when it can be computed."""

    def __getattr__(self, name):
        if name == "boundary" and self._boundary_ok():
            return self._boundary
        raise AttributeError(name)

    def _boundary_ok(self):
        return False


@dataclass(frozen=True)
class Scaled(_Hooks):
    factor: complex
    f: object

    def __call__(self, z):
        return self.factor * self.f(z)

    def _boundary_ok(self):
        return _has(self.f, "boundary")

    def _boundary(self, t):
        return self.factor * self.f.boundary(t)

    def log_abs(self, z):
        return np.log(abs(self.factor)) + log_modulus(self.f, z)

    def taylor(self, K):
        return to_taylor(self.f, K) * self.factor

    def atom_angles(self):
        return atom_angles_of(self.f)


@dataclass(frozen=True)
class Product(_Hooks):
    f: object
    g: object

    def __call__(self, z):
        return self.f(z) * self.g(z)

    def _boundary_ok(self):
        return _has(self.f, "boundary") and _has(self.g, "boundary")

    def _boundary(self, t):
        return self.f.boundary(t) * self.g.boundary(t)

    def log_abs(self, z):
        return log_modulus(self.f, z) + log_modulus(self.g, z)

    def taylor(self, K):
        return TaylorSeries(mul_truncated(to_taylor(self.f, K).padded(K), to_taylor(self.g, K).padded(K), K))

    def atom_angles(self):
        return atom_angles_of(self.f) + atom_angles_of(self.g)


@dataclass(frozen=True)
class Quotient(_Hooks):
    """Pointwise ``f / g``; holomorphic only where ``g`` divides ``f``."""

    f: object
    g: object

    def __call__(self, z):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.f(z) / self.g(z)

    def _boundary_ok(self):
        return _has(self.f, "boundary") and _has(self.g, "boundary")

    def _boundary(self, t):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.f.boundary(t) / self.g.boundary(t)

    def log_abs(self, z):
        return log_modulus(self.f, z) - log_modulus(self.g, z)

    def atom_angles(self):
        return atom_angles_of(self.f) + atom_angles_of(self.g)


@dataclass(frozen=True)
class Reciprocal:
    """``1 / f``; used for functions outside the Smirnov class such as ``1/S``."""

    f: object

    def __call__(self, z):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return 1.0 / self.f(z)

    def log_abs(self, z):
        return -log_modulus(self.f, z)

    def atom_angles(self):
        return atom_angles_of(self.f)


@dataclass(frozen=True)
class Composition(_Hooks):
    """``outer o inner``.

    When both operands know their radial limits and ``inner`` is a
    nonconstant inner function, the boundary values are ``outer* o inner*``.
    """

    outer: object
    inner: object

    def __call__(self, z):
        return self.outer(self.inner(z))

    def _boundary_ok(self):
        return _has(self.inner, "boundary")

    def _boundary(self, t):
        return boundary_values(self.outer, self.inner.boundary(t))

    def atom_angles(self):
        angles = list(atom_angles_of(self.inner))
        outer_atoms = atom_angles_of(self.outer)
        if outer_atoms:
            from .blaschke import FiniteBlaschke, boundary_preimages

            inner = self.inner
            if isinstance(inner, FiniteBlaschke):
                for s in outer_atoms:
                    angles.extend(float(np.angle(p)) for p in boundary_preimages(inner, np.exp(1j * s)))
        return tuple(angles)

    def taylor(self, K):
        if isinstance(self.outer, TaylorSeries):
            return self.outer.compose(to_taylor(self.inner, K), K)
        return taylor_from_samples(self, K)


@dataclass(frozen=True)
class RationalFunction:
    """``num(z) / den(z)`` with ascending coefficient arrays."""

    num: tuple
    den: tuple

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(complex(c) for c in self.num))
        object.__setattr__(self, "den", tuple(complex(c) for c in self.den))
        if not self.den or all(c == 0 for c in self.den):
            raise ValueError("rational function needs a nonzero denominator")
        roots = P.polyroots(np.array(self.den)) if len(self.den) > 1 else np.array([])
        if np.any(np.abs(roots) <= 1.0):
            raise ValueError("denominator must not vanish on the closed disk")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return P.polyval(z, np.array(self.num)) / P.polyval(z, np.array(self.den))

    def boundary(self, t):
        return self(np.exp(1j * np.asarray(t, dtype=float)))

    def taylor(self, K):
        # long division of power series num / den
        den = np.zeros(K + 1, dtype=complex)
        num = np.zeros(K + 1, dtype=complex)
        d = np.array(self.den)[: K + 1]
        n = np.array(self.num)[: K + 1]
        den[: len(d)] = d
        num[: len(n)] = n
        out = np.zeros(K + 1, dtype=complex)
        for k in range(K + 1):
            out[k] = (num[k] - np.dot(den[1 : k + 1], out[k - 1 :: -1][:k])) / den[0]
        return TaylorSeries(out)
