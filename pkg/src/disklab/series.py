"""Truncated power series at the origin."""

from __future__ import annotations

import math
from numbers import Number

import numpy as np
from numpy.polynomial import polynomial as P


class TaylorSeries:
    """Coefficients ``a_0 .. a_K`` of a (truncated) power series.

    Evaluation treats the series as the polynomial it spells out.  Trailing
    coefficients below 1e-300 are trimmed, keeping at least ``a_0``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel().copy()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        nz = np.nonzero(np.abs(c) >= 1e-300)[0]
        c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def monomial(cls, n: int, scale: complex = 1.0) -> "TaylorSeries":
        c = np.zeros(n + 1, dtype=complex)
        c[n] = scale
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"TaylorSeries(order={self.order})"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return P.polyval(z, self.coeffs)

    def boundary(self, t):
        return self(np.exp(1j * np.asarray(t, dtype=float)))

    def padded(self, K: int) -> np.ndarray:
        out = np.zeros(K + 1, dtype=complex)
        m = min(K + 1, len(self.coeffs))
        out[:m] = self.coeffs[:m]
        return out

    def taylor(self, K: int) -> "TaylorSeries":
        return TaylorSeries(self.padded(K))

    def truncate(self, K: int) -> "TaylorSeries":
        return TaylorSeries(self.coeffs[: K + 1])

    def derivative(self) -> "TaylorSeries":
        return TaylorSeries(P.polyder(self.coeffs)) if self.order else TaylorSeries([0])

    def __add__(self, other):
        if isinstance(other, Number):
            other = TaylorSeries([other])
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        return TaylorSeries(P.polyadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries(-self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Number):
            other = TaylorSeries([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Number):
            return TaylorSeries(self.coeffs * other)
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        return TaylorSeries(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def mul_truncated(self, other: "TaylorSeries", K: int) -> "TaylorSeries":
        return TaylorSeries(mul_truncated(self.coeffs, other.coeffs, K))

    def compose(self, inner: "TaylorSeries", K: int) -> "TaylorSeries":
        """Coefficients of ``self(inner(z))`` up to order ``K`` (Horner in series
        arithmetic).  Exact up to order K because ``self`` is a polynomial."""
        g = inner.padded(K)
        acc = np.zeros(K + 1, dtype=complex)
        for c in self.coeffs[::-1]:
            acc = mul_truncated(acc, g, K)
            acc[0] += c
        return TaylorSeries(acc)

    def tail_mass(self, weight: int = 0, window: int = 16) -> float:
        """Geometric extrapolation of ``sum_{n > K} n**weight |a_n|**2``."""
        return tail_mass(self.coeffs, weight=weight, window=window)


def mul_truncated(a: np.ndarray, b: np.ndarray, K: int) -> np.ndarray:
    out = np.zeros(K + 1, dtype=complex)
    prod = np.convolve(a[: K + 1], b[: K + 1])[: K + 1]
    out[: len(prod)] = prod
    return out


def tail_mass(coeffs: np.ndarray, weight: int = 0, window: int = 16) -> float:
    """Estimate the discarded mass beyond the last stored coefficient.

    Fits ``|a_n| ~ C q**n`` by least squares on ``log |a_n|`` over the last
    ``window`` nonzero coefficients and extrapolates from the envelope of
    that window.  A fitted ratio ``q >= 1`` means the series has not started
    converging and ``inf`` is returned.
    """
    c = np.abs(np.asarray(coeffs))
    K = len(c) - 1
    if K < 2:
        return 0.0
    m = min(window, K)
    n_idx = np.arange(K - m + 1, K + 1)
    w = c[K - m + 1 :]
    nz = w > 0
    if nz.sum() == 0:
        return 0.0
    if nz.sum() < 2:
        return math.inf
    slope = np.polyfit(n_idx[nz], np.log(w[nz]), 1)[0]
    q = math.exp(slope)
    if q >= 1.0:
        return math.inf
    tail = float(np.max(w[nz] * q ** (K - n_idx[nz])))
    q2 = q * q
    total = 0.0
    term = tail * tail
    n = K
    # sum_{j>=1} (K+j)^w |a_K|^2 q^{2j}, summed until negligible
    for _ in range(100000):
        n += 1
        term *= q2
        contrib = term * (n ** weight)
        total += contrib
        if contrib < 1e-18 * max(total, 1e-300):
            break
    return float(total)


def series_exp(c, K: int) -> np.ndarray:
    """Coefficients of ``exp(F)`` up to order K, from those of ``F``.

    Uses ``G' = F' G``, i.e. ``n g_n = sum_{j=1}^n j f_j g_{n-j}``.
    """
    f = np.zeros(K + 1, dtype=complex)
    c = np.asarray(c, dtype=complex)
    m = min(K + 1, len(c))
    f[:m] = c[:m]
    g = np.zeros(K + 1, dtype=complex)
    g[0] = np.exp(f[0])
    jf = np.arange(K + 1) * f
    for n in range(1, K + 1):
        g[n] = np.dot(jf[1 : n + 1], g[n - 1 :: -1][:n]) / n
    return g


def taylor_from_samples(f, K: int, rho: float = 0.95, n: int | None = None) -> TaylorSeries:
    """Cauchy-integral coefficients from an FFT of samples on ``|z| = rho``.

    Roundoff in coefficient k is amplified by ``rho**-k``; pick ``rho``
    accordingly.
    """
    if n is None:
        n = 1 << max(8, int(math.ceil(math.log2(4 * (K + 1)))))
    t = 2.0 * math.pi * np.arange(n) / n
    vals = np.asarray(f(rho * np.exp(1j * t)), dtype=complex)
    c = np.fft.fft(vals)[: K + 1] / n
    return TaylorSeries(c / rho ** np.arange(K + 1))


def to_taylor(f, K: int) -> TaylorSeries:
    """Taylor data of any handle: its own ``taylor`` hook, else Cauchy sampling."""
    if isinstance(f, TaylorSeries):
        return f.taylor(K)
    hook = getattr(f, "taylor", None)
    if hook is not None:
        return hook(K)
    return taylor_from_samples(f, K)
