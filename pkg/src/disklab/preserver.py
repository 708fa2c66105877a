"""Analysis of linear maps through their monomial action ``h_k = T(z^k)``.

The pipeline follows the constructive argument: every ``h_k`` must be inner,
the boundary traces must satisfy ``h_k* conj(h_{k-1}*) = h_1* conj(h_0*)``,
and then ``psi = h_0``, ``phi = h_1 / h_0`` must reproduce every entry as
``psi * phi**k``.  A constant unimodular ``phi`` is the rank-one case
``T f = f(alpha) psi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._parallel import ordered_map
from .blaschke import FiniteBlaschke
from .compose import WeightedCompositionOperator, apply
from .config import BOUNDARY_RADIUS, DEFAULT_TOLERANCES, Tolerances
from .disk import (
    BoundaryGrid,
    arc_mask,
    as_unimodular,
    atom_angles_of,
    boundary_trace,
    innerness_residual,
    probe_points,
)
from .handles import Quotient, Scaled
from .inner import InnerFunction, NotDivisibleError, SingularInner, inner_quotient
from .outer import factorize
from .series import TaylorSeries

WEIGHTED_COMPOSITION = "WeightedComposition"
RANK_ONE = "RankOne"
NOT_PRESERVER = "NotPreserver"

_CANONICAL = (InnerFunction, FiniteBlaschke, SingularInner)


@dataclass(frozen=True)
class MonomialAction:
    """Entries ``h_0 .. h_K`` with ``h_k = T(z^k)``; ``K >= 2``."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        if len(entries) < 3:
            raise ValueError(f"a monomial action needs K >= 2 (got {len(entries)} entries)")
        for k, h in enumerate(entries):
            if not callable(h):
                raise TypeError(f"entry {k} is not callable")
        object.__setattr__(self, "entries", entries)

    @property
    def K(self) -> int:
        return len(self.entries) - 1

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    @property
    def canonical(self) -> bool:
        return all(isinstance(h, _CANONICAL) for h in self.entries)

    def replace(self, k: int, h) -> "MonomialAction":
        e = list(self.entries)
        e[k] = h
        return MonomialAction(tuple(e))


def synthesize(phi, psi, K: int) -> MonomialAction:
    """The action ``h_k = psi * phi**k`` of a weighted composition operator."""
    if K < 2:
        raise ValueError("K must be >= 2")
    phi, psi = InnerFunction.lift(phi), InnerFunction.lift(psi)
    return MonomialAction(tuple(psi * phi**k for k in range(K + 1)))


@dataclass(frozen=True)
class PhiAImage:
    value: complex | np.ndarray
    tail_bound: float
    loose: bool


def phi_a_image(action: MonomialAction, a: complex, z, tol: float = 1e-6) -> PhiAImage:
    """Truncated ``T(phi_a)(z) = sum_k (a conj(a)^k h_k(z) - conj(a)^k h_{k+1}(z))``.

    Terms ``k = 0..K-1`` are kept; the dropped tail is bounded by
    ``|a|^K / (1 - |a|)`` and flagged ``loose`` when that exceeds ``tol``.
    """
    a = complex(a)
    if not abs(a) < 1:
        raise ValueError("a must lie in the open disk")
    z = np.asarray(z, dtype=complex)
    ac = a.conjugate()
    vals = [np.asarray(h(z), dtype=complex) for h in action.entries]
    total = np.zeros(z.shape, dtype=complex)
    for k in range(action.K):
        total = total + ac**k * (a * vals[k] - vals[k + 1])
    bound = abs(a) ** action.K / (1.0 - abs(a))
    value = complex(total) if total.ndim == 0 else total
    return PhiAImage(value, bound, bound > tol)


def _traces(action: MonomialAction, grid: BoundaryGrid, r: float):
    return [boundary_trace(h, grid, r) for h in action.entries]


def _relation_mask(action: MonomialAction, grid: BoundaryGrid, arc: float) -> np.ndarray:
    atoms = tuple(t for h in action.entries for t in atom_angles_of(h))
    keep = arc_mask(grid.angles, atoms, arc)
    if not keep.any():
        raise ValueError("every grid point lies in an excluded atom arc")
    return keep


def relation_check(
    action: MonomialAction,
    grid: BoundaryGrid = BoundaryGrid(1 << 12),
    r: float = BOUNDARY_RADIUS,
    arc: float = DEFAULT_TOLERANCES.atom_arc,
    stability: float = 1e-2,
) -> float:
    """``max |h_k* conj(h_{k-1}*) - h_1* conj(h_0*)|`` over ``k = 2..K`` and the grid.

    Traces are exact radial limits when the entries provide them, else
    samples at radius ``r``.  Arcs of width ``arc`` around atoms are skipped.
    """
    res = [innerness_residual(h, grid, r, arc) for h in action.entries]
    bad = [k for k, v in enumerate(res) if not v < stability]
    if bad:
        raise ValueError(
            f"boundary traces of entries {bad} are not stable at r={r!r} "
            f"(innerness residual >= {stability}); increase r or the grid size"
        )
    keep = _relation_mask(action, grid, arc)
    t = [v[keep] for v in _traces(action, grid, r)]
    base = t[1] * np.conj(t[0])
    return float(max(np.abs(t[k] * np.conj(t[k - 1]) - base).max() for k in range(2, action.K + 1)))


def two_index_residual(
    action: MonomialAction,
    grid: BoundaryGrid = BoundaryGrid(1 << 12),
    r: float = BOUNDARY_RADIUS,
    arc: float = DEFAULT_TOLERANCES.atom_arc,
) -> float:
    """``max |h_{k-1} conj h_{l-1} + h_{k+1} conj h_{l+1} - 2 h_k conj h_l|`` on the traces."""
    keep = _relation_mask(action, grid, arc)
    t = [v[keep] for v in _traces(action, grid, r)]
    K = action.K
    worst = 0.0
    for k in range(1, K):
        for l in range(1, K):
            d = t[k - 1] * np.conj(t[l - 1]) + t[k + 1] * np.conj(t[l + 1]) - 2 * t[k] * np.conj(t[l])
            worst = max(worst, float(np.abs(d).max()))
    return worst


@dataclass
class PreserverReport:
    classification: str
    psi: object = None
    phi: object = None
    alpha: complex | None = None
    innerness_residuals: tuple[float, ...] = ()
    relation_residual: float | None = None
    reconstruction_residual: float | None = None
    failed_stage: str | None = None
    message: str = ""
    path: str | None = None
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    @property
    def certified(self) -> bool:
        return self.classification != NOT_PRESERVER

    def operator(self) -> WeightedCompositionOperator:
        if not self.certified:
            raise ValueError("no operator: the action was refuted")
        return WeightedCompositionOperator(self.psi, self.phi)

    def to_dict(self) -> dict:
        from .descriptors import describe

        def desc(h):
            if h is None:
                return None
            try:
                return describe(h)
            except TypeError:
                return {"type": "opaque", "repr": repr(h)}

        return {
            "classification": self.classification,
            "failed_stage": self.failed_stage,
            "message": self.message,
            "path": self.path,
            "psi": desc(self.psi),
            "phi": desc(self.phi),
            "alpha": None if self.alpha is None else self.alpha,
            "innerness_residuals": list(self.innerness_residuals),
            "relation_residual": self.relation_residual,
            "reconstruction_residual": self.reconstruction_residual,
            "tolerances": {k: getattr(self.tolerances, k) for k in self.tolerances.names()},
        }


def _numeric_probe(h0, min_modulus: float):
    """Probe points where ``|h0|`` exceeds ``min_modulus``; enlarged once if too few."""
    for pts in (probe_points(64), probe_points(1024, radii=tuple(np.linspace(0.05, 0.97, 16)))):
        ok = np.abs(h0(pts)) > min_modulus
        if ok.sum() >= 16:
            return pts[ok]
    return None


def reconstruct(
    action: MonomialAction,
    tol: Tolerances = DEFAULT_TOLERANCES,
    grid: BoundaryGrid = BoundaryGrid(1 << 12),
    r: float = BOUNDARY_RADIUS,
) -> PreserverReport:
    """Run the staged analysis and classify the action."""
    report = PreserverReport(NOT_PRESERVER, tolerances=tol)

    def fail(stage, msg):
        report.failed_stage = stage
        report.message = msg
        return report

    # stage 1: every entry inner
    res = tuple(ordered_map(lambda h: innerness_residual(h, grid, r, tol.atom_arc), action.entries))
    report.innerness_residuals = res
    bad = [k for k, v in enumerate(res) if not v < tol.innerness]
    if bad:
        k = bad[0]
        what = "T(1) = h_0 is not inner" if k == 0 else f"h_{k} is not inner"
        return fail("innerness", f"{what}: residual {res[k]:.3e} >= {tol.innerness:g}")

    # stage 2: boundary relation
    rel = relation_check(action, grid, r, tol.atom_arc)
    report.relation_residual = rel
    if not rel < tol.relation:
        return fail("relation", f"relation residual {rel:.3e} >= {tol.relation:g}")

    # stage 3: phi = h_1 / h_0
    h0, h1 = action[0], action[1]
    if isinstance(h0, _CANONICAL) and isinstance(h1, _CANONICAL):
        report.path = "canonical"
        psi = InnerFunction.lift(h0)
        try:
            phi = inner_quotient(psi, h1, tol.zero_match, tol.atom_angle, tol.mass_match)
        except (NotDivisibleError, ArithmeticError) as exc:
            return fail("quotient", f"h_0 does not divide h_1: {exc}")
        pts = probe_points(64)
        rec_tol = tol.reconstruction_canonical
    else:
        report.path = "numeric"
        psi, phi = h0, Quotient(h1, h0)
        pts = _numeric_probe(h0, tol.probe_modulus)
        if pts is None:
            return fail("quotient", f"|h_0| <= {tol.probe_modulus:g} on the whole enlarged probe set")
        if np.abs(phi(pts)).max() > 1.0 + tol.reconstruction_numeric:
            return fail("quotient", "h_1 / h_0 is not bounded by 1 on the probe set")
        rec_tol = tol.reconstruction_numeric
    report.psi, report.phi = psi, phi

    # stage 4: h_k = psi * phi**k
    pv = np.asarray(psi(pts), dtype=complex)
    fv = np.asarray(phi(pts), dtype=complex)
    rec = max(float(np.abs(np.asarray(h(pts)) - pv * fv**k).max()) for k, h in enumerate(action.entries))
    report.reconstruction_residual = rec
    if not rec <= rec_tol:
        return fail("reconstruction", f"reconstruction residual {rec:.3e} > {rec_tol:g}")

    # stage 5: classify
    if isinstance(phi, InnerFunction) and phi.is_constant:
        report.classification = RANK_ONE
        report.alpha = phi.constant
        return report
    spread = float(np.mean(np.abs(fv - fv.mean()) ** 2))
    if spread < tol.constancy:
        mean = complex(fv.mean())
        if abs(abs(mean) - 1.0) < tol.constancy:
            report.classification = RANK_ONE
            report.alpha = as_unimodular(mean, tol.constancy)
            return report
        return fail("classification", f"phi is constant {mean!r} but not unimodular")
    report.classification = WEIGHTED_COMPOSITION
    return report


def _horner(coeffs, x: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def rank_one_apply(alpha: complex, psi, f: TaylorSeries):
    """``z -> f(alpha) psi(z)`` for a polynomial ``f``."""
    alpha = as_unimodular(alpha)
    return Scaled(_horner(f.coeffs, alpha), psi)


@dataclass(frozen=True)
class CorollaryReport:
    direction: str
    residual: float
    image_residual: float


def corollary_check(
    T: WeightedCompositionOperator,
    f,
    direction: str = "forward",
    grid: BoundaryGrid = BoundaryGrid(1 << 12),
    r: float = BOUNDARY_RADIUS,
    arc: float = DEFAULT_TOLERANCES.atom_arc,
) -> CorollaryReport:
    """Innerness of ``T f`` (forward) or of ``f`` seen through ``T f / psi`` (backward)."""
    image = apply(T, f)
    img_res = innerness_residual(image, grid, r, arc)
    if direction == "forward":
        return CorollaryReport(direction, img_res, img_res)
    if direction == "backward":
        return CorollaryReport(direction, innerness_residual(Quotient(image, T.psi), grid, r, arc), img_res)
    raise ValueError("direction must be 'forward' or 'backward'")


@dataclass(frozen=True)
class SurjectivityReport:
    psi_deviation: float
    inner_part_deviation: float | None
    outer_image: bool | None
    separated: bool | None
    automorphism: bool | None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def surjectivity_probe(
    T: WeightedCompositionOperator,
    f=None,
    point_pair: tuple[complex, complex] | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
    k_max: int = 8,
) -> SurjectivityReport:
    """Witness-based checks of the outer-image and separation consequences.

    ``psi_deviation`` is ``max |psi - psi(0)|`` on the probe set.  With a
    witness ``f``, ``T f`` is factorized and ``inner_part_deviation`` is the
    spread of its inner part over the probe set.  With a point pair, the pair
    is separated when some ``T(z^k)``, ``k <= k_max``, or ``T f`` differs there.
    """
    pts = probe_points(64)
    psi_vals = np.asarray(T.psi(pts), dtype=complex)
    psi0 = complex(np.asarray(T.psi(np.zeros(1, dtype=complex)))[0])
    psi_dev = float(np.abs(psi_vals - psi0).max())

    inner_dev = outer = None
    if f is not None:
        fac = factorize(apply(T, f))
        iv = fac.inner(pts)
        i0 = complex(fac.inner(np.zeros(1, dtype=complex))[0])
        inner_dev = float(np.abs(iv - i0).max()) if np.all(np.isfinite(iv)) else math.inf
        outer = inner_dev < tol.reconstruction_numeric

    separated = None
    if point_pair is not None:
        z = np.asarray(point_pair, dtype=complex)
        images = [apply(T, TaylorSeries.monomial(k)) for k in range(k_max + 1)]
        if f is not None:
            images.append(apply(T, f))
        separated = any(abs(complex(v[0]) - complex(v[1])) > tol.preimage_residual for v in (g(z) for g in images))

    automorphism = None
    if isinstance(T.phi, (InnerFunction, FiniteBlaschke)):
        phi = InnerFunction.lift(T.phi)
        automorphism = len(phi.zeros) == 1 and not phi.atoms
    return SurjectivityReport(psi_dev, inner_dev, outer, separated, automorphism)
