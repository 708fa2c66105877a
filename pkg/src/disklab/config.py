"""Numerical settings and classification thresholds.

Everything tunable lives here so that CLI ``--tol name=value`` overrides and
library callers see the same defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

BOUNDARY_RADIUS = 1.0 - 1e-6
TEST_RADIUS = 1.0 - 1e-4
DEFAULT_GRID = 4096
DEFAULT_TRUNCATION = 200


@dataclass(frozen=True)
class Tolerances:
    # preserver pipeline
    innerness: float = 5e-4
    relation: float = 1e-3
    reconstruction_canonical: float = 1e-6
    reconstruction_numeric: float = 1e-4
    constancy: float = 1e-8
    probe_modulus: float = 0.1
    # canonical data comparisons
    zero_match: float = 1e-10
    mass_match: float = 1e-12
    atom_angle: float = 1e-12
    # boundary sampling
    atom_arc: float = 1e-2
    # root finding
    preimage_residual: float = 1e-9
    # diagnostics
    frostman: float = 5e-2
    tail_percentile: float = 99.0

    def override(self, **values: float) -> "Tolerances":
        return replace(self, **values)

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def with_overrides(self, items: list[str] | None) -> "Tolerances":
        """Apply ``name=value`` strings, as accepted on the command line."""
        if not items:
            return self
        values = {}
        known = set(self.names())
        for item in items:
            name, sep, raw = item.partition("=")
            name = name.strip().replace("-", "_")
            if not sep or name not in known:
                raise ValueError(
                    f"bad tolerance override {item!r}; known names: {', '.join(sorted(known))}"
                )
            values[name] = float(raw)
        return replace(self, **values)


DEFAULT_TOLERANCES = Tolerances()
