"""JSON descriptors for functions, operators and monomial actions.

Every descriptor is an object with a ``"type"`` tag.  Inner functions are
written as ``{"type": "inner", "blaschke": {...}, "atoms": [[t, mass], ...]}``
and outer functions as ``{"type": "outer", "n": n, "logG": [...]}``; flat
``constant``/``zeros`` fields and a ``modulus`` list (or constant) are also
accepted on input.  Complex numbers are
``[re, im]`` pairs (a bare real number is also accepted on input).  Errors
carry a JSON-path style position such as ``$.entries[2].zeros[0]``.
"""

from __future__ import annotations

import json

import numpy as np

from .blaschke import FiniteBlaschke
from .compose import WeightedCompositionOperator, WeightedImage
from .handles import Quotient, RationalFunction, Scaled
from .inner import InnerFunction, SingularInner
from .jsonio import dumps
from .outer import OuterFunction
from .preserver import MonomialAction
from .series import TaylorSeries

FUNCTION_TYPES = ("blaschke", "inner", "outer", "taylor", "rational", "wco-image", "scaled", "quotient")


class DescriptorError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


def _complex(v, path: str) -> complex:
    if isinstance(v, bool):
        raise DescriptorError(path, "expected a number or [re, im]")
    if isinstance(v, (int, float)):
        return complex(float(v))
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        return complex(float(v[0]), float(v[1]))
    raise DescriptorError(path, "expected a number or [re, im]")


def _real(v, path: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DescriptorError(path, "expected a real number")
    return float(v)


def _list(v, path: str) -> list:
    if not isinstance(v, list):
        raise DescriptorError(path, "expected a list")
    return v


def _field(d: dict, key: str, path: str, default=...):
    if key in d:
        return d[key]
    if default is ...:
        raise DescriptorError(path, f"missing field {key!r}")
    return default


def _cpair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _guard(path: str, fn, *args):
    try:
        return fn(*args)
    except DescriptorError:
        raise
    except (ValueError, TypeError) as exc:
        raise DescriptorError(path, str(exc)) from None


def _blaschke_data(d: dict, path: str):
    c = _complex(_field(d, "constant", path, 1.0), f"{path}.constant")
    zeros = [_complex(a, f"{path}.zeros[{i}]") for i, a in enumerate(_list(_field(d, "zeros", path, []), f"{path}.zeros"))]
    for i, a in enumerate(zeros):
        if not abs(a) < 1:
            raise DescriptorError(f"{path}.zeros[{i}]", f"zero {a} is not in the open unit disk")
    if abs(abs(c) - 1.0) > 1e-14:
        raise DescriptorError(f"{path}.constant", f"constant {c} is not unimodular")
    return c, zeros


def parse_function(d, path: str = "$"):
    """Build a function handle from a descriptor object."""
    if not isinstance(d, dict):
        raise DescriptorError(path, "expected an object with a 'type' field")
    kind = _field(d, "type", path)
    if kind == "blaschke":
        if "atoms" in d:
            raise DescriptorError(f"{path}.atoms", "a blaschke descriptor has no atoms; use type 'inner'")
        c, zeros = _blaschke_data(d, path)
        return _guard(path, FiniteBlaschke, c, tuple(zeros))
    if kind == "inner":
        if "blaschke" in d:
            b = d["blaschke"]
            if not isinstance(b, dict) or b.get("type", "blaschke") != "blaschke":
                raise DescriptorError(f"{path}.blaschke", "expected a blaschke descriptor")
            c, zeros = _blaschke_data(b, f"{path}.blaschke")
        else:
            c, zeros = _blaschke_data(d, path)
        atoms = []
        for i, at in enumerate(_list(_field(d, "atoms", path, []), f"{path}.atoms")):
            p = f"{path}.atoms[{i}]"
            at = _list(at, p)
            if len(at) != 2:
                raise DescriptorError(p, "an atom is [angle, mass]")
            atoms.append((_real(at[0], p + "[0]"), _real(at[1], p + "[1]")))
            if not atoms[-1][1] > 0:
                raise DescriptorError(p + "[1]", "atom masses must be positive")
        return _guard(path, InnerFunction.from_data, c, zeros, atoms)
    if kind == "outer":
        if "logG" in d:
            logs = [_real(v, f"{path}.logG[{i}]") for i, v in enumerate(_list(d["logG"], f"{path}.logG"))]
            if "n" in d and d["n"] != len(logs):
                raise DescriptorError(f"{path}.n", f"n = {d['n']!r} but logG has {len(logs)} samples")
        else:
            m = _field(d, "modulus", path)
            if isinstance(m, (int, float)) and not isinstance(m, bool):
                n = d.get("n", 8)
                if not isinstance(n, int) or isinstance(n, bool) or n < 8:
                    raise DescriptorError(f"{path}.n", "n must be an integer >= 8")
                m = [m] * n
            vals = [_real(v, f"{path}.modulus[{i}]") for i, v in enumerate(_list(m, f"{path}.modulus"))]
            if any(not v > 0 for v in vals):
                raise DescriptorError(f"{path}.modulus", "modulus samples must be positive")
            logs = list(np.log(vals))
        return _guard(path, OuterFunction, logs)
    if kind == "taylor":
        coeffs = _list(_field(d, "coeffs", path), f"{path}.coeffs")
        return TaylorSeries([_complex(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)] or [0.0])
    if kind == "rational":
        num = [_complex(c, f"{path}.num[{i}]") for i, c in enumerate(_list(_field(d, "num", path), f"{path}.num"))]
        den = [_complex(c, f"{path}.den[{i}]") for i, c in enumerate(_list(_field(d, "den", path), f"{path}.den"))]
        return _guard(path, RationalFunction, tuple(num), tuple(den))
    if kind == "wco-image":
        T = parse_operator({"type": "wco", "psi": _field(d, "psi", path), "phi": _field(d, "phi", path)}, path)
        return WeightedImage(T.psi, T.phi, parse_function(_field(d, "f", path), f"{path}.f"))
    if kind == "scaled":
        factor = _complex(_field(d, "factor", path), f"{path}.factor")
        return Scaled(factor, parse_function(_field(d, "of", path), f"{path}.of"))
    if kind == "quotient":
        return Quotient(
            parse_function(_field(d, "num", path), f"{path}.num"),
            parse_function(_field(d, "den", path), f"{path}.den"),
        )
    raise DescriptorError(f"{path}.type", f"unknown function type {kind!r}; expected one of {', '.join(FUNCTION_TYPES)}")


def parse_operator(d, path: str = "$") -> WeightedCompositionOperator:
    if not isinstance(d, dict) or d.get("type") != "wco":
        raise DescriptorError(path, "expected an object with type 'wco'")
    psi = parse_function(_field(d, "psi", path), f"{path}.psi")
    phi = parse_function(_field(d, "phi", path), f"{path}.phi")
    return _guard(path, WeightedCompositionOperator, psi, phi)


def parse_action(d, path: str = "$") -> MonomialAction:
    if not isinstance(d, dict) or d.get("type") != "action":
        raise DescriptorError(path, "expected an object with type 'action'")
    entries = _list(_field(d, "entries", path), f"{path}.entries")
    handles = tuple(parse_function(e, f"{path}.entries[{i}]") for i, e in enumerate(entries))
    return _guard(f"{path}.entries", MonomialAction, handles)


def parse(d, path: str = "$"):
    """Dispatch on ``type``: functions, ``wco`` operators and ``action`` files."""
    kind = d.get("type") if isinstance(d, dict) else None
    if kind == "wco":
        return parse_operator(d, path)
    if kind == "action":
        return parse_action(d, path)
    return parse_function(d, path)


def loads(text: str, path: str = "$"):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse(d, path)


def describe(obj) -> dict:
    """Descriptor object for a handle, operator or action."""
    if isinstance(obj, FiniteBlaschke):
        return {"type": "blaschke", "constant": _cpair(obj.constant), "zeros": [_cpair(a) for a in obj.zeros]}
    if isinstance(obj, SingularInner):
        obj = InnerFunction.lift(obj)
    if isinstance(obj, InnerFunction):
        return {
            "type": "inner",
            "blaschke": describe(obj.blaschke),
            "atoms": [[float(t), float(m)] for t, m in obj.atoms],
        }
    if isinstance(obj, OuterFunction):
        return {"type": "outer", "n": obj.n, "logG": [float(v) for v in obj.log_values]}
    if isinstance(obj, TaylorSeries):
        return {"type": "taylor", "coeffs": [_cpair(c) for c in obj.coeffs]}
    if isinstance(obj, RationalFunction):
        return {"type": "rational", "num": [_cpair(c) for c in obj.num], "den": [_cpair(c) for c in obj.den]}
    if isinstance(obj, WeightedImage):
        return {"type": "wco-image", "psi": describe(obj.psi), "phi": describe(obj.phi), "f": describe(obj.f)}
    if isinstance(obj, Scaled):
        return {"type": "scaled", "factor": _cpair(complex(obj.factor)), "of": describe(obj.f)}
    if isinstance(obj, Quotient):
        return {"type": "quotient", "num": describe(obj.f), "den": describe(obj.g)}
    if isinstance(obj, WeightedCompositionOperator):
        return {"type": "wco", "psi": describe(obj.psi), "phi": describe(obj.phi)}
    if isinstance(obj, MonomialAction):
        return {"type": "action", "entries": [describe(h) for h in obj.entries]}
    raise TypeError(f"no descriptor for {type(obj).__name__}")


def dump(obj) -> str:
    return dumps(describe(obj))
