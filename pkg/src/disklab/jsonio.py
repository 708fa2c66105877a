"""Deterministic JSON output: floats with 17 significant digits, complex
numbers as ``[re, im]``, numpy scalars and arrays unwrapped, non-finite
floats as ``null``."""

from __future__ import annotations

import json
import math

import numpy as np


def _float(x: float) -> str:
    # strict JSON has no nan/inf
    if not math.isfinite(x):
        return "null"
    s = f"{x:.17g}"
    return "0" if s == "-0" else s


def _plain(obj):
    if isinstance(obj, (np.generic,)):
        obj = obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, tuple):
        return list(obj)
    return obj


def _encode(obj, indent: int | None, level: int, out: list[str]) -> None:
    obj = _plain(obj)
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, (list, dict)):
        is_dict = isinstance(obj, dict)
        items = list(obj.items()) if is_dict else list(obj)
        open_, close = ("{", "}") if is_dict else ("[", "]")
        if not items:
            out.append(open_ + close)
            return
        # short numeric rows stay on one line
        flat = not is_dict and all(isinstance(_plain(v), (int, float)) and not isinstance(v, bool) for v in items)
        if indent is None or flat:
            sep, pad, end = (", ", "", "") if indent is not None else (",", "", "")
        else:
            pad = "\n" + " " * (indent * (level + 1))
            end = "\n" + " " * (indent * level)
            sep = ","
        out.append(open_)
        for i, item in enumerate(items):
            if i:
                out.append(sep)
            out.append(pad)
            if is_dict:
                k, v = item
                out.append(json.dumps(str(k), ensure_ascii=False))
                out.append(": " if indent is not None else ":")
                _encode(v, indent, level + 1, out)
            else:
                _encode(item, indent, level + 1, out)
        out.append(end + close)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    out: list[str] = []
    _encode(obj, indent, 0, out)
    return "".join(out)


def loads(text: str):
    return json.loads(text)
