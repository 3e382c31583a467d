"""JSON formats for algebras and matrices.

Algebra files hold ``{"dim": n, "basis": [...], "brackets": [{i, j, k, re, im}, ...]}``
with 0-based indices; omitted coefficients are zero.  Matrix files hold
``{"rows": r, "cols": c, "entries": [[re, im], ...]}`` in row-major order.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .algebra import LeibnizAlgebra
from .errors import LeibnizError

__all__ = [
    "FormatError",
    "algebra_from_dict",
    "algebra_to_dict",
    "load_algebra",
    "dump_json",
    "matrix_from_dict",
    "matrix_to_dict",
    "load_matrix",
    "clean_float",
]


class FormatError(LeibnizError, ValueError):
    """Malformed algebra or matrix file."""


def clean_float(x: float, digits: int = 12) -> float:
    """Round for stable output; never returns ``-0.0``."""
    x = round(float(x), digits)
    return 0.0 if x == 0 else x


def _int(obj, key, low=0, high=None):
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"'{key}' must be an integer, got {v!r}")
    if v < low or (high is not None and v >= high):
        raise FormatError(f"'{key}' = {v} is out of range")
    return v


def _num(obj, key):
    v = obj.get(key, 0.0)
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise FormatError(f"'{key}' must be a finite number, got {v!r}")
    return float(v)


def algebra_from_dict(obj) -> LeibnizAlgebra:
    """Build an algebra without validating the Leibniz identity (``check`` does that)."""
    if not isinstance(obj, dict):
        raise FormatError("algebra file must be a JSON object")
    n = _int(obj, "dim", low=1)
    labels = obj.get("basis")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
            raise FormatError(f"'basis' must be a list of {n} strings")
    records = obj.get("brackets", [])
    if not isinstance(records, list):
        raise FormatError("'brackets' must be a list")
    c = np.zeros((n, n, n), dtype=complex)
    seen = set()
    for rec in records:
        if not isinstance(rec, dict):
            raise FormatError(f"bracket record must be an object, got {rec!r}")
        key = tuple(_int(rec, name, 0, n) for name in "ijk")
        if key in seen:
            raise FormatError(f"duplicate bracket record for (i, j, k) = {key}")
        seen.add(key)
        c[key] = complex(_num(rec, "re"), _num(rec, "im"))
    return LeibnizAlgebra(c, labels, validate=False)


def algebra_to_dict(A: LeibnizAlgebra) -> dict:
    out = {"dim": A.dim}
    if A.labels is not None:
        out["basis"] = list(A.labels)
    out["brackets"] = [
        {"i": int(i), "j": int(j), "k": int(k),
         "re": clean_float(A.c[i, j, k].real), "im": clean_float(A.c[i, j, k].imag)}
        for i, j, k in np.argwhere(A.c != 0)
    ]
    return out


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def load_algebra(path: str) -> LeibnizAlgebra:
    return algebra_from_dict(_read_json(path))


def matrix_from_dict(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise FormatError("matrix file must be a JSON object")
    r, c = _int(obj, "rows", low=1), _int(obj, "cols", low=1)
    entries = obj.get("entries")
    if not isinstance(entries, list) or len(entries) != r * c:
        raise FormatError(f"'entries' must list {r * c} values")
    vals = []
    for e in entries:
        if isinstance(e, list) and len(e) == 2:
            vals.append(complex(_num({"re": e[0]}, "re"), _num({"im": e[1]}, "im")))
        else:
            raise FormatError(f"matrix entry must be [re, im], got {e!r}")
    return np.array(vals, dtype=complex).reshape(r, c)


def matrix_to_dict(M, digits: int = 12) -> dict:
    M = np.asarray(M, dtype=complex)
    return {
        "rows": M.shape[0],
        "cols": M.shape[1],
        "entries": [[clean_float(z.real, digits), clean_float(z.imag, digits)] for z in M.ravel()],
    }


def load_matrix(path: str) -> np.ndarray:
    return matrix_from_dict(_read_json(path))


def dump_json(obj) -> str:
    """Compact, key-order-preserving JSON."""
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)
