"""JSON encodings for matrices, families, weights and reports.

Matrix format: ``{"d": <int>, "entries": [[[re, im], ...], ...]}`` row-major.
Floats are written with Python's shortest round-trip repr, so a re-read
reproduces every bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import is_dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .hermitian import hermitian, identity


class FormatError(ValueError):
    pass


def matrix_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=complex)
    return {
        "d": int(a.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }


def matrix_from_json(obj: Any) -> np.ndarray:
    try:
        d = int(obj["d"])
        rows = obj["entries"]
        a = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed matrix JSON: {exc}") from exc
    if a.shape != (d, d):
        raise FormatError(f"matrix entries have shape {a.shape}, expected ({d}, {d})")
    return hermitian(a)


def family_to_json(members, T: np.ndarray | None = None, **extra) -> dict:
    out = {
        "T": None if T is None else matrix_to_json(T),
        "members": [matrix_to_json(m) for m in members],
    }
    out.update(extra)
    return out


def family_from_json(obj: Any) -> tuple[list[np.ndarray], np.ndarray | None]:
    if not isinstance(obj, dict) or "members" not in obj:
        raise FormatError("family JSON needs a 'members' list")
    members = [matrix_from_json(m) for m in obj["members"]]
    if not members:
        raise FormatError("family has no members")
    T = obj.get("T")
    return members, (None if T is None else matrix_from_json(T))


def weights_from_json(obj: Any) -> np.ndarray:
    try:
        return np.array([float(v) for v in obj["v"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed weights JSON: {exc}") from exc


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_operator(spec: str) -> np.ndarray:
    """Read an operator from a JSON file, or ``identity:d`` for I_d."""
    if spec.startswith("identity:"):
        try:
            d = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise FormatError(f"bad identity shorthand {spec!r}") from exc
        if d < 1:
            raise FormatError("identity dimension must be positive")
        return identity(d)
    return matrix_from_json(load_json(spec))


def to_jsonable(value: Any) -> Any:
    """Convert dataclasses, numpy values and matrices into JSON-ready objects.

    Non-finite floats become ``null`` so the output stays strict JSON.
    """
    if is_dataclass(value) and not isinstance(value, type):
        return {k: to_jsonable(v) for k, v in _fields(value).items()}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        if value.ndim == 2 and value.shape[0] == value.shape[1] and np.iscomplexobj(value):
            return matrix_to_json(value)
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return v if math.isfinite(v) else None
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def _fields(obj) -> dict:
    # shallow: dataclasses.asdict would deep-copy every array
    return {name: getattr(obj, name) for name in obj.__dataclass_fields__}


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, allow_nan=False) + "\n"


__all__ = [
    "FormatError",
    "dumps",
    "family_from_json",
    "family_to_json",
    "load_json",
    "load_operator",
    "matrix_from_json",
    "matrix_to_json",
    "to_jsonable",
    "weights_from_json",
]
