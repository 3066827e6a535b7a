"""Triple JSON, dense CSV and sign-matrix text I/O.

Triple JSON: ``{"d": int, "A": [[[re, im], ...], ...], "B": ..., "C": ...}``.
Floats are written with 17 significant digits so output is byte-stable.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .hadamardness import SignMatrix
from .triples import MatrixTriple, TripleError

FLOAT_FMT = ".17g"


def fmt_float(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot serialise non-finite value {x}")
    if x == 0.0:
        return "0"  # folds -0.0
    if x.is_integer() and abs(x) < 1e17:
        return str(int(x))
    return format(x, FLOAT_FMT)


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1)) if indent else ""
    end = " " * (indent * level) if indent else ""
    sep = ",\n" if indent else ", "
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode([obj.real, obj.imag], 0, 0)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + sep.join(items) + "\n" + end + "}" if indent else "{" + sep.join(items) + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        # numeric rows stay on one line
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj) or not indent:
            return "[" + ", ".join(_encode(v, 0, 0) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + sep.join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent=2):
    """Deterministic JSON text (17 significant digits, key order kept)."""
    return _encode(obj, indent, 0) + "\n"


def complex_grid(M):
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def _parse_grid(g, name):
    arr = np.asarray(g, dtype=float)
    if arr.ndim == 2:
        return arr.astype(complex)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise TripleError(f"{name} must be a d x d grid of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def triple_to_obj(t):
    return {"d": t.dim, "A": complex_grid(t.A), "B": complex_grid(t.B), "C": complex_grid(t.C)}


def triple_from_obj(obj):
    try:
        d = int(obj["d"])
        A, B, C = (_parse_grid(obj[k], k) for k in "ABC")
    except (KeyError, TypeError, ValueError) as exc:
        raise TripleError(f"malformed triple JSON: {exc}") from exc
    t = MatrixTriple(A, B, C)
    if t.dim != d:
        raise TripleError(f"declared d = {d} but matrices are {t.dim} x {t.dim}")
    return t


def dump_triple(t):
    return dumps(triple_to_obj(t))


def load_triple(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TripleError(f"invalid JSON: {exc}") from exc
    return triple_from_obj(obj)


def dense_to_csv(X):
    """Rows of interleaved ``re,im`` columns."""
    X = np.asarray(X, dtype=complex)
    lines = []
    for row in X:
        lines.append(",".join(f"{fmt_float(z.real)},{fmt_float(z.imag)}" for z in row))
    return "\n".join(lines) + "\n"


def dense_from_csv(text):
    rows = [ln for ln in text.strip().splitlines() if ln.strip()]
    vals = np.array([[float(x) for x in ln.split(",")] for ln in rows])
    return vals[:, 0::2] + 1j * vals[:, 1::2]


def values_to_csv(values):
    lines = ["re,im"] + [f"{fmt_float(z.real)},{fmt_float(z.imag)}" for z in values]
    return "\n".join(lines) + "\n"


def load_matrix(text):
    """A square matrix from JSON (real or ``[re, im]`` entries) or a sign grid.

    Sign matrices come back as :class:`SignMatrix`, anything else as a
    complex array.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        arr = np.asarray(json.loads(stripped), dtype=float)
        if arr.ndim == 3 and arr.shape[2] == 2:
            M = arr[..., 0] + 1j * arr[..., 1]
        elif arr.ndim == 2:
            M = arr
        else:
            raise ValueError("matrix JSON must be a 2-D grid")
        if np.isrealobj(M) and np.all(np.isin(M, (1, -1))):
            return SignMatrix.from_array(M.astype(int))
        if not np.isrealobj(M) and np.all(M.imag == 0) and np.all(np.isin(M.real, (1, -1))):
            return SignMatrix.from_array(M.real.astype(int))
        return M.astype(complex)
    return SignMatrix.from_text(stripped)
