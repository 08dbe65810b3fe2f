"""JSON serialization of matrices, configuration points and subspace pairs.

All complex data is stored as split re/im row-major 2-d arrays (no complex
literals), with numbers written in Python's shortest round-trip decimal form
(at most 17 significant digits, reload-exact).  Files are written with
sorted keys and a trailing newline so identical inputs give byte-identical
files.

Schemas:

  MatrixFile   {"rows": r, "cols": c, "re": [[...]], "im": [[...]]}
  PointFile    {"p": p, "q": q, "k": k, "x": MatrixFile, "X": MatrixFile,
                "meta": {...}?}
  PairFile     {"p": p, "q": q, "P": MatrixFile, "Q": MatrixFile,
                "k": k?, "z": MatrixFile?}
  CotangentFile{"p": p, "q": q, "k": k, "P": MatrixFile, "eta": MatrixFile}

Unknown keys are ignored on load.  Pair frames are validated against
orthonormality on load: drift up to 1e-9 is accepted silently, up to 1e-6
re-orthonormalized with a warning, beyond that rejected.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path

import numpy as np

from .errors import FileFormatError
from .grassmann import CotangentPoint, OrbitPair, Subspace
from .hkspace import ConfigPoint, Truncation
from .matcore import dagger, fnorm, orthonormal_range

__all__ = [
    "load_cotangent",
    "load_matrix",
    "load_pair",
    "load_point",
    "matrix_from_obj",
    "matrix_to_obj",
    "save_cotangent",
    "save_matrix",
    "save_pair",
    "save_point",
]


def matrix_to_obj(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def matrix_from_obj(obj, name: str = "matrix") -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=np.float64)
        im = np.asarray(obj["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"{name}: malformed matrix object ({exc})") from exc
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise FileFormatError(
            f"{name}: array shapes {re.shape}/{im.shape} do not match "
            f"declared {rows} x {cols}"
        )
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise FileFormatError(f"{name}: non-finite entries")
    return re + 1j * im


def _write(path, obj) -> None:
    text = json.dumps(obj, sort_keys=True, indent=1) + "\n"
    Path(path).write_text(text)


def _read(path) -> dict:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(obj, dict):
        raise FileFormatError(f"{path}: top-level object expected")
    return obj


def save_matrix(path, m: np.ndarray) -> None:
    _write(path, matrix_to_obj(m))


def load_matrix(path) -> np.ndarray:
    return matrix_from_obj(_read(path), str(path))


def save_point(path, pt: ConfigPoint, meta: dict | None = None) -> None:
    obj = {
        "p": pt.trunc.p,
        "q": pt.trunc.q,
        "k": pt.trunc.k,
        "x": matrix_to_obj(pt.x),
        "X": matrix_to_obj(pt.X),
    }
    if meta:
        obj["meta"] = meta
    _write(path, obj)


def load_point(path) -> ConfigPoint:
    obj = _read(path)
    try:
        trunc = Truncation(int(obj["p"]), int(obj["q"]), float(obj["k"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: missing or bad p/q/k ({exc})") from exc
    x = matrix_from_obj(obj.get("x"), f"{path}:x")
    X = matrix_from_obj(obj.get("X"), f"{path}:X")
    if x.shape != (trunc.n, trunc.p) or X.shape != (trunc.n, trunc.p):
        raise FileFormatError(
            f"{path}: matrices must be {trunc.n} x {trunc.p}, "
            f"got {x.shape} and {X.shape}"
        )
    return ConfigPoint(trunc, x, X)


def _frame_from_obj(obj, name: str, n: int, d: int) -> Subspace:
    f = matrix_from_obj(obj, name)
    if f.shape != (n, d):
        raise FileFormatError(f"{name}: expected {n} x {d}, got {f.shape}")
    err = fnorm(dagger(f) @ f - np.eye(d))
    if err <= 1e-9 * (1.0 + d):
        return Subspace(f)
    if err <= 1e-6 * (1.0 + d):
        warnings.warn(
            f"{name}: frame drifted from orthonormality ({err:.2e}); "
            "re-orthonormalizing",
            stacklevel=3,
        )
        return Subspace(orthonormal_range(f))
    raise FileFormatError(
        f"{name}: frame is not orthonormal (||F*F - Id|| = {err:.2e})"
    )


def save_pair(path, pair: OrbitPair, k: float | None = None,
              z: np.ndarray | None = None) -> None:
    obj = {
        "p": pair.P.dim,
        "q": pair.Q.dim,
        "P": matrix_to_obj(pair.P.frame),
        "Q": matrix_to_obj(pair.Q.frame),
    }
    if k is not None:
        obj["k"] = float(k)
    if z is not None:
        obj["z"] = matrix_to_obj(z)
    _write(path, obj)


def load_pair(path) -> tuple[OrbitPair, float | None]:
    obj = _read(path)
    try:
        p, q = int(obj["p"]), int(obj["q"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: missing or bad p/q ({exc})") from exc
    n = p + q
    P = _frame_from_obj(obj.get("P"), f"{path}:P", n, p)
    Q = _frame_from_obj(obj.get("Q"), f"{path}:Q", n, q)
    k = float(obj["k"]) if "k" in obj else None
    return OrbitPair(P, Q), k


def save_cotangent(path, cp: CotangentPoint, k: float) -> None:
    n, p = cp.P.frame.shape
    _write(path, {
        "p": p,
        "q": n - p,
        "k": float(k),
        "P": matrix_to_obj(cp.P.frame),
        "eta": matrix_to_obj(cp.eta),
    })


def load_cotangent(path) -> tuple[CotangentPoint, float]:
    obj = _read(path)
    try:
        p, q, k = int(obj["p"]), int(obj["q"]), float(obj["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: missing or bad p/q/k ({exc})") from exc
    n = p + q
    P = _frame_from_obj(obj.get("P"), f"{path}:P", n, p)
    eta = matrix_from_obj(obj.get("eta"), f"{path}:eta")
    if eta.shape != (n, n):
        raise FileFormatError(f"{path}:eta must be {n} x {n}, got {eta.shape}")
    return CotangentPoint(P, eta), k
