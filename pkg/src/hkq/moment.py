"""Moment maps of the two group actions and the level-set residual.

Values are returned as p x p trace-pairing representatives: the functional
is a |-> Tr(value . a) on skew-Hermitian a.  Stored matrices:

    muC : X*x                          (complex moment map, unconstrained)
    mu1 : -(i/2) (x*x - X*X)           (skew-Hermitian)
    mu2 :  (1/2) (X*x - x*X)           (skew-Hermitian, Re muC)
    mu3 : -(i/2) (X*x + x*X)           (skew-Hermitian, Im muC)
    mu4 :  (i/2) (x*x + X*X)           (skew-Hermitian, enters the third
                                        structure's potential)

muC = mu2 + i mu3 holds exactly at the matrix level.  The level set is
{X*x = 0, x*x - X*X = k^2 Id}; on it mu1 equals -(i/2) k^2 Id, the invariant
level value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import membership_tol
from .errors import NotSkew, ShapeMismatch
from .hkspace import ConfigPoint, TangentPair, metric_g, omega
from .matcore import as_matrix, dagger, fnorm

__all__ = [
    "MomentValue",
    "MOMENT_TAGS",
    "in_stable1",
    "in_stable3",
    "infinitesimal_action",
    "level_residual",
    "moment",
    "moment_pairing_check",
    "on_level_set",
]

MOMENT_TAGS = ("mu1", "mu2", "mu3", "mu4", "muC")


@dataclass(frozen=True)
class MomentValue:
    which: str
    value: np.ndarray


def moment(which: str, pt: ConfigPoint) -> MomentValue:
    """Evaluate the moment map `which` at pt as a p x p matrix."""
    x, X = pt.x, pt.X
    if which == "muC":
        val = dagger(X) @ x
    elif which == "mu1":
        val = -0.5j * (dagger(x) @ x - dagger(X) @ X)
    elif which == "mu2":
        val = 0.5 * (dagger(X) @ x - dagger(x) @ X)
    elif which == "mu3":
        val = -0.5j * (dagger(X) @ x + dagger(x) @ X)
    elif which == "mu4":
        val = 0.5j * (dagger(x) @ x + dagger(X) @ X)
    else:
        raise ValueError(f"unknown moment tag {which!r}, expected one of {MOMENT_TAGS}")
    return MomentValue(which, val)


def level_residual(pt: ConfigPoint) -> tuple[float, float]:
    """Frobenius residuals of the level-set equations.

    Returns (||X*x||, ||x*x - X*X - k^2 Id||); both scale like k^2, so
    membership is judged against tol * k^2.
    """
    x, X = pt.x, pt.X
    r_complex = fnorm(dagger(X) @ x)
    r_real = fnorm(dagger(x) @ x - dagger(X) @ X - pt.trunc.k2 * np.eye(pt.trunc.p))
    return r_complex, r_real


def on_level_set(pt: ConfigPoint, tol: float | None = None) -> bool:
    rc, rr = level_residual(pt)
    return max(rc, rr) <= membership_tol(tol) * pt.trunc.k2


def _sigma_ratio_ok(m: np.ndarray, tol: float) -> bool:
    """True when sigma_min(m) > tol * sigma_max(m) (full numerical rank)."""
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return False
    return bool(s[-1] > tol * s[0])


def in_stable1(pt: ConfigPoint, tol: float | None = None) -> bool:
    """Membership in the stable set of the first structure:
    X*x = 0 (to tol * k^2) and x one-to-one."""
    t = membership_tol(tol)
    x, X = pt.x, pt.X
    if fnorm(dagger(X) @ x) > t * pt.trunc.k2:
        return False
    return _sigma_ratio_ok(x, t)


def in_stable3(pt: ConfigPoint, tol: float | None = None) -> bool:
    """Membership in the stable set of the third structure:
    x*x - X*X = k^2 Id, X*x Hermitian (both to tol * k^2), and both x + X
    and x - X of full numerical rank."""
    t = membership_tol(tol)
    x, X = pt.x, pt.X
    k2 = pt.trunc.k2
    if fnorm(dagger(x) @ x - dagger(X) @ X - k2 * np.eye(pt.trunc.p)) > t * k2:
        return False
    if fnorm(dagger(X) @ x - dagger(x) @ X) > t * k2:
        return False
    return _sigma_ratio_ok(x + X, t) and _sigma_ratio_ok(x - X, t)


def _check_skew(a: np.ndarray) -> np.ndarray:
    a = as_matrix(a, "a")
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"a must be square, got {a.shape}")
    err = fnorm(a + dagger(a))
    if err > 1e-10 * (1.0 + fnorm(a)):
        raise NotSkew(f"a must be skew-Hermitian, ||a + a*|| = {err:.3e}")
    return a


def infinitesimal_action(j: int, a: np.ndarray, pt: ConfigPoint) -> TangentPair:
    """Vector field of a skew-Hermitian a at pt for the structure pairing j.

    For omega_1 the compact group acts on both slots by -a; for omega_2/3 the
    complexified action contributes (-x a, X a*).  The two coincide for
    skew-Hermitian a, but both routes are kept explicit since the pairing
    check quotes them separately.
    """
    if j == 1:
        return TangentPair(-pt.x @ a, -pt.X @ a)
    return TangentPair(-pt.x @ a, pt.X @ dagger(a))


def _pairing_derivative(j: int, pt: ConfigPoint, a: np.ndarray, v: TangentPair) -> float:
    """Exact directional derivative of Tr(moment_j . a) along v.

    Each moment matrix is quadratic in (x, X), so the derivative is the
    closed-form polarization, no differencing involved.
    """
    x, X, Z, T = pt.x, pt.X, v.Z, v.T
    if j == 1:
        d = -0.5j * (dagger(Z) @ x + dagger(x) @ Z - dagger(T) @ X - dagger(X) @ T)
    elif j == 2:
        d = 0.5 * (dagger(X) @ Z + dagger(T) @ x - dagger(Z) @ X - dagger(x) @ T)
    elif j == 3:
        d = -0.5j * (dagger(X) @ Z + dagger(T) @ x + dagger(Z) @ X + dagger(x) @ T)
    else:
        raise ValueError(f"pairing index must be 1, 2 or 3, got {j}")
    return float(np.trace(d @ a).real)


def moment_pairing_check(
    pt: ConfigPoint, a: np.ndarray, v: TangentPair, j: int
) -> tuple[float, float]:
    """Both sides of the defining equation of the j-th moment map.

    lhs is the closed-form derivative of the a-pairing along v; rhs is
    omega_j evaluated on (generated vector field, v).  They agree to
    1e-11 (1 + |lhs|); this identity is the module's oracle.
    """
    a = _check_skew(a)
    lhs = _pairing_derivative(j, pt, a, v)
    rhs = omega(j, infinitesimal_action(j, a, pt), v)
    return lhs, rhs
