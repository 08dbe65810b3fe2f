"""Dense complex linear-algebra kernel.

Hermitian eigendecomposition, functional calculus of Hermitian matrices,
SVD, gauge-fixed orthonormalization of ranges and null spaces, and the
symmetric (anticommutator) Sylvester solver used by the orbit-tangent
projector.  All scalars are complex128; the acceptance tolerances
(1e-9 .. 1e-12) need full double precision.

Everything here is a pure function of immutable inputs and is safe to call
concurrently.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import HERMITIAN_TOL, RANK_TOL
from .errors import (
    DomainViolation,
    NoConvergence,
    NotHermitian,
    NotPositiveDefinite,
    RankDeficientWarning,
    ShapeMismatch,
)

__all__ = [
    "HermitianSpectrum",
    "as_matrix",
    "dagger",
    "fnorm",
    "herm_eig",
    "herm_fun",
    "hermitian_part",
    "skew_part",
    "is_hermitian",
    "null_space_frame",
    "orthonormal_range",
    "svd",
    "sym_sylvester_solve",
]


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-d complex128 array and reject non-finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise ShapeMismatch(f"{name} must be 2-dimensional, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ShapeMismatch(f"{name} contains non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def fnorm(m) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(m))


def hermitian_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + dagger(m))


def skew_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m - dagger(m))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    if m.shape[0] != m.shape[1]:
        return False
    return fnorm(m - dagger(m)) <= tol * (1.0 + fnorm(m))


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are real and ascending; eigenvectors holds the corresponding
    unitary matrix of column eigenvectors, so that
    U diag(lam) U* reconstructs the input to 1e-12 (1 + ||input||_F).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ dagger(u)


def herm_eig(m, tol: float = HERMITIAN_TOL) -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input is checked against the Hermitian tolerance and then symmetrized
    as (M + M*)/2 before factorization; round-off from products like x*x is
    absorbed here rather than propagated.

    Raises NotHermitian if the pre-check fails, NoConvergence if LAPACK does.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"herm_eig needs a square matrix, got {m.shape}")
    if not is_hermitian(m, tol):
        raise NotHermitian(
            f"matrix is not Hermitian within {tol:g}: "
            f"||M - M*|| = {fnorm(m - dagger(m)):.3e}"
        )
    try:
        lam, u = np.linalg.eigh(hermitian_part(m))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return HermitianSpectrum(eigenvalues=lam, eigenvectors=u)


def herm_fun(
    m,
    f: Callable[[np.ndarray], np.ndarray],
    domain_check: Callable[[np.ndarray], np.ndarray] | None = None,
    tol: float = HERMITIAN_TOL,
) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix spectrally.

    Returns U diag(f(lam)) U*.  `domain_check` is a vectorized predicate on
    the eigenvalues (e.g. lam > 0 for log); offenders raise DomainViolation.
    The result is exactly Hermitian by construction.
    """
    spec = herm_eig(m, tol)
    lam = spec.eigenvalues
    if domain_check is not None:
        ok = np.asarray(domain_check(lam), dtype=bool)
        if not np.all(ok):
            bad = lam[~ok]
            raise DomainViolation(
                f"eigenvalues outside the domain of the scalar map: {bad}",
                offending=bad,
            )
    fl = np.asarray(f(lam), dtype=np.float64)
    u = spec.eigenvectors
    out = (u * fl) @ dagger(u)
    return hermitian_part(out)


def herm_sqrt(m) -> np.ndarray:
    """Square root of a Hermitian PSD matrix (tiny negatives clipped)."""
    return herm_fun(m, lambda lam: np.sqrt(np.clip(lam, 0.0, None)),
                    domain_check=lambda lam: lam >= -HERMITIAN_TOL * (1.0 + np.max(np.abs(lam))))


def herm_log(m) -> np.ndarray:
    """Logarithm of a Hermitian positive-definite matrix."""
    return herm_fun(m, np.log, domain_check=lambda lam: lam > 0.0)


def herm_inv_sqrt(m) -> np.ndarray:
    """Inverse square root of a Hermitian positive-definite matrix."""
    return herm_fun(m, lambda lam: 1.0 / np.sqrt(lam),
                    domain_check=lambda lam: lam > 0.0)


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition M = U diag(sigma) W*.

    Returns (U, sigma, W) with sigma non-negative descending and U, W having
    orthonormal columns (thin factors).
    """
    m = as_matrix(m)
    try:
        u, s, wh = np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return u, s, dagger(wh)


def _fix_column_phases(frame: np.ndarray) -> np.ndarray:
    """Deterministic gauge: rotate each column so its largest-modulus entry
    is real positive."""
    out = frame.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        i = int(np.argmax(np.abs(col)))
        pivot = col[i]
        if np.abs(pivot) > 0.0:
            out[:, j] = col * (np.abs(pivot) / pivot)
    return out


def orthonormal_range(m, tol: float = RANK_TOL) -> np.ndarray:
    """Gauge-fixed orthonormal basis of the numerical column span of M.

    Keeps the left singular vectors whose singular value exceeds
    tol * sigma_max and phase-normalizes each column (largest-modulus entry
    real positive).  When columns are dropped a RankDeficientWarning carrying
    the detected rank is emitted; callers that require full rank check the
    returned column count.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_matrix(m)
    u, s, _ = svd(m)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(s > tol * s[0]))
    if rank < min(m.shape):
        warnings.warn(
            RankDeficientWarning(
                f"matrix has numerical rank {rank} < {min(m.shape)}", rank
            ),
            stacklevel=2,
        )
    return _fix_column_phases(u[:, :rank])


def null_space_frame(m, tol: float = RANK_TOL) -> np.ndarray:
    """Gauge-fixed orthonormal basis of the kernel of M (right null space)."""
    m = as_matrix(m)
    u, s, wh = np.linalg.svd(m, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(s > tol * s[0]))
    w = dagger(wh)
    return _fix_column_phases(w[:, rank:])


def left_null_space_frame(m, tol: float = RANK_TOL) -> np.ndarray:
    """Gauge-fixed orthonormal basis of the orthogonal complement of Ran M."""
    return null_space_frame(dagger(as_matrix(m)), tol)


def sym_sylvester_solve(m, s, eps: float = 1e-12) -> np.ndarray:
    """Solve (M a + a M)/2 = S for skew-Hermitian a.

    M must be Hermitian positive definite and S skew-Hermitian; the solution
    is computed in the eigenbasis of M via a_ij = 2 S_ij / (lam_i + lam_j)
    and is unique there since all lam_i + lam_j > 0.
    """
    m = as_matrix(m, "M")
    s = as_matrix(s, "S")
    if m.shape != s.shape or m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"M {m.shape} and S {s.shape} must be square and equal")
    spec = herm_eig(m)
    lam = spec.eigenvalues
    if np.any(lam <= eps):
        raise NotPositiveDefinite(
            f"M must be positive definite, min eigenvalue {lam.min():.3e}"
        )
    u = spec.eigenvectors
    s_eig = dagger(u) @ s @ u
    denom = 0.5 * (lam[:, None] + lam[None, :])
    a_eig = s_eig / denom
    a = u @ a_eig @ dagger(u)
    return skew_part(a)
