"""Level-set projections and the tangent-space splitting of the quotient.

project1 realizes the closed-form retraction from the stable set of the
first structure onto the level set: the unique positive group element g with

    g^-2 = (x*x)^{-1/2} . gamma gamma* . (x*x)^{-1/2},
    gamma gamma* = (k^2/2) (Id + (Id + (4/k^4) |x| X*X |x|)^{1/2}),

moves (x, X) into the level set.  project3 routes through the subspace-pair
picture: map the point down with psi3, take the canonical preimage of the
pair, and slide it onto the level set with the closed-form positive part
h = (1/4) log(Id + A*A) of the third action.  The returned point is a
representative of the intersection orbit (unique up to the free compact
action); every downstream quantity we evaluate on it is invariant under
that action.

The tangent projectors split T(TM) at a level-set point into the orbit
tangent, the level-set tangent and the horizontal slice; the orbit component
is obtained from the anticommutator Sylvester equation

    (M a + a M)/2 = -skew(x*Z + X*T),      M = x*x + X*X >= k^2 Id,

and the level-set component from the assembled kernel projector of the
constraint differential dF(Z, T) = (X*Z + T*x, x*Z + Z*x - X*T - T*X).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import membership_tol
from .errors import NotInStable1, NotInStable3, NotOnLevelSet
from .grassmann import graph_operator, psi3, psi3_section
from .hkspace import ConfigPoint, GroupElement, TangentPair, act1, act3, apply_I, metric_g, omega
from .matcore import (
    dagger,
    fnorm,
    herm_fun,
    herm_inv_sqrt,
    herm_sqrt,
    hermitian_part,
    skew_part,
    sym_sylvester_solve,
)
from .moment import in_stable1, in_stable3, level_residual, on_level_set

__all__ = [
    "ProjectionResult",
    "SliceBasis",
    "horizontal_projection",
    "in_stable1",
    "in_stable3",
    "levelset_tangent_projection",
    "orbit_tangent_projection",
    "project1",
    "project3",
    "reduced_pairing",
    "slice_basis",
]


@dataclass(frozen=True)
class ProjectionResult:
    """Outcome of a level-set projection.

    For project1, group_part is the positive element with
    act1(group_part, original) = point.  For project3, (h, u) records the
    Hermitian parameter and unitary applied to the canonical section point
    (u is the identity in this gauge); group_part is None.
    """

    point: ConfigPoint
    residual: float
    group_part: GroupElement | None = None
    h: np.ndarray | None = None
    u: GroupElement | None = None


def project1(pt: ConfigPoint, tol: float | None = None) -> ProjectionResult:
    """Closed-form projection onto the level set along the first action."""
    if not in_stable1(pt, tol):
        raise NotInStable1("project1 requires X*x = 0 and injective x")
    p = pt.trunc.p
    k2 = pt.trunc.k2
    eye = np.eye(p)
    xx = dagger(pt.x) @ pt.x
    sx = herm_sqrt(xx)
    isx = herm_inv_sqrt(xx)
    inner = eye + (4.0 / (k2 * k2)) * (sx @ (dagger(pt.X) @ pt.X) @ sx)
    gamma2 = 0.5 * k2 * (eye + herm_sqrt(hermitian_part(inner)))
    g_minus2 = hermitian_part(isx @ gamma2 @ isx)
    g = herm_fun(g_minus2, lambda lam: 1.0 / np.sqrt(lam),
                 domain_check=lambda lam: lam > 0.0)
    group = GroupElement(g, positive=True)
    point = act1(group, pt)
    residual = max(level_residual(point))
    if residual > membership_tol(tol) * k2:
        raise NotInStable1(
            f"projection left residual {residual:.3e} > tol * k^2; "
            "point is too close to the stable-set boundary"
        )
    return ProjectionResult(point=point, residual=residual, group_part=group)


def project3(pt: ConfigPoint, tol: float | None = None) -> ProjectionResult:
    """Level-set representative of the third-structure orbit through pt.

    Route: (P, Q) = psi3(pt); canonical preimage pt0 = psi3_section(P, Q);
    h = (1/4) log(Id + A*A); point = act3(-h, Id, pt0).  The result lies in
    the level set (exactly, up to round-off) and in the same orbit as pt
    (psi3 reproduces the pair).  It matches the intrinsic projection only up
    to the free compact action; the flat potential of the result is
    nevertheless the exact projected value by invariance.
    """
    if not in_stable3(pt, tol):
        raise NotInStable3(
            "project3 requires x*x - X*X = k^2 Id, Hermitian X*x and "
            "full-rank x +/- X"
        )
    pair, _ = psi3(pt, tol)
    a = graph_operator(pair, tol)
    pt0 = psi3_section(pair, pt.trunc.k, tol)
    p = pt.trunc.p
    h = 0.25 * herm_fun(np.eye(p) + dagger(a) @ a, np.log,
                        domain_check=lambda lam: lam > 0.0)
    ident = GroupElement.identity(p)
    point = act3(-h, ident, pt0)
    residual = max(level_residual(point))
    if residual > membership_tol(tol) * pt.trunc.k2:
        raise NotInStable3(
            f"orbit projection left residual {residual:.3e} > tol * k^2"
        )
    return ProjectionResult(point=point, residual=residual, h=h, u=ident)


def _require_level(pt: ConfigPoint, tol: float | None) -> None:
    if not on_level_set(pt, tol):
        rc, rr = level_residual(pt)
        raise NotOnLevelSet(
            f"point is not on the level set: residuals ({rc:.3e}, {rr:.3e})"
        )


def orbit_tangent_projection(
    pt: ConfigPoint, v: TangentPair, tol: float | None = None
) -> TangentPair:
    """g-orthogonal projection of v onto the orbit tangent at a level point.

    Minimizing ||Z + x a||^2 + ||T + X a||^2 over skew-Hermitian a gives the
    anticommutator equation (M a + a M)/2 = -skew(x*Z + X*T) with
    M = x*x + X*X, positive definite (>= k^2 Id on the level set).
    """
    _require_level(pt, tol)
    x, X = pt.x, pt.X
    m = hermitian_part(dagger(x) @ x + dagger(X) @ X)
    rhs = -skew_part(dagger(x) @ v.Z + dagger(X) @ v.T)
    a = sym_sylvester_solve(m, rhs)
    return TangentPair(-x @ a, -X @ a)


def _pack(v: TangentPair) -> np.ndarray:
    return np.concatenate(
        [v.Z.real.ravel(), v.Z.imag.ravel(), v.T.real.ravel(), v.T.imag.ravel()]
    )


def _unpack(w: np.ndarray, n: int, p: int) -> TangentPair:
    m = n * p
    z = w[:m].reshape(n, p) + 1j * w[m:2 * m].reshape(n, p)
    t = w[2 * m:3 * m].reshape(n, p) + 1j * w[3 * m:].reshape(n, p)
    return TangentPair(z, t)


def _constraint_rows(pt: ConfigPoint) -> np.ndarray:
    """Real matrix of dF at pt acting on the real parametrization of (Z, T)."""
    x, X = pt.x, pt.X
    n, p = x.shape
    dim = 4 * n * p
    rows = np.empty((4 * p * p, dim))
    basis = np.zeros(dim)
    for i in range(dim):
        basis[i] = 1.0
        v = _unpack(basis, n, p)
        basis[i] = 0.0
        a = dagger(X) @ v.Z + dagger(v.T) @ x
        b = dagger(x) @ v.Z + dagger(v.Z) @ x - dagger(X) @ v.T - dagger(v.T) @ X
        rows[:, i] = np.concatenate(
            [a.real.ravel(), a.imag.ravel(), b.real.ravel(), b.imag.ravel()]
        )
    return rows


# repeated projections at the same point dominate the property suites, so the
# orthonormal row basis of dF is memoized on the point's raw bytes
_ROW_BASIS_CACHE: dict[bytes, np.ndarray] = {}
_ROW_BASIS_CACHE_MAX = 8


def _kernel_row_basis(pt: ConfigPoint) -> np.ndarray:
    key = pt.x.tobytes() + pt.X.tobytes()
    cached = _ROW_BASIS_CACHE.get(key)
    if cached is not None:
        return cached
    rows = _constraint_rows(pt)
    _, s, vt = np.linalg.svd(rows, full_matrices=False)
    if s.size and s[0] > 0.0:
        rank = int(np.count_nonzero(s > 1e-12 * s[0]))
    else:
        rank = 0
    basis = vt[:rank]
    if len(_ROW_BASIS_CACHE) >= _ROW_BASIS_CACHE_MAX:
        _ROW_BASIS_CACHE.pop(next(iter(_ROW_BASIS_CACHE)))
    _ROW_BASIS_CACHE[key] = basis
    return basis


def levelset_tangent_projection(
    pt: ConfigPoint, v: TangentPair, tol: float | None = None
) -> TangentPair:
    """g-orthogonal projection of v onto the kernel of the constraint
    differential (the tangent space of the level set).

    The real parametrization of (Z, T) makes the flat metric the standard
    Euclidean product, so the kernel projector comes straight from an SVD of
    the assembled dF.
    """
    _require_level(pt, tol)
    n, p = pt.x.shape
    row_basis = _kernel_row_basis(pt)
    w = _pack(v)
    w_proj = w - row_basis.T @ (row_basis @ w)
    return _unpack(w_proj, n, p)


def horizontal_projection(
    pt: ConfigPoint, v: TangentPair, tol: float | None = None
) -> TangentPair:
    """Projection onto the horizontal slice: the g-orthogonal complement of
    the orbit tangent inside the level-set tangent."""
    w = levelset_tangent_projection(pt, v, tol)
    return w - orbit_tangent_projection(pt, w, tol)


def reduced_pairing(
    pt: ConfigPoint,
    v1: TangentPair,
    v2: TangentPair,
    which: str = "g",
    tol: float | None = None,
) -> float:
    """Reduced metric / symplectic pairings through the horizontal slice.

    which is one of 'g', 'w1', 'w2', 'w3'.  The value only depends on the
    projected classes, so orbit components in either slot contribute zero
    and different level-set representatives give the same number (up to the
    pushforward of the vectors).
    """
    h1 = horizontal_projection(pt, v1, tol)
    h2 = horizontal_projection(pt, v2, tol)
    if which == "g":
        return metric_g(h1, h2)
    if which in ("w1", "w2", "w3"):
        return omega(int(which[1]), h1, h2)
    raise ValueError(f"unknown pairing tag {which!r}")


@dataclass(frozen=True)
class SliceBasis:
    """Projector bundle at a level-set point.

    orbit/level/horizontal are g-orthogonal projectors; i_orbit(j) projects
    onto I_j applied to the orbit tangent.  Together with the horizontal
    slice, the orbit block and its three rotations reconstruct the whole
    tangent space (the five blocks are mutually g-orthogonal at level-set
    points).
    """

    base: ConfigPoint
    orbit_dim: int
    orbit: Callable[[TangentPair], TangentPair]
    level: Callable[[TangentPair], TangentPair]
    horizontal: Callable[[TangentPair], TangentPair]

    def i_orbit(self, j: int) -> Callable[[TangentPair], TangentPair]:
        def proj(v: TangentPair) -> TangentPair:
            return -1.0 * apply_I(j, self.orbit(apply_I(j, v)))

        return proj


def slice_basis(pt: ConfigPoint, tol: float | None = None) -> SliceBasis:
    """Bundle the tangent projectors at a level-set point."""
    _require_level(pt, tol)
    return SliceBasis(
        base=pt,
        orbit_dim=pt.trunc.p ** 2,
        orbit=lambda v: orbit_tangent_projection(pt, v, tol),
        level=lambda v: levelset_tangent_projection(pt, v, tol),
        horizontal=lambda v: horizontal_projection(pt, v, tol),
    )
