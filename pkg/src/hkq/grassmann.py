"""Truncated restricted Grassmannian side of the quotient.

Subspaces are represented by gauge-fixed orthonormal frames; equality is
always judged by projector distance ||F1 F1* - F2 F2*||, never by frame
entries.  This module provides

  * psi1 and its section: the identification of stable configuration pairs
    (first structure) with cotangent data (P, eta), eta = (1/k^2) x X*,
  * psi3 and its section: the identification of stable pairs (third
    structure) with transversal subspace pairs (P, Q) via
    z = i (x + X)(x* - X*),
  * the graph operator of Q^perp over P, the characteristic angles
    cos(theta_i) = 1/sqrt(1 + a_i^2), and
  * the curvature tensor of the Grassmannian together with the spectral
    functional calculus of the operator Y -> 2(V V* Y + Y V* V) that feeds
    the curvature forms of the potentials.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import RANK_TOL, membership_tol
from .errors import (
    BadCotangent,
    NotInStable1,
    NotInStable3,
    NotTransversal,
    ShapeMismatch,
)
from .hkspace import ConfigPoint, Truncation
from .matcore import (
    as_matrix,
    dagger,
    fnorm,
    null_space_frame,
    orthonormal_range,
    svd,
)
from .moment import in_stable1, in_stable3

__all__ = [
    "CotangentPoint",
    "GrTangent",
    "OrbitPair",
    "Subspace",
    "characteristic_angles",
    "complement_frame",
    "curvature_R",
    "curvature_fun_apply",
    "curvature_op_I1",
    "curvature_op_I1_via_R",
    "graph_operator",
    "projector_distance",
    "psi1",
    "psi1_section",
    "psi3",
    "psi3_section",
]


@dataclass(frozen=True)
class Subspace:
    """A d-plane in C^n held as an n x d frame with orthonormal columns."""

    frame: np.ndarray

    def __post_init__(self):
        f = as_matrix(self.frame, "frame")
        d = f.shape[1]
        err = fnorm(dagger(f) @ f - np.eye(d))
        if err > 1e-9 * (1.0 + d):
            raise ShapeMismatch(f"frame columns not orthonormal, ||F*F - Id|| = {err:.3e}")
        object.__setattr__(self, "frame", f)

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    @property
    def ambient(self) -> int:
        return self.frame.shape[0]

    def projector(self) -> np.ndarray:
        return self.frame @ dagger(self.frame)


def projector_distance(a: Subspace, b: Subspace) -> float:
    """Gauge-independent distance ||P_a - P_b||_F between subspaces."""
    return fnorm(a.projector() - b.projector())


def complement_frame(sub: Subspace) -> np.ndarray:
    """Gauge-fixed orthonormal frame of the orthogonal complement."""
    return null_space_frame(dagger(sub.frame))


@dataclass(frozen=True)
class CotangentPoint:
    """Cotangent datum (P, eta) with eta an n x n matrix vanishing on P and
    ranging inside P (the compressed form of a map P^perp -> P)."""

    P: Subspace
    eta: np.ndarray

    def __post_init__(self):
        eta = as_matrix(self.eta, "eta")
        n = self.P.ambient
        if eta.shape != (n, n):
            raise BadCotangent(f"eta must be {n} x {n}, got {eta.shape}")
        f = self.P.frame
        scale = 1.0 + fnorm(eta)
        if fnorm(eta @ f) > 1e-7 * scale:
            raise BadCotangent("eta does not vanish on P")
        if fnorm(eta - f @ (dagger(f) @ eta)) > 1e-7 * scale:
            raise BadCotangent("range of eta is not inside P")
        object.__setattr__(self, "eta", eta)

    def fiber_coords(self) -> np.ndarray:
        """p x (n-p) matrix of eta relative to (F_P, F_Pperp) frames."""
        fperp = complement_frame(self.P)
        return dagger(self.P.frame) @ self.eta @ fperp


@dataclass(frozen=True)
class OrbitPair:
    """Transversal pair (P, Q), dim P = p, dim Q = q = n - p."""

    P: Subspace
    Q: Subspace

    def __post_init__(self):
        if self.P.ambient != self.Q.ambient:
            raise ShapeMismatch("P and Q live in different ambient spaces")
        if self.P.dim + self.Q.dim != self.P.ambient:
            raise ShapeMismatch(
                f"dim P + dim Q = {self.P.dim + self.Q.dim} != n = {self.P.ambient}"
            )

    def transversality(self) -> float:
        """sigma_min of the stacked frames; zero means P and Q intersect."""
        stacked = np.hstack([self.P.frame, self.Q.frame])
        s = np.linalg.svd(stacked, compute_uv=False)
        return float(s[-1])


@dataclass(frozen=True)
class GrTangent:
    """Tangent vector to the Grassmannian at a base plane, held as its
    (n-p) x p coordinate matrix relative to (F_P, F_Pperp)."""

    coords: np.ndarray
    at: Subspace | None = None

    def __post_init__(self):
        object.__setattr__(self, "coords", as_matrix(self.coords, "coords"))


def _range_frame_full(m: np.ndarray, expect: int, err: type, what: str) -> Subspace:
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        f = orthonormal_range(m, RANK_TOL)
    if f.shape[1] != expect:
        raise err(f"{what}: expected rank {expect}, detected {f.shape[1]}")
    return Subspace(f)


def psi1(pt: ConfigPoint, tol: float | None = None) -> CotangentPoint:
    """Map a stable pair (first structure) to its cotangent datum
    (Ran x, (1/k^2) x X*).  Constant on orbits of the first action."""
    if not in_stable1(pt, tol):
        raise NotInStable1("psi1 requires X*x = 0 and injective x")
    P = _range_frame_full(pt.x, pt.trunc.p, NotInStable1, "Ran x")
    eta = (pt.x @ dagger(pt.X)) / pt.trunc.k2
    return CotangentPoint(P, eta)


def psi1_section(cp: CotangentPoint, k: float) -> ConfigPoint:
    """Explicit section of psi1: x = k F_P, X = k eta* F_P.

    The result satisfies x*x = k^2 Id and X*x = 0 exactly, hence lies in the
    stable set, and psi1 reproduces (P, eta).  It is not level-normalized in
    the fiber direction (X*X != 0 in general); quotient.project1 moves it to
    the level set.
    """
    f = cp.P.frame
    n, p = f.shape
    q = n - p
    x = k * f
    X = k * (dagger(cp.eta) @ f)
    trunc = Truncation(p, q, k)
    return ConfigPoint(trunc, x, X)


def psi3(pt: ConfigPoint, tol: float | None = None) -> tuple[OrbitPair, np.ndarray]:
    """Map a stable pair (third structure) to (P, Q) and the orbit operator.

    z = i (x + X)(x* - X*) has spectrum {i k^2, 0} with eigenspaces
    P = Ran(x + X) and Q = Ker(x* - X*); both memberships are verified to
    1e-9 k^2.  psi3 is exactly constant on orbits of the third action.
    """
    if not in_stable3(pt, tol):
        raise NotInStable3(
            "psi3 requires x*x - X*X = k^2 Id, Hermitian X*x and full-rank x +/- X"
        )
    x, X = pt.x, pt.X
    k2 = pt.trunc.k2
    z = 1j * ((x + X) @ (dagger(x) - dagger(X)))
    P = _range_frame_full(x + X, pt.trunc.p, NotInStable3, "Ran(x + X)")
    fq = null_space_frame(dagger(x - X))
    if fq.shape[1] != pt.trunc.q:
        raise NotInStable3(
            f"Ker(x* - X*): expected dimension {pt.trunc.q}, got {fq.shape[1]}"
        )
    Q = Subspace(fq)
    check_tol = 1e-9 * k2 * (1.0 + fnorm(z) / k2)
    if fnorm(z @ P.frame - 1j * k2 * P.frame) > check_tol:
        raise NotInStable3("z does not act as i k^2 on Ran(x + X)")
    if fnorm(z @ Q.frame) > check_tol:
        raise NotInStable3("z does not vanish on Ker(x* - X*)")
    return OrbitPair(P, Q), z


def graph_operator(pair: OrbitPair, tol: float | None = None) -> np.ndarray:
    """Coordinate matrix of the operator A: P -> P^perp whose graph is
    Q^perp, relative to the gauge-fixed frames (F_P, F_Pperp).

    With F_Qperp a frame of Q^perp, M := F_P* F_Qperp must be invertible
    (transversality); then A = F_Pperp* F_Qperp M^-1 and the columns of
    F_P + F_Pperp A span Q^perp.
    """
    t = membership_tol(tol)
    fqp = complement_frame(pair.Q)
    m = dagger(pair.P.frame) @ fqp
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[-1] <= t * max(1.0, s[0]):
        raise NotTransversal(
            f"P and Q^perp-graph condition fails, sigma_min(F_P* F_Qperp) = "
            f"{0.0 if s.size == 0 else s[-1]:.3e}"
        )
    fpp = complement_frame(pair.P)
    return (dagger(fpp) @ fqp) @ np.linalg.inv(m)


def psi3_section(pair: OrbitPair, k: float, tol: float | None = None) -> ConfigPoint:
    """Canonical preimage of (P, Q) under psi3:

        x = k (F_P + (1/2) F_Pperp A),   X = -(k/2) F_Pperp A.

    Satisfies x*x - X*X = k^2 Id and X*x = -(k^2/4) A*A exactly, so it lies
    in the stable set of the third structure, and psi3 reproduces (P, Q).
    """
    a = graph_operator(pair, tol)
    fp = pair.P.frame
    fpp = complement_frame(pair.P)
    n, p = fp.shape
    x = k * (fp + 0.5 * (fpp @ a))
    X = -0.5 * k * (fpp @ a)
    return ConfigPoint(Truncation(p, n - p, k), x, X)


def characteristic_angles(pair: OrbitPair, tol: float | None = None) -> np.ndarray:
    """Ascending characteristic angles theta_i in [0, pi/2) of the pair,
    cos(theta_i) = 1/sqrt(1 + a_i^2) with a_i^2 the eigenvalues of A*A.

    Exactly p angles are reported (A*A is p x p; when p exceeds n - p the
    surplus angles are zero by rank).  Computed as arctan of the singular
    values of A, which keeps near-zero angles absolutely accurate where the
    squared spectrum would lose half the digits.
    """
    a = graph_operator(pair, tol)
    p = a.shape[1]
    s = np.linalg.svd(a, compute_uv=False)
    theta = np.zeros(p)
    theta[:s.size] = np.arctan(s)
    return np.sort(theta)


def _coords(v) -> np.ndarray:
    return v.coords if isinstance(v, GrTangent) else as_matrix(v)


def curvature_R(X, Y, Z) -> np.ndarray:
    """Curvature tensor of the Grassmannian in frame coordinates:

        R_{X,Y} Z = Y X* Z - Z Y* X + Z X* Y - X Y* Z.

    Antisymmetry in (X, Y) is exact.
    """
    x, y, z = _coords(X), _coords(Y), _coords(Z)
    if not (x.shape == y.shape == z.shape):
        raise ShapeMismatch(
            f"curvature operands must share a shape: {x.shape}, {y.shape}, {z.shape}"
        )
    xd, yd = dagger(x), dagger(y)
    return y @ xd @ z - z @ yd @ x + z @ xd @ y - x @ yd @ z


def curvature_op_I1(V, Y) -> np.ndarray:
    """The operator i R_{iV, V} applied to Y, in closed form:
    2 (V V* Y + Y V* V)."""
    v, y = _coords(V), _coords(Y)
    if v.shape != y.shape:
        raise ShapeMismatch(f"V {v.shape} and Y {y.shape} must match")
    return 2.0 * (v @ dagger(v) @ y + y @ dagger(v) @ v)


def curvature_op_I1_via_R(V, Y) -> np.ndarray:
    """Same operator evaluated through the general curvature tensor,
    i R_{iV, V} Y; used as the independent route in the identity checks."""
    v = _coords(V)
    return 1j * curvature_R(1j * v, v, Y)


def curvature_fun_apply(f, V) -> float:
    """Re-trace pairing g_Gr(f(Op) V, V) with Op = curvature_op_I1(V, .).

    Evaluated spectrally: with singular values sigma_i of V the operator
    acts on the singular direction u_i w_i* by 4 sigma_i^2, so the value is
    sum_i f(4 sigma_i^2) sigma_i^2.
    """
    v = _coords(V)
    _, s, _ = svd(v)
    vals = np.array([float(f(4.0 * si * si)) * si * si for si in s])
    return float(np.sum(vals))
