"""The truncated flat hyperkahler space of configuration pairs.

Points are pairs (x, X) of complex n x p matrices, n = p + q, carrying the
flat metric

    g((Z1,T1),(Z2,T2)) = Re Tr Z1* Z2 + Re Tr T1* T2,

the quaternionic triple of complex structures

    I1(Z,T) = (iZ, -iT),   I2(Z,T) = (T, -Z),   I3(Z,T) = (iT, iZ),

their symplectic forms omega_j = g(I_j ., .), the complex symplectic form
Omega = Tr(T1* Z2) - Tr(T2* Z1), the two group actions of the truncated
unitary/general-linear group of size p, and the flat hyperkahler potential
K = (1/4) Tr(x*x + X*X - k^2 Id).

The space is flat, so points and tangents are plain matrix pairs; all
curvature lives on the Grassmannian side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import HERMITIAN_TOL, UNITARY_TOL
from .errors import BadIndex, NotHermitian, NotUnitary, ShapeMismatch, Singular
from .matcore import as_matrix, dagger, fnorm, herm_fun, is_hermitian

__all__ = [
    "ConfigPoint",
    "GroupElement",
    "TangentPair",
    "Truncation",
    "act1",
    "act3",
    "apply_I",
    "flat_potential_K",
    "metric_g",
    "omega",
    "omega_C",
]


@dataclass(frozen=True)
class Truncation:
    """Dimensions (p, q) of the truncated plus/minus split and the level k.

    integrality_ok records whether k^2/2 is a positive integer, the condition
    under which the determinant character defining the quotient-potential
    formula exists as a group homomorphism to the circle.
    """

    p: int
    q: int
    k: float

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"need p, q >= 1, got p={self.p}, q={self.q}")
        if self.k == 0.0:
            raise ValueError("k must be nonzero")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def k2(self) -> float:
        return self.k * self.k

    @property
    def integrality_ok(self) -> bool:
        half = self.k2 / 2.0
        return abs(half - round(half)) < 1e-9 and round(half) >= 1

    def base_x(self) -> np.ndarray:
        """k [Id_p; 0], the x-component of the canonical base point."""
        x = np.zeros((self.n, self.p), dtype=np.complex128)
        x[: self.p, : self.p] = self.k * np.eye(self.p)
        return x


@dataclass(frozen=True)
class ConfigPoint:
    """A configuration pair (x, X) of n x p matrices over a truncation."""

    trunc: Truncation
    x: np.ndarray
    X: np.ndarray

    def __post_init__(self):
        x = as_matrix(self.x, "x")
        X = as_matrix(self.X, "X")
        shape = (self.trunc.n, self.trunc.p)
        if x.shape != shape or X.shape != shape:
            raise ShapeMismatch(
                f"expected {shape} matrices, got x {x.shape}, X {X.shape}"
            )
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "X", X)

    @staticmethod
    def base(trunc: Truncation) -> "ConfigPoint":
        """The level-set base point (k [Id; 0], 0)."""
        return ConfigPoint(trunc, trunc.base_x(),
                           np.zeros((trunc.n, trunc.p), dtype=np.complex128))


@dataclass(frozen=True)
class TangentPair:
    """A tangent vector (Z, T); both components share the point's shape."""

    Z: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        Z = as_matrix(self.Z, "Z")
        T = as_matrix(self.T, "T")
        if Z.shape != T.shape:
            raise ShapeMismatch(f"Z {Z.shape} and T {T.shape} must match")
        object.__setattr__(self, "Z", Z)
        object.__setattr__(self, "T", T)

    def __add__(self, other: "TangentPair") -> "TangentPair":
        return TangentPair(self.Z + other.Z, self.T + other.T)

    def __sub__(self, other: "TangentPair") -> "TangentPair":
        return TangentPair(self.Z - other.Z, self.T - other.T)

    def __mul__(self, scalar: float) -> "TangentPair":
        return TangentPair(self.Z * scalar, self.T * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "TangentPair":
        return TangentPair(-self.Z, -self.T)

    @staticmethod
    def zero(trunc: Truncation) -> "TangentPair":
        z = np.zeros((trunc.n, trunc.p), dtype=np.complex128)
        return TangentPair(z, z.copy())


@dataclass(frozen=True)
class GroupElement:
    """Invertible p x p matrix of the (complexified) structure group.

    Optional flags assert extra structure: `unitary` (g* g = Id) or
    `positive` (Hermitian with positive spectrum).  The polar decomposition
    of the complexified group is exercised by composing one of each.
    """

    g: np.ndarray
    unitary: bool = False
    positive: bool = False

    def __post_init__(self):
        g = as_matrix(self.g, "g")
        if g.shape[0] != g.shape[1]:
            raise ShapeMismatch(f"group element must be square, got {g.shape}")
        sign, logdet = np.linalg.slogdet(g)
        if sign == 0 or not np.isfinite(logdet):
            raise Singular("group element is singular")
        if self.unitary:
            err = fnorm(dagger(g) @ g - np.eye(g.shape[0]))
            if err > UNITARY_TOL * (1.0 + fnorm(g)):
                raise NotUnitary(f"unitary flag set but ||g*g - Id|| = {err:.3e}")
        if self.positive:
            if not is_hermitian(g):
                raise NotHermitian("positive flag set but g is not Hermitian")
            lam = np.linalg.eigvalsh(0.5 * (g + dagger(g)))
            if np.any(lam <= 0):
                raise Singular(
                    f"positive flag set but min eigenvalue is {lam.min():.3e}"
                )
        object.__setattr__(self, "g", g)

    @staticmethod
    def identity(p: int) -> "GroupElement":
        return GroupElement(np.eye(p, dtype=np.complex128),
                            unitary=True, positive=True)

    def inv(self) -> np.ndarray:
        return np.linalg.inv(self.g)


def metric_g(v1: TangentPair, v2: TangentPair) -> float:
    """Flat metric Re Tr Z1*Z2 + Re Tr T1*T2."""
    if v1.Z.shape != v2.Z.shape:
        raise ShapeMismatch(f"tangent shapes differ: {v1.Z.shape} vs {v2.Z.shape}")
    return float(
        np.sum(v1.Z.conj() * v2.Z).real + np.sum(v1.T.conj() * v2.T).real
    )


def g_norm(v: TangentPair) -> float:
    return float(np.sqrt(max(metric_g(v, v), 0.0)))


def apply_I(j: int, v: TangentPair) -> TangentPair:
    """Apply the j-th complex structure; the formulas are exact."""
    if j == 1:
        return TangentPair(1j * v.Z, -1j * v.T)
    if j == 2:
        return TangentPair(v.T, -v.Z)
    if j == 3:
        return TangentPair(1j * v.T, 1j * v.Z)
    raise BadIndex(f"complex-structure index must be 1, 2 or 3, got {j}")


def omega(j: int, v1: TangentPair, v2: TangentPair) -> float:
    """Symplectic form omega_j(v1, v2) = g(I_j v1, v2)."""
    return metric_g(apply_I(j, v1), v2)


def omega_C(v1: TangentPair, v2: TangentPair) -> complex:
    """Complex symplectic form Tr(T1* Z2) - Tr(T2* Z1).

    Its real and imaginary parts are omega_2 and omega_3, and it is
    I1-holomorphic: Omega(I1 v1, v2) = i Omega(v1, v2).
    """
    if v1.Z.shape != v2.Z.shape:
        raise ShapeMismatch(f"tangent shapes differ: {v1.Z.shape} vs {v2.Z.shape}")
    return complex(np.sum(v1.T.conj() * v2.Z) - np.sum(v2.T.conj() * v1.Z))


def act1(g: GroupElement, pt: ConfigPoint) -> ConfigPoint:
    """Holomorphic action for the first structure: (x, X) -> (x g^-1, X g*).

    For unitary g the two slots transform identically by g^-1.
    """
    ginv = g.inv()
    return ConfigPoint(pt.trunc, pt.x @ ginv, pt.X @ dagger(g.g))


def infinitesimal_act1(a: np.ndarray, pt: ConfigPoint) -> TangentPair:
    """Derivative of act1 along the one-parameter group of exp(-t a):
    a.(x, X) = (-x a, X a*)."""
    return TangentPair(-pt.x @ a, pt.X @ dagger(a))


def orbit_direction(a: np.ndarray, pt: ConfigPoint) -> TangentPair:
    """Tangent to the unitary-group orbit: a.(x, X) = (-x a, -X a) for
    skew-Hermitian a (both group actions agree there)."""
    return TangentPair(-pt.x @ a, -pt.X @ a)


def act3(h: np.ndarray, u: GroupElement, pt: ConfigPoint) -> ConfigPoint:
    """Holomorphic action for the third structure.

    The positive part is parametrized by a Hermitian h (equal to i times a
    skew-Hermitian Lie-algebra element, so cosh/sinh are real functional
    calculus):

        x' = x u^-1 cosh(h) - X u^-1 sinh(h)
        X' = -x u^-1 sinh(h) + X u^-1 cosh(h).

    act3(0, Id, pt) is the identity exactly.
    """
    h = as_matrix(h, "h")
    if h.shape != (pt.trunc.p, pt.trunc.p):
        raise ShapeMismatch(f"h must be p x p, got {h.shape}")
    if not is_hermitian(h, HERMITIAN_TOL):
        raise NotHermitian("act3 parameter h must be Hermitian")
    if not u.unitary:
        err = fnorm(dagger(u.g) @ u.g - np.eye(u.g.shape[0]))
        if err > UNITARY_TOL * (1.0 + fnorm(u.g)):
            raise NotUnitary(f"act3 needs a unitary element, ||u*u - Id|| = {err:.3e}")
    if fnorm(h) == 0.0:
        xu = pt.x @ u.inv()
        Xu = pt.X @ u.inv()
        return ConfigPoint(pt.trunc, xu, Xu)
    c = herm_fun(h, np.cosh)
    s = herm_fun(h, np.sinh)
    uinv = u.inv()
    xu = pt.x @ uinv
    Xu = pt.X @ uinv
    return ConfigPoint(pt.trunc, xu @ c - Xu @ s, -xu @ s + Xu @ c)


def flat_potential_K(pt: ConfigPoint) -> float:
    """Flat hyperkahler potential (1/4) Tr(x*x + X*X - k^2 Id)."""
    p = pt.trunc.p
    tr = np.sum(np.abs(pt.x) ** 2) + np.sum(np.abs(pt.X) ** 2) - pt.trunc.k2 * p
    return float(0.25 * tr)
