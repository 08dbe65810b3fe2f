"""Deterministic random generators for points, tangents and group elements.

The generator is numpy's PCG64 behind default_rng; normal deviates are
produced by an explicit Box-Muller transform of uniform draws so the stream
is a documented, portable function of the seed.  Every sampler is a pure
function of (parameters, generator state).
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateSample
from .grassmann import CotangentPoint, OrbitPair, Subspace, complement_frame
from .hkspace import ConfigPoint, GroupElement, TangentPair, Truncation, act3
from .matcore import dagger, hermitian_part, orthonormal_range, skew_part
from .quotient import project1

__all__ = [
    "gaussian_complex",
    "gaussian_real",
    "make_rng",
    "random_gr_tangent",
    "random_group_positive",
    "random_hermitian_ball",
    "random_skew",
    "random_tangent",
    "random_unitary",
    "sample_cotangent",
    "sample_level",
    "sample_orbit_pair",
    "sample_point",
    "sample_stable1",
    "sample_stable3",
]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed))


def gaussian_real(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard normals via Box-Muller on uniform draws."""
    size = int(np.prod(shape))
    u1 = 1.0 - rng.random(size)  # (0, 1]
    u2 = rng.random(size)
    z = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
    return z.reshape(shape)


def gaussian_complex(rng: np.random.Generator, shape) -> np.ndarray:
    """Complex normals with unit total variance (E|z|^2 = 1)."""
    size = int(np.prod(shape))
    u1 = 1.0 - rng.random(size)
    u2 = rng.random(size)
    r = np.sqrt(-np.log(u1))
    z = r * np.exp(2j * np.pi * u2)
    return z.reshape(shape)


def random_tangent(trunc: Truncation, rng: np.random.Generator,
                   scale: float = 1.0) -> TangentPair:
    shape = (trunc.n, trunc.p)
    return TangentPair(scale * gaussian_complex(rng, shape),
                       scale * gaussian_complex(rng, shape))


def random_skew(p: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return scale * skew_part(gaussian_complex(rng, (p, p)))


def random_hermitian_ball(p: int, rng: np.random.Generator,
                          radius: float = 1.0) -> np.ndarray:
    """Hermitian matrix with operator norm at most `radius`."""
    h = hermitian_part(gaussian_complex(rng, (p, p)))
    nrm = np.linalg.norm(h, 2)
    if nrm == 0.0:
        return h
    return h * (radius * rng.random() / nrm)


def random_unitary(p: int, rng: np.random.Generator) -> GroupElement:
    """Haar-like unitary: QR of a complex Gaussian with phase-fixed diagonal."""
    q, r = np.linalg.qr(gaussian_complex(rng, (p, p)))
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return GroupElement(q, unitary=True)


def random_group_positive(p: int, rng: np.random.Generator,
                          spread: float = 0.5) -> GroupElement:
    """Positive-definite element exp(spread * Hermitian ball)."""
    from .matcore import herm_fun

    h = random_hermitian_ball(p, rng, radius=spread)
    return GroupElement(herm_fun(h, np.exp), positive=True)


def sample_stable1(trunc: Truncation, rng: np.random.Generator,
                   eps: float = 0.3, max_retries: int = 100) -> ConfigPoint:
    """Point of the first stable set: x = base + eps * Gaussian (resampled
    until sigma_min(x) > 0.1 sigma_max), X Gaussian with the x-range
    component removed so X*x = 0 to round-off."""
    base = trunc.base_x()
    for _ in range(max_retries):
        x = base + eps * gaussian_complex(rng, base.shape)
        s = np.linalg.svd(x, compute_uv=False)
        if s[-1] > 0.1 * s[0]:
            break
    else:
        raise DegenerateSample(
            f"no well-conditioned x after {max_retries} draws (eps={eps})"
        )
    X = gaussian_complex(rng, base.shape)
    X = X - x @ np.linalg.solve(dagger(x) @ x, dagger(x) @ X)
    return ConfigPoint(trunc, x, X)


def sample_level(trunc: Truncation, rng: np.random.Generator,
                 eps: float = 0.3) -> ConfigPoint:
    """Point of the level set: stable1 sample pushed down by project1."""
    return project1(sample_stable1(trunc, rng, eps)).point


def sample_stable3(trunc: Truncation, rng: np.random.Generator,
                   eps: float = 0.3) -> ConfigPoint:
    """Point of the third stable set: level sample moved by the third action
    with a random Hermitian parameter (norm <= 1) and unitary part."""
    pt = sample_level(trunc, rng, eps)
    h = random_hermitian_ball(trunc.p, rng, radius=1.0)
    u = random_unitary(trunc.p, rng)
    return act3(h, u, pt)


def sample_point(space: str, trunc: Truncation, rng: np.random.Generator,
                 eps: float = 0.3) -> ConfigPoint:
    if space == "stable1":
        return sample_stable1(trunc, rng, eps)
    if space == "level":
        return sample_level(trunc, rng, eps)
    if space == "stable3":
        return sample_stable3(trunc, rng, eps)
    raise ValueError(f"unknown sample space {space!r}")


def random_subspace(n: int, d: int, rng: np.random.Generator) -> Subspace:
    return Subspace(orthonormal_range(gaussian_complex(rng, (n, d))))


def sample_cotangent(trunc: Truncation, rng: np.random.Generator,
                     scale: float = 1.0) -> CotangentPoint:
    """Random cotangent datum: random base plane, fiber built from a random
    coordinate matrix so the structural invariants hold exactly."""
    P = random_subspace(trunc.n, trunc.p, rng)
    fperp = complement_frame(P)
    coeff = scale * gaussian_complex(rng, (trunc.p, trunc.q))
    eta = P.frame @ coeff @ dagger(fperp)
    return CotangentPoint(P, eta)


def sample_orbit_pair(trunc: Truncation, rng: np.random.Generator,
                      min_transversality: float = 0.05,
                      max_retries: int = 100) -> OrbitPair:
    """Random transversal pair (P, Q); resampled until the stacked-frame
    smallest singular value clears the requested margin."""
    for _ in range(max_retries):
        pair = OrbitPair(
            random_subspace(trunc.n, trunc.p, rng),
            random_subspace(trunc.n, trunc.q, rng),
        )
        if pair.transversality() > min_transversality:
            return pair
    raise DegenerateSample(
        f"no transversal pair after {max_retries} draws "
        f"(margin {min_transversality})"
    )


def random_gr_tangent(trunc: Truncation, rng: np.random.Generator,
                      scale: float = 1.0) -> np.ndarray:
    """Random Grassmannian tangent coordinate matrix, (n-p) x p."""
    return scale * gaussian_complex(rng, (trunc.q, trunc.p))
