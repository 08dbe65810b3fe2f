"""Tolerance defaults.

Membership checks (level set, stable sets, transversality) use a relative
tolerance that scales with k^2 because the defining constraints are
homogeneous of degree 2 in (x, X).  The default can be overridden by the
HKQ_TOL environment variable or per call.
"""

from __future__ import annotations

import os

DEFAULT_MEMBERSHIP_TOL = 1e-9

# Hermitian / unitary / structural pre-checks (relative, dimensionless).
HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10

# Rank cutoff used when extracting ranges and null spaces from an SVD.
RANK_TOL = 1e-10


def membership_tol(tol: float | None = None) -> float:
    """Resolve the membership tolerance: explicit arg > HKQ_TOL env > default."""
    if tol is not None:
        return float(tol)
    env = os.environ.get("HKQ_TOL")
    if env is not None:
        return float(env)
    return DEFAULT_MEMBERSHIP_TOL
