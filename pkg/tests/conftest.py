"""Shared fixtures: the two scalar reference scenarios and seeded generators.

Scenario S2 (first structure): p = q = 1, k^2 = 2, x = (sqrt 2, 0)^T,
X = (0, 1)^T.  Hand values: gamma gamma*/k^2 = (1+sqrt 3)/2, projected point
(x', X') = (sqrt(2/g2), sqrt(g2) ...) with g2 = (1+sqrt 3)/2, flat potential
at the projected point (sqrt 3 - 1)/2, K1 = (sqrt3-1)/2 - ln((1+sqrt3)/2)/2.

Scenario S3 (third structure): p = q = 1, k^2 = 2, graph operator a = 1,
x = (sqrt 2, sqrt 2/2)^T, X = (0, -sqrt 2/2)^T.  Hand values: spectral
operand 8, K3 = (sqrt 2 - 1)/2, boost h = (1/4) ln 2.
"""

from __future__ import annotations

import numpy as np
import pytest

from hkq import ConfigPoint, Truncation
from hkq.sampling import make_rng

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)

# hand-derived constants for the two scalar scenarios
S2_GAMMA2_OVER_K2 = (1.0 + SQRT3) / 2.0
S2_FLAT_AT_LEVEL = (SQRT3 - 1.0) / 2.0
S2_CHARACTER = -0.5 * np.log(S2_GAMMA2_OVER_K2)
S2_K1 = S2_FLAT_AT_LEVEL + S2_CHARACTER
S3_K3 = (SQRT2 - 1.0) / 2.0
S3_H = 0.25 * np.log(2.0)


@pytest.fixture
def trunc11() -> Truncation:
    return Truncation(1, 1, SQRT2)


@pytest.fixture
def s2_point(trunc11) -> ConfigPoint:
    return ConfigPoint(trunc11,
                       np.array([[SQRT2], [0.0]], dtype=complex),
                       np.array([[0.0], [1.0]], dtype=complex))


@pytest.fixture
def s3_point(trunc11) -> ConfigPoint:
    return ConfigPoint(trunc11,
                       np.array([[SQRT2], [SQRT2 / 2]], dtype=complex),
                       np.array([[0.0], [-SQRT2 / 2]], dtype=complex))


@pytest.fixture
def rng():
    return make_rng(20240817)
