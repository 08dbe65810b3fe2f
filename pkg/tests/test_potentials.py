import numpy as np
import pytest

from conftest import S2_CHARACTER, S2_FLAT_AT_LEVEL, S2_K1, S3_K3
from hkq.errors import NotInStable1, NotPositive, NotPositiveDefinite
from hkq.grassmann import psi3, psi3_section
from hkq.hkspace import ConfigPoint, GroupElement, Truncation, act1, act3, flat_potential_K
from hkq.matcore import dagger, fnorm, hermitian_part
from hkq.potentials import (
    IntegralityWarning,
    K1_closed,
    K1_curvature,
    K1_fiber,
    K3_commuting_form,
    K3_hat_angles,
    K3_hat_cotangent,
    K3_level,
    K3_similarity,
    K3_spectral,
    character_log_term,
    curvature_weight_k1,
    curvature_weight_k3hat,
    evaluate_routes,
    fiber_coordinate,
    quotient_potential,
)
from hkq.quotient import project1
from hkq.sampling import (
    make_rng,
    random_hermitian_ball,
    random_unitary,
    sample_level,
    sample_orbit_pair,
    sample_stable1,
    sample_stable3,
)

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)


def col(*vals):
    return np.array([[v] for v in vals], dtype=complex)


class TestWeights:
    def test_k1_weight_at_zero_and_continuity(self):
        assert curvature_weight_k1(0.0) == 0.25
        # series branch against the raw formula at the same small argument
        u = 9.9e-9
        s = np.expm1(0.5 * np.log1p(u))
        raw = (s - np.log1p(0.5 * s)) / u
        assert abs(curvature_weight_k1(u) - raw) <= 1e-12

    def test_k1_weight_value(self):
        want = 0.5 * (SQRT3 - 1.0 - np.log((1.0 + SQRT3) / 2.0))
        assert abs(curvature_weight_k1(2.0) - want) <= 1e-15

    def test_k3hat_weight(self):
        assert curvature_weight_k3hat(0.0) == 0.5
        assert abs(curvature_weight_k3hat(2.0) - (SQRT3 - 1.0) / 2.0) <= 1e-15
        assert abs(curvature_weight_k3hat(1e-11) - 0.5) <= 1e-11


class TestK1:
    def test_base_point_zero(self, trunc11):
        assert abs(K1_closed(ConfigPoint.base(trunc11))) <= 1e-14

    def test_zero_section_reduces_to_logdet(self, rng):
        tr = Truncation(3, 2, SQRT2)
        pt = sample_stable1(tr, rng)
        x_only = ConfigPoint(tr, pt.x, np.zeros_like(pt.X))
        lam = np.linalg.eigvalsh(dagger(pt.x) @ pt.x)
        want = 0.25 * tr.k2 * np.sum(np.log(lam / tr.k2))
        assert abs(K1_closed(x_only) - want) <= 1e-12

    def test_s2_all_routes(self, s2_point):
        for route in (K1_closed, K1_fiber, K1_curvature):
            assert abs(route(s2_point) - S2_K1) <= 1e-12
        report = quotient_potential(s2_point)
        assert abs(report.value - S2_K1) <= 1e-12
        assert abs(report.extras["flat_at_level"] - S2_FLAT_AT_LEVEL) <= 1e-12
        assert abs(report.extras["character"] - S2_CHARACTER) <= 1e-12

    def test_three_route_agreement_random(self, rng):
        for (p, q) in ((1, 3), (2, 2), (4, 3)):
            tr = Truncation(p, q, SQRT2)
            pt = sample_stable1(tr, rng)
            a, b, c = K1_closed(pt), K1_fiber(pt), K1_curvature(pt)
            assert abs(a - b) <= 1e-10 * (1 + abs(a))
            assert abs(a - c) <= 1e-9 * (1 + abs(a))

    def test_rejects_unstable(self, trunc11):
        bad = ConfigPoint(trunc11, col(1.0, 0.0), col(1.0, 0.0))
        with pytest.raises(NotInStable1):
            K1_closed(bad)

    def test_integrality_warning(self, rng):
        tr = Truncation(1, 1, 1.0)  # k^2/2 = 1/2
        pt = sample_stable1(tr, rng)
        with pytest.warns(IntegralityWarning):
            K1_closed(pt)


class TestCharacter:
    def test_identity(self):
        assert character_log_term(GroupElement.identity(2), SQRT2) == 0.0

    def test_s2_scalar(self, s2_point):
        g = project1(s2_point).group_part
        assert abs(character_log_term(g, SQRT2) - S2_CHARACTER) <= 1e-12

    def test_commuting_multiplicativity(self):
        g1 = GroupElement(np.diag([2.0, 0.5]), positive=True)
        g2 = GroupElement(np.diag([3.0, 1.0]), positive=True)
        g12 = GroupElement(g1.g @ g2.g, positive=True)
        total = character_log_term(g12, SQRT2)
        parts = character_log_term(g1, SQRT2) + character_log_term(g2, SQRT2)
        assert abs(total - parts) <= 1e-12

    def test_rejects_non_positive(self):
        u = GroupElement(np.array([[1.0j]]), unitary=True)
        with pytest.raises(NotPositiveDefinite):
            character_log_term(u, SQRT2)

    def test_warns_on_non_integral(self):
        with pytest.warns(IntegralityWarning):
            character_log_term(GroupElement.identity(1), 1.0)


class TestK3:
    def test_s3_pinned_value(self, s3_point):
        assert abs(K3_spectral(s3_point) - S3_K3) <= 1e-13
        assert abs(K3_similarity(s3_point) - S3_K3) <= 1e-13
        assert abs(K3_level(s3_point) - S3_K3) <= 1e-12
        assert abs(K3_commuting_form(s3_point) - S3_K3) <= 1e-13
        pair, _ = psi3(s3_point)
        assert abs(K3_hat_angles(pair, SQRT2) - S3_K3) <= 1e-13

    def test_zero_fiber_vanishes(self, rng):
        tr = Truncation(2, 2, SQRT2)
        pt = sample_stable1(tr, rng)
        zero_fiber = project1(ConfigPoint(tr, pt.x, np.zeros_like(pt.X))).point
        assert abs(K3_spectral(zero_fiber)) <= 1e-12

    def test_route_agreement_random(self, rng):
        for (p, q) in ((1, 2), (3, 3), (2, 4)):
            tr = Truncation(p, q, SQRT2)
            pt = sample_stable3(tr, rng)
            routes = evaluate_routes(pt, "k3")
            vals = list(routes.values())
            assert max(vals) - min(vals) <= 1e-8 * (1 + abs(vals[0]))

    def test_commuting_form_agrees_at_sections(self, rng):
        tr = Truncation(3, 2, SQRT2)
        pair = sample_orbit_pair(tr, rng)
        pt = psi3_section(pair, tr.k)
        assert abs(K3_commuting_form(pt) - K3_spectral(pt)) <= 1e-11

    def test_commuting_form_fails_off_locus(self, rng):
        # boost a level point with a parameter that does not commute with
        # x*X to leave the commuting locus; the ordered-product routes keep
        # agreeing with the level route while the symmetric form loses
        # positivity
        rng = make_rng(7)
        found = False
        for _ in range(60):
            tr = Truncation(int(rng.integers(2, 5)), int(rng.integers(2, 5)), SQRT2)
            pt = sample_stable3(tr, rng)
            xx = dagger(pt.x) @ pt.x
            XX = dagger(pt.X) @ pt.X
            xX = dagger(pt.x) @ pt.X
            d = tr.k2**2 * np.eye(tr.p) + 4 * xx @ XX - 4 * xX @ xX
            lam = np.linalg.eigvalsh(hermitian_part(d))
            if lam.min() < -1e-6:
                found = True
                assert abs(K3_spectral(pt) - K3_level(pt)) <= 1e-9 * (
                    1 + abs(K3_level(pt)))
                with pytest.raises(NotPositive):
                    K3_commuting_form(pt)
                break
        assert found, "no non-commuting witness found in 60 draws"

    def test_invariance_under_compact_action(self, rng):
        tr = Truncation(2, 3, SQRT2)
        pt = sample_stable3(tr, rng)
        u = random_unitary(2, rng)
        moved = act3(np.zeros((2, 2)), u, pt)
        assert abs(K3_spectral(moved) - K3_spectral(pt)) <= 1e-10 * (
            1 + abs(K3_spectral(pt)))


class TestK3Hat:
    def test_zero_tangent(self):
        assert K3_hat_cotangent(np.zeros((2, 2)), SQRT2) == 0.0

    def test_scalar_value(self):
        # 4 V*V = 2 at k^2 = 2
        v = np.array([[1.0 / SQRT2]])
        want = (SQRT3 - 1.0) / 2.0
        assert abs(K3_hat_cotangent(v, SQRT2, "direct") - want) <= 1e-14
        assert abs(K3_hat_cotangent(v, SQRT2, "curvature") - want) <= 1e-14

    def test_route_agreement_random(self, rng):
        for _ in range(10):
            v = np.asarray(0.7 * (rng.random((3, 3)) + 1j * rng.random((3, 3))))
            a = K3_hat_cotangent(v, SQRT2, "direct")
            b = K3_hat_cotangent(v, SQRT2, "curvature")
            assert abs(a - b) <= 1e-11 * (1 + abs(a))

    def test_angles_orthogonal_pair_zero(self, rng):
        tr = Truncation(2, 2, SQRT2)
        pt = sample_level(tr, rng)
        x_only = project1(ConfigPoint(tr, pt.x, np.zeros_like(pt.X))).point
        pair, _ = psi3(x_only)
        assert abs(K3_hat_angles(pair, SQRT2)) <= 1e-12

    def test_angles_two_by_two(self):
        # a = diag(1, sqrt 3) at k^2 = 2: (1/2)((sqrt2 - 1) + (2 - 1))
        from hkq.grassmann import OrbitPair, Subspace, complement_frame

        p1 = Subspace(np.array([[1, 0], [0, 1], [0, 0], [0, 0]], dtype=complex))
        a = np.diag([1.0, SQRT3]).astype(complex)
        fperp = np.array([[0, 0], [0, 0], [1, 0], [0, 1]], dtype=complex)
        graph = np.linalg.qr(p1.frame + fperp @ a)[0]
        q = Subspace(complement_frame(Subspace(graph)))
        val = K3_hat_angles(OrbitPair(p1, q), SQRT2)
        assert abs(val - 0.5 * ((SQRT2 - 1.0) + 1.0)) <= 1e-12

    def test_matches_spectral_at_sections(self, rng):
        tr = Truncation(2, 3, SQRT2)
        pair = sample_orbit_pair(tr, rng)
        pt = psi3_section(pair, tr.k)
        assert abs(K3_hat_angles(pair, tr.k) - K3_spectral(pt)) <= 1e-10 * (
            1 + abs(K3_spectral(pt)))


class TestQuotientPotential:
    def test_base_point(self, trunc11):
        assert abs(quotient_potential(ConfigPoint.base(trunc11)).value) <= 1e-14

    def test_equals_closed_form(self, rng):
        tr = Truncation(3, 2, SQRT2)
        pt = sample_stable1(tr, rng)
        report = quotient_potential(pt)
        assert abs(report.value - K1_closed(pt)) <= 1e-10 * (1 + abs(report.value))
        assert report.route == "level"
        assert report.label == "K1"
        assert len(report.inputs_digest) == 12

    def test_unitary_invariance(self, rng):
        tr = Truncation(2, 2, SQRT2)
        pt = sample_stable1(tr, rng)
        u = random_unitary(2, rng)
        a = quotient_potential(pt).value
        b = quotient_potential(act1(u, pt)).value
        assert abs(a - b) <= 1e-10 * (1 + abs(a))

    def test_noninvariance_witness(self, rng):
        tr = Truncation(2, 2, SQRT2)
        pt = sample_stable1(tr, rng)
        g = GroupElement(2.0 * np.eye(2), positive=True)
        assert abs(K1_closed(act1(g, pt)) - K1_closed(pt)) > 1e-3

    def test_fiber_coordinate_shape(self, s2_point):
        v = fiber_coordinate(s2_point)
        assert v.coords.shape == (1, 1)
        assert abs(abs(v.coords[0, 0]) - 1.0 / SQRT2) <= 1e-12
