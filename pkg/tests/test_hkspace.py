import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkq.errors import BadIndex, NotHermitian, NotUnitary, ShapeMismatch, Singular
from hkq.hkspace import (
    ConfigPoint,
    GroupElement,
    TangentPair,
    Truncation,
    act1,
    act3,
    apply_I,
    flat_potential_K,
    metric_g,
    omega,
    omega_C,
)
from hkq.matcore import dagger, fnorm
from hkq.sampling import gaussian_complex, make_rng, random_tangent, random_unitary


def col(*vals):
    return np.array([[v] for v in vals], dtype=complex)


class TestTruncation:
    def test_integrality_flag(self):
        assert Truncation(1, 1, np.sqrt(2.0)).integrality_ok
        assert Truncation(2, 3, 2.0).integrality_ok          # k^2/2 = 2
        assert not Truncation(1, 1, 1.0).integrality_ok      # k^2/2 = 1/2
        assert not Truncation(1, 1, np.sqrt(3.0)).integrality_ok

    def test_rejects_bad_dims(self):
        with pytest.raises(ValueError):
            Truncation(0, 1, 1.0)
        with pytest.raises(ValueError):
            Truncation(1, 1, 0.0)

    def test_config_point_shape_check(self, trunc11):
        with pytest.raises(ShapeMismatch):
            ConfigPoint(trunc11, np.zeros((3, 1)), np.zeros((2, 1)))


# hypothesis strategy: small tangent pairs with bounded float entries
def tangent_pairs(max_dim=3):
    def build(p, q, zr, zi, tr, ti):
        n = p + q
        shape = (n, p)
        need = n * p
        z = (np.array(zr[:need]) + 1j * np.array(zi[:need])).reshape(shape)
        t = (np.array(tr[:need]) + 1j * np.array(ti[:need])).reshape(shape)
        return TangentPair(z, t)

    dim = st.integers(1, max_dim)
    floats = st.lists(st.floats(-8, 8), min_size=36, max_size=36)
    return st.builds(build, dim, dim, floats, floats, floats, floats)


class TestComplexStructures:
    @given(tangent_pairs())
    @settings(max_examples=60, deadline=None)
    def test_quaternion_relations_exact(self, v):
        for (a, b, c) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            got = apply_I(a, apply_I(b, v))
            want = apply_I(c, v)
            assert np.array_equal(got.Z, want.Z)
            assert np.array_equal(got.T, want.T)
        for j in (1, 2, 3):
            twice = apply_I(j, apply_I(j, v))
            assert np.array_equal(twice.Z, -v.Z)
            assert np.array_equal(twice.T, -v.T)

    def test_displayed_formulas(self):
        v = TangentPair(col(1.0, 2.0j), col(3.0, -1.0j))
        i1 = apply_I(1, v)
        assert np.array_equal(i1.Z, 1j * v.Z) and np.array_equal(i1.T, -1j * v.T)
        i2 = apply_I(2, v)
        assert np.array_equal(i2.Z, v.T) and np.array_equal(i2.T, -v.Z)
        i3 = apply_I(3, v)
        assert np.array_equal(i3.Z, 1j * v.T) and np.array_equal(i3.T, 1j * v.Z)

    def test_bad_index(self):
        v = TangentPair(col(1.0), col(0.0))
        with pytest.raises(BadIndex):
            apply_I(4, v)


class TestMetricAndForms:
    def test_unit_vector(self, trunc11):
        e = np.zeros((2, 1), dtype=complex)
        e[0, 0] = 1.0
        v = TangentPair(e, np.zeros_like(e))
        assert metric_g(v, v) == 1.0

    def test_i1_isometry(self):
        v = TangentPair(col(1.0, -2.0j), col(0.5j, 1.0))
        assert abs(metric_g(apply_I(1, v), apply_I(1, v)) - metric_g(v, v)) < 1e-15

    def test_real_imaginary_orthogonality(self):
        v1 = TangentPair(col(1.0, 0.0), col(0.0, 0.0))
        v2 = TangentPair(col(1.0j, 0.0), col(0.0, 0.0))
        assert metric_g(v1, v2) == 0.0

    @given(tangent_pairs())
    @settings(max_examples=60, deadline=None)
    def test_compatibility_and_antisymmetry(self, v):
        w = TangentPair(v.T, v.Z)  # a second, correlated vector
        for j in (1, 2, 3):
            assert abs(omega(j, v, v)) <= 1e-12 * (1 + metric_g(v, v))
            lhs = omega(j, v, w)
            rhs = metric_g(apply_I(j, v), w)
            assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))

    def test_omega1_example(self):
        v1 = TangentPair(col(1.0, 0.0), col(0.0, 0.0))
        v2 = TangentPair(col(1.0j, 0.0), col(0.0, 0.0))
        assert abs(omega(1, v1, v2) - 1.0) < 1e-15

    def test_omega2_example(self):
        v1 = TangentPair(col(1.0, 0.0), col(0.0, 0.0))
        v2 = TangentPair(col(0.0, 0.0), col(1.0, 0.0))
        assert abs(omega(2, v1, v2) - (-1.0)) < 1e-15

    def test_omega_C_substitutions(self, rng):
        z = gaussian_complex(rng, (3, 2))
        t = gaussian_complex(rng, (3, 2))
        zero = np.zeros_like(z)
        val = omega_C(TangentPair(z, zero), TangentPair(zero, t))
        assert abs(val - (-np.trace(dagger(t) @ z))) <= 1e-12
        val2 = omega_C(TangentPair(zero, t), TangentPair(z, zero))
        assert abs(val2 - np.trace(dagger(t) @ z)) <= 1e-12
        v = TangentPair(z, t)
        assert abs(omega_C(v, v)) <= 1e-12
        w = random_tangent(Truncation(2, 1, 1.0), rng)
        assert abs(omega_C(apply_I(1, v), w) - 1j * omega_C(v, w)) <= 1e-12

    def test_omega_matches_omega_C(self, rng):
        tr = Truncation(2, 2, 1.0)
        v1, v2 = random_tangent(tr, rng), random_tangent(tr, rng)
        om = omega_C(v1, v2)
        assert abs(om.real - omega(2, v1, v2)) <= 1e-12
        assert abs(om.imag - omega(3, v1, v2)) <= 1e-12


class TestGroupElement:
    def test_rejects_singular(self):
        with pytest.raises(Singular):
            GroupElement(np.zeros((2, 2)))

    def test_unitary_flag_checked(self):
        with pytest.raises(NotUnitary):
            GroupElement(2.0 * np.eye(2), unitary=True)

    def test_positive_flag_checked(self):
        with pytest.raises(Singular):
            GroupElement(-np.eye(2), positive=True)
        with pytest.raises(NotHermitian):
            GroupElement(np.array([[1.0, 1.0], [0.0, 1.0]]), positive=True)


class TestAct1:
    def test_identity(self, s2_point):
        out = act1(GroupElement.identity(1), s2_point)
        assert np.array_equal(out.x, s2_point.x)
        assert np.array_equal(out.X, s2_point.X)

    def test_scalar_two(self, s2_point):
        g = GroupElement(np.array([[2.0]]), positive=True)
        out = act1(g, s2_point)
        assert np.allclose(out.x, s2_point.x / 2)
        assert np.allclose(out.X, 2 * s2_point.X)

    def test_scalar_unitary_i(self, s2_point):
        u = GroupElement(np.array([[1.0j]]), unitary=True)
        out = act1(u, s2_point)
        assert np.allclose(out.x, -1j * s2_point.x)
        assert np.allclose(out.X, -1j * s2_point.X)

    def test_composition(self, rng):
        tr = Truncation(3, 2, 1.5)
        pt = ConfigPoint(tr, gaussian_complex(rng, (5, 3)) + tr.base_x(),
                         gaussian_complex(rng, (5, 3)))
        g = GroupElement(np.eye(3) + 0.3 * gaussian_complex(rng, (3, 3)))
        h = GroupElement(np.eye(3) + 0.3 * gaussian_complex(rng, (3, 3)))
        gh = GroupElement(g.g @ h.g)
        lhs = act1(gh, pt)
        rhs = act1(g, act1(h, pt))
        assert fnorm(lhs.x - rhs.x) <= 1e-10 * (1 + fnorm(rhs.x))
        assert fnorm(lhs.X - rhs.X) <= 1e-10 * (1 + fnorm(rhs.X))


class TestAct3:
    def test_identity(self, s3_point):
        out = act3(np.zeros((1, 1)), GroupElement.identity(1), s3_point)
        assert np.array_equal(out.x, s3_point.x)
        assert np.array_equal(out.X, s3_point.X)

    def test_scalar_boost(self, s2_point):
        t = 0.37
        out = act3(np.array([[t]]), GroupElement.identity(1), s2_point)
        c, s = np.cosh(t), np.sinh(t)
        assert np.allclose(out.x, s2_point.x * c - s2_point.X * s)
        assert np.allclose(out.X, -s2_point.x * s + s2_point.X * c)

    def test_inverse_composition(self, s3_point):
        h = np.array([[0.8]])
        ident = GroupElement.identity(1)
        back = act3(-h, ident, act3(h, ident, s3_point))
        assert fnorm(back.x - s3_point.x) <= 1e-11
        assert fnorm(back.X - s3_point.X) <= 1e-11

    def test_requires_hermitian_and_unitary(self, s3_point, rng):
        with pytest.raises(NotHermitian):
            act3(np.array([[1.0j]]), GroupElement.identity(1), s3_point)
        bad_u = GroupElement(np.array([[2.0]]))
        with pytest.raises(NotUnitary):
            act3(np.zeros((1, 1)), bad_u, s3_point)


class TestFlatPotential:
    def test_base_point(self, trunc11):
        assert flat_potential_K(ConfigPoint.base(trunc11)) == 0.0

    def test_scalar_value(self, s2_point):
        assert abs(flat_potential_K(s2_point) - 0.25) < 1e-15

    def test_unitary_invariance(self, rng):
        tr = Truncation(3, 2, 1.3)
        pt = ConfigPoint(tr, tr.base_x() + gaussian_complex(rng, (5, 3)),
                         gaussian_complex(rng, (5, 3)))
        u = random_unitary(3, rng)
        assert abs(flat_potential_K(act1(u, pt)) - flat_potential_K(pt)) <= 1e-12 * (
            1 + abs(flat_potential_K(pt)))
