import numpy as np
import pytest

from hkq.errors import (
    DomainViolation,
    NotHermitian,
    NotPositiveDefinite,
    RankDeficientWarning,
    ShapeMismatch,
)
from hkq.matcore import (
    dagger,
    fnorm,
    herm_eig,
    herm_fun,
    herm_sqrt,
    null_space_frame,
    orthonormal_range,
    skew_part,
    svd,
    sym_sylvester_solve,
)
from hkq.sampling import gaussian_complex, make_rng


def random_hermitian(rng, p):
    g = gaussian_complex(rng, (p, p))
    return 0.5 * (g + dagger(g))


class TestHermEig:
    def test_already_diagonal(self):
        spec = herm_eig(np.diag([3.0, 1.0]))
        assert np.allclose(spec.eigenvalues, [1.0, 3.0])
        assert np.allclose(np.abs(spec.eigenvectors), [[0, 1], [1, 0]])

    def test_swap_matrix(self):
        spec = herm_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(spec.eigenvalues, [-1.0, 1.0])

    def test_complex_two_by_two(self):
        # characteristic polynomial (2 - t)^2 - 1 = 0
        m = np.array([[2.0, 1.0j], [-1.0j, 2.0]])
        spec = herm_eig(m)
        assert np.allclose(spec.eigenvalues, [1.0, 3.0], atol=1e-12)

    def test_reconstruction_and_unitarity(self, rng):
        for p in (1, 2, 5):
            m = random_hermitian(rng, p)
            spec = herm_eig(m)
            assert fnorm(spec.reconstruct() - m) <= 1e-12 * (1 + fnorm(m))
            u = spec.eigenvectors
            assert fnorm(dagger(u) @ u - np.eye(p)) <= 1e-12
            assert np.all(np.diff(spec.eigenvalues) >= 0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ShapeMismatch):
            herm_eig(np.ones((2, 3)))


class TestHermFun:
    def test_sqrt_diagonal(self):
        out = herm_fun(np.diag([4.0, 9.0]), np.sqrt)
        assert np.allclose(out, np.diag([2.0, 3.0]))

    def test_log_identity(self):
        out = herm_fun(np.eye(3), np.log, domain_check=lambda lam: lam > 0)
        assert fnorm(out) <= 1e-14

    def test_sqrt_dense(self):
        # eigenbasis (1, 1)/sqrt2, (1, -1)/sqrt2 with eigenvalues 7 and 3
        m = np.array([[5.0, 2.0], [2.0, 5.0]])
        out = herm_fun(m, np.sqrt)
        s7, s3 = np.sqrt(7.0), np.sqrt(3.0)
        want = np.array([[(s7 + s3) / 2, (s7 - s3) / 2],
                         [(s7 - s3) / 2, (s7 + s3) / 2]])
        assert np.allclose(out, want, atol=1e-13)

    def test_identity_function_returns_input(self, rng):
        m = random_hermitian(rng, 4)
        assert fnorm(herm_fun(m, lambda lam: lam) - m) <= 1e-12 * (1 + fnorm(m))

    def test_domain_violation_lists_offenders(self):
        with pytest.raises(DomainViolation) as err:
            herm_fun(np.diag([1.0, -2.0]), np.log, domain_check=lambda lam: lam > 0)
        assert err.value.offending is not None

    def test_sqrt_square_round_trip(self, rng):
        g = gaussian_complex(rng, (4, 4))
        m = g @ dagger(g)  # PSD
        back = herm_fun(herm_sqrt(m), np.square)
        assert fnorm(back - m) <= 1e-10 * (1 + fnorm(m))


class TestSvd:
    def test_zero_matrix(self):
        _, s, _ = svd(np.zeros((3, 2)))
        assert np.all(s == 0)

    def test_sign_absorbed(self):
        _, s, _ = svd(np.diag([2.0, -3.0]))
        assert np.allclose(s, [3.0, 2.0])

    def test_pythagoras(self):
        _, s, _ = svd(np.array([[3.0], [4.0]]))
        assert np.allclose(s, [5.0])

    def test_reconstruction(self, rng):
        m = gaussian_complex(rng, (5, 3))
        u, s, w = svd(m)
        assert fnorm(m - (u * s) @ dagger(w)) <= 1e-11 * (1 + fnorm(m))
        assert fnorm(dagger(u) @ u - np.eye(3)) <= 1e-12
        assert fnorm(dagger(w) @ w - np.eye(3)) <= 1e-12


class TestOrthonormalRange:
    def test_axis_column(self):
        f = orthonormal_range(np.array([[2.0], [0.0]]))
        assert np.allclose(f, [[1.0], [0.0]])

    def test_duplicate_columns_warn(self):
        m = np.array([[1.0, 1.0], [0.0, 0.0]])
        with pytest.warns(RankDeficientWarning) as rec:
            f = orthonormal_range(m, 1e-10)
        assert f.shape == (2, 1)
        assert rec[0].message.rank == 1
        assert np.allclose(f, [[1.0], [0.0]])

    def test_normalization_and_gauge(self):
        f = orthonormal_range(np.array([[1.0], [1.0]]))
        assert np.allclose(f, np.array([[1.0], [1.0]]) / np.sqrt(2.0))

    def test_frame_fixed_point(self, rng):
        g = gaussian_complex(rng, (6, 3))
        f = orthonormal_range(g)
        f2 = orthonormal_range(f)
        d = fnorm(f @ dagger(f) - f2 @ dagger(f2))
        assert d <= 1e-12

    def test_gauge_pivot_real_positive(self, rng):
        f = orthonormal_range(gaussian_complex(rng, (5, 2)))
        for j in range(f.shape[1]):
            piv = f[np.argmax(np.abs(f[:, j])), j]
            assert abs(piv.imag) <= 1e-14
            assert piv.real > 0

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            orthonormal_range(np.eye(2), tol=0.0)


class TestNullSpace:
    def test_complement_dimensions(self, rng):
        m = gaussian_complex(rng, (5, 2))
        ns = null_space_frame(dagger(m))
        assert ns.shape == (5, 3)
        assert fnorm(dagger(m) @ ns) <= 1e-12


class TestSylvester:
    def test_identity_coefficient(self, rng):
        s = skew_part(gaussian_complex(rng, (3, 3)))
        a = sym_sylvester_solve(np.eye(3), s)
        assert fnorm(a - s) <= 1e-12

    def test_two_by_two_closed_form(self):
        s_val = 0.7 - 0.2j
        s = np.array([[0.0, s_val], [-np.conj(s_val), 0.0]])
        a = sym_sylvester_solve(np.diag([1.0, 3.0]), s)
        want = np.array([[0.0, s_val / 2], [-np.conj(s_val) / 2, 0.0]])
        assert fnorm(a - want) <= 1e-12

    def test_zero_rhs(self):
        a = sym_sylvester_solve(np.diag([2.0, 5.0]), np.zeros((2, 2)))
        assert fnorm(a) == 0.0

    def test_residual_and_skewness(self, rng):
        g = gaussian_complex(rng, (4, 4))
        m = g @ dagger(g) + 0.5 * np.eye(4)
        s = skew_part(gaussian_complex(rng, (4, 4)))
        a = sym_sylvester_solve(m, s)
        assert fnorm(a + dagger(a)) <= 1e-12
        assert fnorm(0.5 * (m @ a + a @ m) - s) <= 1e-10 * (1 + fnorm(s))

    def test_uniqueness_under_restored_rhs(self, rng):
        g = gaussian_complex(rng, (3, 3))
        m = g @ dagger(g) + np.eye(3)
        s = skew_part(gaussian_complex(rng, (3, 3)))
        a1 = sym_sylvester_solve(m, s)
        perturbed = s + 1e-3 * skew_part(gaussian_complex(rng, (3, 3)))
        _ = sym_sylvester_solve(m, perturbed)
        a2 = sym_sylvester_solve(m, s.copy())
        assert fnorm(a1 - a2) <= 1e-12

    def test_rejects_indefinite(self):
        with pytest.raises(NotPositiveDefinite):
            sym_sylvester_solve(np.diag([1.0, -1.0]), np.zeros((2, 2)))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            sym_sylvester_solve(np.eye(2), np.zeros((3, 3)))
