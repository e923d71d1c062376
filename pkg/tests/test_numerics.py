import numpy as np
import pytest

from ssesprit import (
    RankDeficiencyError,
    eigenvalues,
    least_squares,
    spectral_norm,
    svd,
    truncated_pinv,
)


def random_complex(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


class TestSvd:
    def test_identity(self):
        np.testing.assert_allclose(svd(np.eye(3)).singular_values, np.ones(3))

    def test_rank_one_scaling(self):
        rng = np.random.default_rng(0)
        u = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        v = rng.standard_normal(7) + 1j * rng.standard_normal(7)
        u *= 2.0 / np.linalg.norm(u)
        v *= 3.0 / np.linalg.norm(v)
        sigma = svd(np.outer(u, v.conj())).singular_values
        assert sigma[0] == pytest.approx(6.0, rel=1e-12)
        assert np.all(sigma[1:] <= 1e-12 * sigma[0])

    def test_singular_values_match_gram_eigenvalues(self):
        # oracle: Hermitian eigensolver on A*A
        rng = np.random.default_rng(1)
        A = random_complex(rng, 5, 7)
        sigma = svd(A).singular_values
        gram = np.sort(np.linalg.eigvalsh(A.conj().T @ A))[::-1]
        gram = np.clip(gram, 0.0, None)[:5]
        np.testing.assert_allclose(sigma ** 2, gram, rtol=1e-9, atol=1e-12)

    def test_result_invariants_random_batch(self):
        rng = np.random.default_rng(2)
        for _ in range(25):
            m, n = int(rng.integers(1, 40)), int(rng.integers(1, 40))
            A = random_complex(rng, m, n)
            res = svd(A)
            k = min(m, n)
            recon = res.U @ (res.singular_values[:, None] * res.V.conj().T)
            assert np.linalg.norm(A - recon) <= 1e-10 * (1 + np.linalg.norm(A))
            assert np.all(np.diff(res.singular_values) <= 1e-12)
            assert np.linalg.norm(res.U.conj().T @ res.U - np.eye(k)) <= 1e-10
            assert np.linalg.norm(res.V.conj().T @ res.V - np.eye(k)) <= 1e-10

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            svd(np.zeros((0, 3)))


class TestTruncatedPinv:
    def test_full_rank_square_inverts(self):
        rng = np.random.default_rng(3)
        A = random_complex(rng, 6, 6) + 3 * np.eye(6)
        P = truncated_pinv(A, 6)
        assert np.linalg.norm(P @ A - np.eye(6)) <= 1e-9

    def test_diagonal_truncation(self):
        P = truncated_pinv(np.diag([2.0, 0.0]), 1)
        np.testing.assert_allclose(P, np.diag([0.5, 0.0]), atol=1e-15)

    def test_penrose_identities_on_low_rank(self):
        rng = np.random.default_rng(4)
        A = random_complex(rng, 4, 3) @ random_complex(rng, 3, 6)
        P = truncated_pinv(A, 3)
        scale = np.linalg.norm(A)
        assert np.linalg.norm(A @ P @ A - A) <= 1e-9 * scale
        assert np.linalg.norm(P @ A @ P - P) <= 1e-9 * np.linalg.norm(P)
        assert np.linalg.norm((A @ P).conj().T - A @ P) <= 1e-9
        assert np.linalg.norm((P @ A).conj().T - P @ A) <= 1e-9

    def test_matches_full_pinv_at_full_rank(self):
        rng = np.random.default_rng(5)
        A = random_complex(rng, 5, 8)
        np.testing.assert_allclose(truncated_pinv(A, 5), np.linalg.pinv(A),
                                   atol=1e-10)

    def test_rank_deficiency_error(self):
        rng = np.random.default_rng(6)
        u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        with pytest.raises(RankDeficiencyError):
            truncated_pinv(np.outer(u, v), 2)

    def test_rank_bounds(self):
        with pytest.raises(ValueError):
            truncated_pinv(np.eye(3), 0)
        with pytest.raises(ValueError):
            truncated_pinv(np.eye(3), 4)


class TestEigenvalues:
    def test_diagonal(self):
        vals = np.asarray([2.0, -1.5, 0.25 + 1j])
        got = eigenvalues(np.diag(vals))
        assert sorted(got, key=lambda z: (z.real, z.imag)) == pytest.approx(
            sorted(vals, key=lambda z: (z.real, z.imag))
        )

    def test_nilpotent(self):
        np.testing.assert_allclose(eigenvalues([[0, 1], [0, 0]]), [0, 0])

    def test_trace_and_determinant_consistency(self):
        # oracles: trace and LU determinant
        rng = np.random.default_rng(7)
        for _ in range(10):
            A = random_complex(rng, 6, 6)
            lam = eigenvalues(A)
            assert np.sum(lam) == pytest.approx(np.trace(A), rel=1e-8, abs=1e-10)
            assert np.prod(lam) == pytest.approx(np.linalg.det(A), rel=1e-8)

    def test_similarity_invariance(self):
        rng = np.random.default_rng(8)
        A = random_complex(rng, 7, 7)
        S = random_complex(rng, 7, 7) + 4 * np.eye(7)
        lam1 = np.sort_complex(eigenvalues(A))
        lam2 = np.sort_complex(eigenvalues(S @ A @ np.linalg.inv(S)))
        np.testing.assert_allclose(lam1, lam2, atol=1e-7 * np.abs(lam1).max())

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            eigenvalues(np.ones((2, 3)))


class TestSpectralNorm:
    def test_zero_matrix(self):
        assert spectral_norm(np.zeros((3, 4))) == 0.0

    def test_unitary_is_one(self):
        rng = np.random.default_rng(9)
        Q, _ = np.linalg.qr(random_complex(rng, 6, 6))
        assert spectral_norm(Q) == pytest.approx(1.0, abs=1e-10)

    def test_norm_inequalities(self):
        rng = np.random.default_rng(10)
        for _ in range(5):
            A = random_complex(rng, 5, 9)
            two = spectral_norm(A)
            fro = np.linalg.norm(A)
            assert two <= fro + 1e-12
            assert fro <= np.sqrt(5) * two + 1e-12


class TestLeastSquares:
    def test_square_solve(self):
        rng = np.random.default_rng(11)
        A = random_complex(rng, 5, 5) + 3 * np.eye(5)
        b = random_complex(rng, 5, 1).ravel()
        x = least_squares(A, b)
        assert np.linalg.norm(A @ x - b) <= 1e-9 * np.linalg.norm(b)

    def test_consistent_overdetermined(self):
        rng = np.random.default_rng(12)
        A = random_complex(rng, 9, 4)
        x_true = random_complex(rng, 4, 1).ravel()
        x = least_squares(A, A @ x_true)
        np.testing.assert_allclose(x, x_true, atol=1e-9)

    def test_residual_orthogonal_to_columns(self):
        rng = np.random.default_rng(13)
        A = random_complex(rng, 12, 5)
        b = random_complex(rng, 12, 1).ravel()
        x = least_squares(A, b)
        lhs = np.linalg.norm(A.conj().T @ (A @ x - b))
        assert lhs <= 1e-8 * spectral_norm(A) * np.linalg.norm(b)

    def test_rank_deficient_raises(self):
        A = np.ones((6, 2), dtype=complex)
        with pytest.raises(RankDeficiencyError):
            least_squares(A, np.ones(6))

    def test_underdetermined_raises(self):
        with pytest.raises(RankDeficiencyError):
            least_squares(np.ones((2, 4)), np.ones(2))
