import numpy as np
import pytest

from helpers import (
    bell_state_density,
    charpoly_eigenvalues,
    cofactor_det,
    random_complex,
    random_unitary,
)
from sepkit import linalg
from sepkit.criteria import partial_transpose_matrix, realign_matrix

EQ18 = np.array(
    [[0.36, 0, 0, 0], [0, 0, 0.48, 0], [0, 0.48, 0, 0], [0, 0, 0, 0.64]],
    dtype=complex,
)


def test_as_matrix_rejects_nonfinite():
    with pytest.raises(ValueError):
        linalg.as_matrix([[np.nan, 0], [0, 1]])
    with pytest.raises(ValueError):
        linalg.as_matrix([[1j * np.inf, 0], [0, 1]])
    with pytest.raises(ValueError):
        linalg.as_matrix([1, 2, 3])


class TestKron:
    def test_identity(self):
        assert np.array_equal(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonal_product(self):
        # diag(0.6, 0.8) with itself: the symmetrized-PT product matrix
        got = linalg.kron(np.diag([0.6, 0.8]), np.diag([0.6, 0.8]))
        assert np.allclose(got, np.diag([0.36, 0.48, 0.48, 0.64]), atol=1e-15)

    def test_projector_block(self):
        m = np.array([[1, 2], [3, 4]], dtype=complex)
        e11 = np.zeros((2, 2))
        e11[0, 0] = 1
        got = linalg.kron(e11, m)
        want = np.zeros((4, 4), dtype=complex)
        want[:2, :2] = m
        assert np.array_equal(got, want)

    def test_dimension_associativity(self):
        rng = np.random.default_rng(11)
        a, b, c = (random_complex((2, 3), rng) for _ in range(3))
        lhs = linalg.kron(linalg.kron(a, b), c)
        rhs = linalg.kron(a, linalg.kron(b, c))
        assert np.abs(lhs - rhs).max() < 1e-12


class TestDet:
    def test_identity(self):
        assert linalg.det(np.eye(3)) == 1

    def test_single_transposition(self):
        assert linalg.det([[0, 1], [1, 0]]) == -1

    def test_partial_transpose_matrix_against_cofactor_oracle(self):
        oracle = cofactor_det(EQ18)
        got = linalg.det(EQ18)
        assert abs(got - oracle) < 1e-15
        # equals the closed form -d_i^4 d_j^4
        assert abs(got - (-0.05308416)) < 1e-12

    def test_zero_pivot_is_exactly_zero(self):
        m = np.array([[1, 0, 2], [3, 0, 4], [5, 0, 6]], dtype=complex)
        assert linalg.det(m) == 0.0

    def test_non_square_raises(self):
        with pytest.raises(ValueError):
            linalg.det(np.ones((2, 3)))

    def test_multiplicativity(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            a = random_complex((3, 3), rng)
            b = random_complex((3, 3), rng)
            da, db, dab = linalg.det(a), linalg.det(b), linalg.det(a @ b)
            assert abs(dab - da * db) < 1e-9 * max(1.0, abs(da) * abs(db))

    def test_agrees_with_cofactor_on_random(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            m = random_complex((4, 4), rng)
            assert abs(linalg.det(m) - cofactor_det(m)) < 1e-10


class TestHermitianEigenvalues:
    def test_diagonal(self):
        assert np.allclose(linalg.hermitian_eigenvalues(np.diag([1.0, 2.0])), [1, 2])

    def test_pauli_x(self):
        got = linalg.hermitian_eigenvalues([[0, 1], [1, 0]])
        assert np.allclose(got, [-1, 1], atol=1e-14)

    def test_bell_partial_transpose_spectrum(self):
        pt = partial_transpose_matrix(bell_state_density(), 2, 2)
        frozen = np.array([-0.5, 0.5, 0.5, 0.5])
        got = linalg.hermitian_eigenvalues(pt)
        assert np.abs(got - frozen) .max() < 1e-10
        # the characteristic-polynomial oracle confirms the frozen values,
        # up to the conditioning of its triple root
        assert np.abs(charpoly_eigenvalues(pt) - frozen).max() < 1e-4

    def test_non_hermitian_raises(self):
        with pytest.raises(ValueError):
            linalg.hermitian_eigenvalues([[0, 1], [0, 0]])

    def test_sum_matches_trace(self):
        rng = np.random.default_rng(7)
        for n in (2, 3, 5, 8):
            g = random_complex((n, n), rng)
            h = g + g.conj().T
            vals = linalg.hermitian_eigenvalues(h)
            tol = 1e-10 * n * np.abs(h).max()
            assert abs(vals.sum() - np.trace(h).real) < tol


class TestSvd:
    def test_diagonal(self):
        _, s, _ = linalg.svd(np.diag([3.0, 1.0]))
        assert np.allclose(s, [3, 1])

    def test_scaled_identity(self):
        _, s, _ = linalg.svd(np.eye(2) / np.sqrt(2))
        assert np.allclose(s, [0.7071067811865476, 0.7071067811865476], atol=1e-15)

    def test_reconstruction(self):
        rng = np.random.default_rng(8)
        for shape in ((3, 3), (3, 2), (2, 4)):
            a = random_complex(shape, rng)
            u, s, vdag = linalg.svd(a)
            assert np.abs(linalg.svd_reconstruct(u, s, vdag) - a).max() < 1e-10

    def test_factors_unitary(self):
        rng = np.random.default_rng(9)
        a = random_complex((4, 3), rng)
        u, _, vdag = linalg.svd(a)
        assert np.abs(u @ u.conj().T - np.eye(4)).max() < linalg.DEFAULT_ORTHO_TOL
        assert np.abs(vdag @ vdag.conj().T - np.eye(3)).max() < linalg.DEFAULT_ORTHO_TOL

    def test_descending_order(self):
        rng = np.random.default_rng(10)
        _, s, _ = linalg.svd(random_complex((5, 5), rng))
        assert np.all(np.diff(s) <= 0)

    def test_singular_values_unitarily_invariant(self):
        rng = np.random.default_rng(12)
        a = random_complex((4, 4), rng)
        s0 = linalg.singular_values(a)
        for _ in range(5):
            u = random_unitary(4, rng)
            v = random_unitary(4, rng)
            assert np.abs(linalg.singular_values(u @ a @ v) - s0).max() < 1e-10


class TestTraceNorm:
    def test_signed_diagonal(self):
        assert abs(linalg.trace_norm(np.diag([1.0, -1.0])) - 2) < 1e-15

    def test_zero(self):
        assert linalg.trace_norm(np.zeros((3, 3))) == 0

    def test_realigned_bell(self):
        r = realign_matrix(bell_state_density(), 2, 2)
        # oracle: singular values of the realignment, summed
        oracle = np.linalg.svd(r, compute_uv=False).sum()
        assert abs(linalg.trace_norm(r) - oracle) < 1e-12
        assert abs(linalg.trace_norm(r) - 2.0) < 1e-12

    def test_dominates_trace(self):
        rng = np.random.default_rng(13)
        for n in (2, 4, 6):
            a = random_complex((n, n), rng)
            assert linalg.trace_norm(a) >= abs(np.trace(a)) - 1e-12
