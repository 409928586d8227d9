import numpy as np
import pytest

from helpers import random_antisymmetric, random_complex, random_symmetric, random_unitary
from sepkit import decomp


def takagi_reconstruction_error(form, c):
    u, d = form.unitary, form.coefficients
    return np.abs(u @ np.diag(d) @ u.T - c).max()


def slater_canonical_error(form, omega):
    canon = decomp.slater_canonical_matrix(form.coefficients, omega.shape[0])
    return np.abs(form.unitary.T @ omega @ form.unitary - canon).max()


class TestSchmidt:
    def test_product_state(self):
        form = decomp.schmidt_decompose([[1, 0], [0, 0]])
        assert np.allclose(form.coefficients, [1, 0])
        assert form.rank == 1

    def test_bell_state(self):
        c = np.eye(2) / np.sqrt(2)
        form = decomp.schmidt_decompose(c)
        # oracle: reconstruction through the returned bases
        recon = form.left_basis @ np.diag(form.coefficients) @ form.right_basis
        assert np.abs(recon - c).max() < 1e-12
        assert np.allclose(form.coefficients, [0.7071067811865476] * 2, atol=1e-15)
        assert form.rank == 2

    def test_norm_identity(self):
        rng = np.random.default_rng(31)
        c = random_complex((3, 2), rng)
        form = decomp.schmidt_decompose(c)
        assert abs(np.sum(form.coefficients**2) - np.sum(np.abs(c) ** 2)) < 1e-10

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(32)
        c = random_complex((3, 3), rng)
        s0 = decomp.schmidt_decompose(c).coefficients
        for _ in range(5):
            u = random_unitary(3, rng)
            v = random_unitary(3, rng)
            s = decomp.schmidt_decompose(u @ c @ v.T).coefficients
            assert np.abs(s - s0).max() < 1e-10


class TestTakagi:
    def test_already_diagonal(self):
        form = decomp.takagi_decompose(np.diag([0.6, 0.8]))
        assert np.allclose(form.coefficients, [0.8, 0.6], atol=1e-15)
        # permutation-phase unitary: one unit entry per row/column
        assert np.allclose(np.abs(form.unitary), [[0, 1], [1, 0]], atol=1e-12)

    def test_degenerate_offdiagonal_pair(self):
        c = np.array([[0, 2**-0.5], [2**-0.5, 0]], dtype=complex)
        form = decomp.takagi_decompose(c)
        assert np.allclose(form.coefficients, [0.7071067811865476] * 2, atol=1e-15)
        assert takagi_reconstruction_error(form, c) < 1e-9

    def test_random_symmetric(self):
        rng = np.random.default_rng(33)
        for n in (2, 3, 4):
            c = random_symmetric(n, rng)
            form = decomp.takagi_decompose(c)
            assert takagi_reconstruction_error(form, c) < 1e-9
            u = form.unitary
            assert np.abs(u @ u.conj().T - np.eye(n)).max() < 1e-9
            assert np.all(np.diff(form.coefficients) <= 1e-12)

    def test_coefficients_are_singular_values(self):
        rng = np.random.default_rng(34)
        for _ in range(20):
            c = random_symmetric(4, rng)
            form = decomp.takagi_decompose(c)
            s = np.linalg.svd(c, compute_uv=False)
            assert np.abs(form.coefficients - s).max() < 1e-10

    def test_constructed_degeneracies(self):
        rng = np.random.default_rng(35)
        for n, values in ((4, [1.0, 1.0, 0.3, 0.3]), (5, [2.0, 2.0, 2.0, 0.5, 0.0])):
            u = random_unitary(n, rng)
            c = u @ np.diag(values) @ u.T
            form = decomp.takagi_decompose(c)
            assert takagi_reconstruction_error(form, c) < 1e-9
            assert np.abs(np.sort(form.coefficients) - np.sort(values)).max() < 1e-10

    def test_rank_deficient(self):
        c = np.zeros((3, 3), dtype=complex)
        c[0, 0] = 1.0
        form = decomp.takagi_decompose(c)
        assert takagi_reconstruction_error(form, c) < 1e-12
        assert np.allclose(form.coefficients, [1, 0, 0])

    def test_non_symmetric_rejected(self):
        with pytest.raises(ValueError):
            decomp.takagi_decompose([[0, 1], [0, 0]])


class TestSlater:
    def test_canonical_block(self):
        omega = np.array([[0, 0.5], [-0.5, 0]], dtype=complex)
        form = decomp.slater_decompose(omega)
        assert len(form.coefficients) == 1
        assert abs(abs(form.coefficients[0]) - 0.5) < 1e-12
        assert form.rank == 1
        assert slater_canonical_error(form, omega) < 1e-12

    def test_two_canonical_blocks(self):
        z1, z2 = 2**-0.5, 1j * 2**-0.5
        omega = np.zeros((4, 4), dtype=complex)
        omega[0, 1], omega[1, 0] = z1, -z1
        omega[2, 3], omega[3, 2] = z2, -z2
        form = decomp.slater_decompose(omega)
        assert form.rank == 2
        assert np.abs(np.abs(form.coefficients) - 2**-0.5).max() < 1e-12
        assert slater_canonical_error(form, omega) < 1e-9

    def test_random_antisymmetric(self):
        rng = np.random.default_rng(36)
        for n in (2, 4, 6):
            omega = random_antisymmetric(n, rng)
            form = decomp.slater_decompose(omega)
            assert slater_canonical_error(form, omega) < 1e-9
            u = form.unitary
            assert np.abs(u @ u.conj().T - np.eye(n)).max() < 1e-9
            # reconstruction through the canonical form
            canon = decomp.slater_canonical_matrix(form.coefficients, n)
            recon = u.conj() @ canon @ u.conj().T
            assert np.abs(recon - omega).max() < 1e-9

    def test_singular_values_pair_up(self):
        rng = np.random.default_rng(37)
        for n in (4, 6, 8):
            omega = random_antisymmetric(n, rng)
            s = np.linalg.svd(omega, compute_uv=False)
            assert np.abs(s[0::2] - s[1::2]).max() < 1e-9

    def test_rank_invariant_under_congruence(self):
        rng = np.random.default_rng(38)
        omega = random_antisymmetric(6, rng)
        base = decomp.slater_decompose(omega).rank
        for _ in range(5):
            u = random_unitary(6, rng)
            assert decomp.slater_decompose(u.T @ omega @ u).rank == base

    def test_odd_dimension_has_zero_coefficient(self):
        rng = np.random.default_rng(39)
        for n in (3, 5, 7):
            omega = random_antisymmetric(n, rng)
            form = decomp.slater_decompose(omega)
            assert slater_canonical_error(form, omega) < 1e-9
            # det of an odd antisymmetric matrix vanishes; the canonical form
            # must end in a zero row even though all z_l can be nonzero
            canon = decomp.slater_canonical_matrix(form.coefficients, n)
            assert np.abs(canon[-1]).max() == 0.0

    def test_constructed_equal_pairs(self):
        rng = np.random.default_rng(40)
        u = random_unitary(6, rng)
        z = np.array([0.5, 0.5, 0.5], dtype=complex)
        omega = u @ decomp.slater_canonical_matrix(z, 6) @ u.T
        form = decomp.slater_decompose(omega)
        assert np.abs(np.abs(form.coefficients) - 0.5).max() < 1e-10
        assert slater_canonical_error(form, omega) < 1e-9

    def test_non_antisymmetric_rejected(self):
        with pytest.raises(ValueError):
            decomp.slater_decompose(np.eye(2))

    def test_zero_matrix(self):
        form = decomp.slater_decompose(np.zeros((4, 4)))
        assert form.rank == 0
        assert np.abs(form.coefficients).max() == 0.0
