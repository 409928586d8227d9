"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: determinants
come from cofactor expansion, spectra from characteristic-polynomial roots.
"""

import numpy as np

from sepkit.fock import FormalDensity, OpTerm, Statistics


def random_unitary(n, rng):
    """Haar-ish unitary via QR of a complex Gaussian with phase-fixed R."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_complex(shape, rng):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_symmetric(n, rng):
    g = random_complex((n, n), rng)
    return g + g.T


def random_antisymmetric(n, rng):
    g = random_complex((n, n), rng)
    return g - g.T


def random_density(n, rng):
    g = random_complex((n, n), rng)
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_formal_density(rng, statistics=Statistics.BOSON, max_modes=4):
    m = int(rng.integers(1, max_modes + 1))
    terms = []
    for _ in range(int(rng.integers(1, 7))):
        coeff = complex(rng.standard_normal(), rng.standard_normal())
        ket = (int(rng.integers(m)), int(rng.integers(m)))
        col = (int(rng.integers(m)), int(rng.integers(m)))
        terms.append(OpTerm(coeff, ket, col))
    return FormalDensity(statistics, m, tuple(terms))


def cofactor_det(m):
    """Determinant by cofactor expansion along the first row."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if n == 1:
        return m[0, 0]
    total = 0.0 + 0.0j
    minor_rows = m[1:]
    for j in range(n):
        minor = np.delete(minor_rows, j, axis=1)
        total += (-1) ** j * m[0, j] * cofactor_det(minor)
    return total


def charpoly_eigenvalues(m):
    """Spectrum from characteristic-polynomial roots (Faddeev-LeVerrier
    coefficients via traces of powers), real parts ascending."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    coeffs = [1.0 + 0.0j]
    mk = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = m @ (mk + coeffs[-1] * np.eye(n) if k > 1 else mk)
        coeffs.append(-np.trace(mk) / k)
    roots = np.roots(coeffs)
    return np.sort(roots.real)


def bell_state_density():
    """(|00> + |11>)/sqrt(2) as a 4x4 density matrix."""
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 2**-0.5
    return np.outer(v, v.conj())
