"""Dense complex linear-algebra kernel.

All matrices are plain numpy arrays with dtype complex128.  Everything here
is a pure function; inputs are never mutated.
"""

from __future__ import annotations

import numpy as np

DEFAULT_ORTHO_TOL = 1e-9


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array and reject NaN/Inf entries."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def hermiticity_tolerance(a: np.ndarray) -> float:
    """Default tolerance for Hermiticity checks: 1e-10 * dim * max|entry|."""
    return 1e-10 * a.shape[0] * max(np.abs(a).max(), 1.0)


def kron(a, b) -> np.ndarray:
    """Kronecker product, row-major block convention."""
    return np.kron(as_matrix(a), as_matrix(b))


def det(a) -> complex:
    """Determinant via LU factorization with partial pivoting.

    Row swaps are tracked exactly; a column with no nonzero pivot makes the
    result exactly 0.
    """
    m = as_matrix(a)
    n, ncols = m.shape
    if n != ncols:
        raise ValueError(f"determinant requires a square matrix, got {m.shape}")
    lu = m.copy()
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if lu[p, k] == 0:
            return complex(0.0)
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            sign = -sign
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return complex(sign * np.prod(np.diag(lu)))


def hermitian_eigenvalues(a, tol: float | None = None) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, real, ascending.

    Raises ValueError if the matrix deviates from Hermiticity by more than
    ``tol`` (default 1e-10 * dim * max|entry|).
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got {m.shape}")
    if tol is None:
        tol = hermiticity_tolerance(m)
    dev = np.abs(m - m.conj().T).max()
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e} > tol {tol:.3e})")
    return np.linalg.eigvalsh(m)


def svd(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD: returns (U, s, Vdag) with a = U @ diag(s) @ Vdag.

    U and Vdag are square unitaries; s is nonnegative and descending.
    """
    m = as_matrix(a)
    u, s, vdag = np.linalg.svd(m, full_matrices=True)
    return u, s, vdag


def svd_reconstruct(u: np.ndarray, s: np.ndarray, vdag: np.ndarray) -> np.ndarray:
    """Rebuild U @ diag(s) @ Vdag with the rectangular embedding of diag(s)."""
    m, n = u.shape[0], vdag.shape[0]
    sigma = np.zeros((m, n), dtype=complex)
    sigma[: len(s), : len(s)] = np.diag(s)
    return u @ sigma @ vdag


def singular_values(a) -> np.ndarray:
    """Singular values only, descending."""
    return np.linalg.svd(as_matrix(a), compute_uv=False)


def trace_norm(a) -> float:
    """Sum of singular values."""
    return float(singular_values(a).sum())
