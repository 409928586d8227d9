"""Canonical decompositions of bipartite coefficient matrices.

Schmidt (general), Takagi (complex symmetric, boson pairs) and Slater/Youla
(complex antisymmetric, fermion pairs).  The Takagi and Slater routines share
the same skeleton: eigendecompose the Gram matrix, then resolve each
singular-value cluster with the antilinear map x -> C conj(x) / sigma, which
is an involution (+1) for symmetric C and a quaternionic structure (-1,
forcing even multiplicity) for antisymmetric C.  Results are validated by
reconstruction, not by algebraic assumption.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg

RANK_TOL_FACTOR = 1e-12
_CLUSTER_TOL = 1e-8
_PAIR_TOL = 1e-10


@dataclass(frozen=True)
class SchmidtForm:
    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray
    rank: int


@dataclass(frozen=True)
class TakagiForm:
    unitary: np.ndarray
    coefficients: np.ndarray


@dataclass(frozen=True)
class SlaterForm:
    unitary: np.ndarray
    coefficients: np.ndarray
    rank: int


def rank_tolerance(singular_values: np.ndarray) -> float:
    top = float(singular_values[0]) if len(singular_values) else 0.0
    return RANK_TOL_FACTOR * top


def schmidt_decompose(c) -> SchmidtForm:
    """Schmidt form of a pure-state coefficient matrix via SVD.

    coefficients are the singular values (descending); the state rebuilds as
    left_basis @ diag(coefficients) @ right_basis.
    """
    m = linalg.as_matrix(c)
    u, s, vdag = linalg.svd(m)
    rank = int(np.count_nonzero(s > rank_tolerance(s)))
    return SchmidtForm(coefficients=s, left_basis=u, right_basis=vdag, rank=rank)


def _require_square(m: np.ndarray, what: str) -> None:
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{what} requires a square matrix, got {m.shape}")


def _clusters(sigma_desc: np.ndarray, top: float):
    """Group indices of descending singular values by gap <= tol * top."""
    groups = []
    current = [0]
    for k in range(1, len(sigma_desc)):
        if sigma_desc[k - 1] - sigma_desc[k] <= _CLUSTER_TOL * top:
            current.append(k)
        else:
            groups.append(current)
            current = [k]
    groups.append(current)
    return groups


def _orthogonalize(v: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    for b in basis:
        v = v - b * np.vdot(b, v)
    return v


def takagi_decompose(c) -> TakagiForm:
    """Takagi factorization C = U diag(d) U^T of a complex symmetric matrix.

    The map T(x) = C conj(x) / sigma is an antilinear involution on each
    singular-cluster subspace; its fixed vectors are Takagi vectors.  Working
    cluster by cluster keeps degenerate coefficients (e.g. the two equal
    Bell-state coefficients) exact, where the naive one-shot phase correction
    breaks down.
    """
    m = linalg.as_matrix(c)
    _require_square(m, "takagi_decompose")
    maxabs = float(np.abs(m).max())
    sym_dev = float(np.abs(m - m.T).max())
    if sym_dev > 1e-10 * max(1.0, maxabs):
        raise ValueError(f"matrix is not symmetric (deviation {sym_dev:.3e})")
    m = (m + m.T) / 2.0
    n = m.shape[0]

    # Left singular vectors span the clusters; taking sigma from the SVD
    # (rather than sqrt of Gram eigenvalues) keeps zero singular values at
    # the epsilon floor instead of sqrt(epsilon).
    vecs, sigma, _ = np.linalg.svd(m)
    top = float(sigma[0])

    columns: list[np.ndarray] = []
    coeffs: list[float] = []
    for group in _clusters(sigma, top):
        rep = float(np.mean(sigma[group]))
        if rep <= _PAIR_TOL * top or top == 0.0:
            # Null-ish cluster: any orthonormal basis works, coefficient ~ 0.
            for k in group:
                columns.append(vecs[:, k])
                coeffs.append(float(sigma[k]))
            continue
        fixed: list[np.ndarray] = []
        for k in group:
            w = vecs[:, k]
            tw = m @ w.conj() / rep
            for cand in (w + tw, 1j * (w - tw)):
                if len(fixed) == len(group):
                    break
                cand = _orthogonalize(cand, fixed)
                norm = np.linalg.norm(cand)
                if norm > 1e-6:
                    fixed.append(cand / norm)
        if len(fixed) != len(group):
            raise ArithmeticError("failed to resolve a degenerate Takagi cluster")
        for u in fixed:
            columns.append(u)
            coeffs.append(rep)
    unitary = np.column_stack(columns)
    d = np.array(coeffs)

    recon_dev = float(np.abs(unitary @ np.diag(d) @ unitary.T - m).max())
    if recon_dev > 1e-9 * max(1.0, maxabs):
        raise ArithmeticError(f"Takagi reconstruction failed ({recon_dev:.3e})")
    return TakagiForm(unitary=unitary, coefficients=d)


def slater_canonical_matrix(coefficients: np.ndarray, dim: int) -> np.ndarray:
    """Block-diagonal antisymmetric form: [[0, z], [-z, 0]] blocks, then zeros."""
    z = np.zeros((dim, dim), dtype=complex)
    for l, coeff in enumerate(coefficients):
        z[2 * l, 2 * l + 1] = coeff
        z[2 * l + 1, 2 * l] = -coeff
    return z


def slater_decompose(omega) -> SlaterForm:
    """Slater/Youla form of a complex antisymmetric matrix.

    Returns U with U^T Omega U block-diagonal ([[0, z_l], [-z_l, 0]] blocks,
    |z_l| descending, trailing zeros; odd dimension leaves a zero row).  Each
    pair is deflated from the top of the spectrum: u2 = Omega conj(u1)/sigma
    is automatically orthogonal to u1 because x^T Omega x = 0.
    """
    m = linalg.as_matrix(omega)
    _require_square(m, "slater_decompose")
    maxabs = float(np.abs(m).max())
    asym_dev = float(np.abs(m + m.T).max())
    if asym_dev > 1e-10 * max(1.0, maxabs):
        raise ValueError(f"matrix is not antisymmetric (deviation {asym_dev:.3e})")
    m = (m - m.T) / 2.0
    n = m.shape[0]

    vecs, sigma, _ = np.linalg.svd(m)
    top = float(sigma[0])

    columns: list[np.ndarray] = []
    coeffs: list[complex] = []
    for k in range(n):
        if len(columns) + 2 > n:
            break
        if top == 0.0 or sigma[k] <= _PAIR_TOL * top:
            break
        u1 = _orthogonalize(vecs[:, k], columns)
        norm = np.linalg.norm(u1)
        if norm <= 1e-8:
            continue  # already inside an extracted pair
        u1 = u1 / norm
        u2 = m @ u1.conj() / sigma[k]
        u2 = _orthogonalize(u2, columns + [u1])
        u2 = u2 / np.linalg.norm(u2)
        columns.extend([u2, u1])
        coeffs.append(complex(sigma[k]))

    if len(columns) < n:
        # Orthonormal completion spanning the null space.
        if columns:
            u_full, _, _ = np.linalg.svd(np.column_stack(columns))
            complement = u_full[:, len(columns):]
        else:
            complement = np.eye(n, dtype=complex)
        for k in range(complement.shape[1]):
            columns.append(complement[:, k])
    coeffs.extend([0.0] * (n // 2 - len(coeffs)))

    construction = np.column_stack(columns)
    unitary = construction.conj()
    z = np.array(coeffs, dtype=complex)
    rank = int(np.count_nonzero(np.abs(z) > rank_tolerance(np.abs(z))))

    canon = slater_canonical_matrix(z, n)
    canon_dev = float(np.abs(unitary.T @ m @ unitary - canon).max())
    if canon_dev > 1e-9 * max(1.0, maxabs):
        raise ArithmeticError(f"Slater canonicalization failed ({canon_dev:.3e})")
    return SlaterForm(unitary=unitary, coefficients=z, rank=rank)
