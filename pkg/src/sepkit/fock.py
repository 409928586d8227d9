"""Two-particle density operators as formal lists of second-quantized terms.

A term ``coeff * |k1 k2><c1 c2|`` stands for the operator string
``coeff * a_{k1}^† a_{k2}^† |0><0| a_{c2} a_{c1}`` (the bra is the adjoint of
``a_{c1}^† a_{c2}^† |0>``).  Rewrites act on the term list without merging or
normalizing; two term lists that describe the same physical operator can and
do assemble to different matrices, which is exactly what the symmetrization
argument trades on.  Merging happens only in :func:`assemble_matrix`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Statistics(enum.Enum):
    BOSON = "boson"
    FERMION = "fermion"
    DISTINGUISHABLE = "distinguishable"


@dataclass(frozen=True)
class OpTerm:
    """One weighted ket/column index pair of a formal density operator."""

    coeff: complex
    ket: tuple[int, int]
    col: tuple[int, int]

    def __post_init__(self):
        c = complex(self.coeff)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError("term coefficient must be finite")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "ket", (int(self.ket[0]), int(self.ket[1])))
        object.__setattr__(self, "col", (int(self.col[0]), int(self.col[1])))


@dataclass(frozen=True)
class FormalDensity:
    """A density operator as a literal, ordered list of terms on M modes."""

    statistics: Statistics
    mode_count: int
    terms: tuple[OpTerm, ...]

    def __post_init__(self):
        if self.mode_count < 1:
            raise ValueError("mode_count must be >= 1")
        object.__setattr__(self, "terms", tuple(self.terms))
        for t in self.terms:
            for idx in (*t.ket, *t.col):
                if not 0 <= idx < self.mode_count:
                    raise ValueError(
                        f"mode index {idx} out of range for {self.mode_count} modes"
                    )


def pair_state_terms(coeffs) -> list[OpTerm]:
    """Density-operator terms of a pure pair state in a diagonal basis.

    For the state sum_i c_i a_i^† b_i^† |0> the density operator is the double
    sum of terms c_i conj(c_j) |i i><j j|; both slots carry the same index
    because the creation pair is diagonal in this basis.
    """
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    n = len(c)
    return [
        OpTerm(c[i] * np.conj(c[j]), (i, i), (j, j))
        for i in range(n)
        for j in range(n)
    ]


def assemble_matrix(fd: FormalDensity) -> np.ndarray:
    """Literal M^2 x M^2 matrix of a term list over the mode⊗mode basis.

    Each term adds ``coeff`` at row ``k1*M + k2``, column ``c1*M + c2``.  No
    implicit symmetrization: the ordered pairs are mapped as written.
    """
    m = fd.mode_count
    out = np.zeros((m * m, m * m), dtype=complex)
    for t in fd.terms:
        out[t.ket[0] * m + t.ket[1], t.col[0] * m + t.col[1]] += t.coeff
    return out


def partial_transpose_terms(fd: FormalDensity) -> FormalDensity:
    """Partial transpose on the second slot: (k1,k2|c1,c2) -> (k1,c2|c1,k2)."""
    terms = [
        OpTerm(t.coeff, (t.ket[0], t.col[1]), (t.col[0], t.ket[1])) for t in fd.terms
    ]
    return FormalDensity(fd.statistics, fd.mode_count, tuple(terms))


def phc_terms(fd: FormalDensity) -> FormalDensity:
    """Partial Hermitian conjugation of the second slot.

    Same index move as the partial transpose plus conjugation of the
    coefficient; coincides with :func:`partial_transpose_terms` whenever all
    coefficients are real.
    """
    terms = [
        OpTerm(
            complex(t.coeff).conjugate(),
            (t.ket[0], t.col[1]),
            (t.col[0], t.ket[1]),
        )
        for t in fd.terms
    ]
    return FormalDensity(fd.statistics, fd.mode_count, tuple(terms))


def exchange_col_modes(fd: FormalDensity) -> FormalDensity:
    """Reorder each term's column pair using the statistics' exchange rule.

    Bosonic annihilators commute (factor +1); fermionic ones anticommute
    (factor -1 when the two column modes differ, +1 on the diagonal, where no
    reordering happens).  Distinguishable particles admit no exchange.
    """
    if fd.statistics is Statistics.DISTINGUISHABLE:
        raise ValueError("mode exchange is not defined for distinguishable particles")
    terms = []
    for t in fd.terms:
        c1, c2 = t.col
        if fd.statistics is Statistics.FERMION and c1 != c2:
            coeff = -t.coeff
        else:
            coeff = t.coeff
        terms.append(OpTerm(coeff, t.ket, (c2, c1)))
    return FormalDensity(fd.statistics, fd.mode_count, tuple(terms))


def swap_matrix(mode_count: int) -> np.ndarray:
    """Permutation matrix exchanging the two tensor slots on M⊗M."""
    m = mode_count
    s = np.zeros((m * m, m * m))
    for i in range(m):
        for j in range(m):
            s[i * m + j, j * m + i] = 1.0
    return s


def symmetrizer_projection(
    matrix: np.ndarray, mode_count: int, statistics: Statistics
) -> np.ndarray:
    """P @ matrix @ P with P = (I ± SWAP)/2, + for bosons, − for fermions.

    Projects onto the physically admissible (anti)symmetric two-particle
    subspace; rewrites that only use lawful exchanges leave this projection
    unchanged.
    """
    m = mode_count
    a = np.asarray(matrix, dtype=complex)
    if a.shape != (m * m, m * m):
        raise ValueError(f"expected shape {(m * m, m * m)}, got {a.shape}")
    if statistics is Statistics.BOSON:
        p = (np.eye(m * m) + swap_matrix(m)) / 2.0
    elif statistics is Statistics.FERMION:
        p = (np.eye(m * m) - swap_matrix(m)) / 2.0
    else:
        raise ValueError("no (anti)symmetrizer for distinguishable particles")
    return p @ a @ p
