"""Separability analysis for small bipartite quantum states.

Decides separability questions with the partial-transpose family of tests
(PPT, determinant, realignment, partial Hermitian conjugation), canonical
decompositions (Schmidt, Takagi, Slater), and the boson/fermion term-rewrite
pipelines that turn a partially transposed identical-particle state back into
an explicit product.
"""

from .criteria import (
    AnalysisReport,
    CriterionVerdict,
    DensityMatrix,
    boson_pipeline,
    density_matrix_report,
    det_test,
    distinguishable_pipeline,
    fermion_pipeline,
    partial_transpose,
    partial_transpose_matrix,
    ppt_test,
    product_factorization,
    pt_symmetrize_equals_realign_check,
    realign,
    realign_matrix,
    realignment_test,
)
from .decomp import (
    SchmidtForm,
    SlaterForm,
    TakagiForm,
    schmidt_decompose,
    slater_decompose,
    takagi_decompose,
)
from .fock import (
    FormalDensity,
    OpTerm,
    Statistics,
    assemble_matrix,
    exchange_col_modes,
    pair_state_terms,
    partial_transpose_terms,
    phc_terms,
    symmetrizer_projection,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "CriterionVerdict",
    "DensityMatrix",
    "FormalDensity",
    "OpTerm",
    "SchmidtForm",
    "SlaterForm",
    "Statistics",
    "TakagiForm",
    "assemble_matrix",
    "boson_pipeline",
    "density_matrix_report",
    "det_test",
    "distinguishable_pipeline",
    "exchange_col_modes",
    "fermion_pipeline",
    "pair_state_terms",
    "partial_transpose",
    "partial_transpose_matrix",
    "partial_transpose_terms",
    "phc_terms",
    "ppt_test",
    "product_factorization",
    "pt_symmetrize_equals_realign_check",
    "realign",
    "realign_matrix",
    "realignment_test",
    "schmidt_decompose",
    "slater_decompose",
    "symmetrizer_projection",
    "takagi_decompose",
]
