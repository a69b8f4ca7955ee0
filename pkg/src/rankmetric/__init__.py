"""Rank-metric codes, their generalized weights, and associated q-polymatroids."""

from __future__ import annotations

from .errors import AmbientMismatchError, FieldMismatchError, GuardExceeded, InputError, OrientationError
from .field import ExtensionBasis, FieldElement, FieldSpec, Tower, dual_basis, field_create, field_trace
from .matrix_code import (
    EquivalenceWitness,
    MatrixCode,
    code_from_generators,
    covering_radius,
    dual,
    full_code,
    is_equivalent,
    is_mrd,
    is_optimal_anticode,
    mat_supported,
    maxrk,
    min_distance,
    rank_distribution,
    support,
    supported_subcode,
    transform,
    transpose_code,
    zero_code,
)
from .polymatroid import (
    AxiomReport,
    QPolymatroid,
    anticode_table,
    build_qpm,
    check_axioms,
    is_qmatroid,
    qpm_anticode_profile,
    qpm_dual,
    qpm_equal,
    qpm_equivalent,
    qpm_is_mrd,
    qpm_min_distance,
    rho,
    uniform_mrd_table,
)
from .subspace import Lattice, Subspace, gaussian_binomial, get_lattice, orth, span
from .vector_code import VectorCode, gabidulin, gamma_expand, rank_weight, vdual, vmin_distance, vtransform
from .weights import (
    WeightProfile,
    gen_weights_anticode,
    gen_weights_qpm,
    minimizing_anticodes,
    optimal_anticodes,
    support_weights,
)

__version__ = "0.1.0"
