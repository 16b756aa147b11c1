"""Exact-arithmetic construction and verification of quantum MDS codes."""

from .budgets import DEFAULT_BUDGET, DEFAULT_SEED, SearchBudget
from .ccodes import (
    ConstacyclicSpec,
    bch_ht_bound,
    build_code,
    canonical_beta_log,
    mds_spec,
    spec_from_dict,
    spec_to_dict,
)
from .errors import QmdsError
from .gf import (
    FieldTable,
    SubfieldEmbedding,
    build_field,
    conjugate,
    embed,
    field_for_order,
    norm,
    norm_preimage,
    subfield_order,
)
from .linalg import (
    LinearCode,
    WeightResult,
    code_from_parity,
    dual,
    hermitian_inner,
    is_subcode,
    linear_code,
    mds_verify,
    min_weight,
    min_weight_relative,
    puncture,
    shorten,
    subfield_subcode,
)
from .pcode import (
    PresenceResult,
    PunctureCode,
    in_puncture_code,
    puncture_direct,
    puncture_spectral,
    rescale_self_orthogonal,
    respects_product_pairing,
    weight_present,
    weight_spectrum,
)
from .qstab import (
    FamilyScan,
    QuantumCodeParams,
    Registry,
    char2_q2plus2,
    conjecture_pc_params,
    conjecture_report,
    distance4_char2_report,
    family_distance2,
    family_q2plus1,
    figdata,
    puncture_stabilizer,
    qmds_check,
    run_pipeline,
    shorten_params,
    stabilizer_from_self_orthogonal,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_SEED",
    "SearchBudget",
    "ConstacyclicSpec",
    "bch_ht_bound",
    "build_code",
    "canonical_beta_log",
    "mds_spec",
    "spec_from_dict",
    "spec_to_dict",
    "QmdsError",
    "FieldTable",
    "SubfieldEmbedding",
    "build_field",
    "conjugate",
    "embed",
    "field_for_order",
    "norm",
    "norm_preimage",
    "subfield_order",
    "LinearCode",
    "WeightResult",
    "code_from_parity",
    "dual",
    "hermitian_inner",
    "is_subcode",
    "linear_code",
    "mds_verify",
    "min_weight",
    "min_weight_relative",
    "puncture",
    "shorten",
    "subfield_subcode",
    "PresenceResult",
    "PunctureCode",
    "in_puncture_code",
    "puncture_direct",
    "puncture_spectral",
    "rescale_self_orthogonal",
    "respects_product_pairing",
    "weight_present",
    "weight_spectrum",
    "FamilyScan",
    "QuantumCodeParams",
    "Registry",
    "char2_q2plus2",
    "conjecture_pc_params",
    "conjecture_report",
    "distance4_char2_report",
    "family_distance2",
    "family_q2plus1",
    "figdata",
    "puncture_stabilizer",
    "qmds_check",
    "run_pipeline",
    "shorten_params",
    "stabilizer_from_self_orthogonal",
    "__version__",
]
