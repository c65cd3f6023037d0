"""Domain-wall six-vertex model: brute-force oracle, Izergin determinant and boundary correlators."""

from .correlators import (
    WORKING_DPS,
    bpz_onepoint,
    left_onepoint,
    right_column_weight,
    roll_step_check,
    twopoint_case1,
    twopoint_case2,
    twopoint_case3,
    twopoint_case4,
)
from .errors import (
    CapExceeded,
    DegenerateRapidities,
    DimensionMismatch,
    DuplicateInversion,
    DWBCError,
    IndexOutOfRange,
    InvalidOrder,
    NonSquare,
    NotConserving,
    RemovalMismatch,
    ZeroPartition,
)
from .izergin import izergin_matrix, izergin_partition, reduced_partition
from .lattice import (
    ENUMERATION_CAP,
    ArrowGrid,
    BoundarySpec,
    VertexPredicate,
    brute_partition,
    classify_vertex,
    config_weight,
    count_configurations,
    dwbc,
    enumerate_configurations,
    make_boundary,
)
from .weights import (
    ModelParams,
    VertexKind,
    bracket,
    is_close,
    r_matrix,
    rel_dev,
    strict_rel_dev,
    vertex_weight,
    ybe_residual,
    ybe_scalar_residual,
)

__all__ = [
    "ENUMERATION_CAP",
    "WORKING_DPS",
    "ArrowGrid",
    "BoundarySpec",
    "CapExceeded",
    "DWBCError",
    "DegenerateRapidities",
    "DimensionMismatch",
    "DuplicateInversion",
    "IndexOutOfRange",
    "InvalidOrder",
    "ModelParams",
    "NonSquare",
    "NotConserving",
    "RemovalMismatch",
    "VertexKind",
    "VertexPredicate",
    "ZeroPartition",
    "bpz_onepoint",
    "bracket",
    "brute_partition",
    "classify_vertex",
    "config_weight",
    "count_configurations",
    "dwbc",
    "enumerate_configurations",
    "is_close",
    "izergin_matrix",
    "izergin_partition",
    "left_onepoint",
    "make_boundary",
    "r_matrix",
    "reduced_partition",
    "rel_dev",
    "right_column_weight",
    "roll_step_check",
    "strict_rel_dev",
    "twopoint_case1",
    "twopoint_case2",
    "twopoint_case3",
    "twopoint_case4",
    "vertex_weight",
    "ybe_residual",
    "ybe_scalar_residual",
]
