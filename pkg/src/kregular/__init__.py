"""Regular factorizations of contractions, their defect spaces and the
commuting-tuple and analytic variants of the same question."""

__version__ = "0.1.0"

from .analytic import (
    SAMPLED,
    AnalyticChain,
    BoundaryGrid,
    MatrixPolynomial,
    SampledVerdict,
    align_coincidence,
    boundary_defect,
    build_analytic_chain,
    char_fn,
    pointwise_regularity,
    purely_contractive_check,
    sampled_regularity,
)
from .commuting import (
    MAX_K,
    CommutingTuple,
    SymmetricReport,
    chain_for_permutation,
    symmetric_k_regular,
    validate_tuple,
)
from .defect import Contraction, DefectSpace, as_contraction, defect_operator, defect_space
from .errors import *  # noqa: F401,F403
from .factorization import (
    FactorizationChain,
    InvalidChain,
    Partition,
    RegularityReport,
    adjoint_chain,
    aggregate,
    all_partitions,
    build_chain,
    cascade_criterion,
    check_k_regular,
    intersection_criterion,
    verify_partition_identity,
    z_matrix,
)
from .matrix_core import DEFAULT_TOL, ToleranceProfile, operator_norm, psd_sqrt
