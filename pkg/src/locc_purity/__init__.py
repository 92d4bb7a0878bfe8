"""Numerical testbed for one-sided purity testing of many-copy bipartite states."""

from .errors import InvariantError, MemoryCapError, ValidationError
from .partitions import (
    BoundCheck,
    DimensionRecord,
    Partition,
    TypeRegionCheck,
    check_dim_entropy_bound,
    complete_homogeneous,
    dimension_record,
    enumerate_partitions,
    hook_dim,
    kl_divergence,
    mn_character,
    schur_polynomial,
    shannon_entropy,
    type_region_bound,
    weyl_dim,
)
from .protocol import (
    BlockStats,
    SweepResult,
    TestReport,
    block_statistics,
    exponent_series,
    p_opt,
    p_star,
    run_test,
    slack_bound,
    tsuda_acceptance,
)
from .schurweyl import (
    BlockStructureReport,
    IsotypicProjectorSet,
    ab_block_projector,
    build_projector_set,
    chain_interleave_permutation,
    chain_to_copy_index,
    chain_to_copy_operator,
    sym_projector_bipartite,
    to_copy_major,
    verify_block_structure,
    young_projector,
)
from .states import (
    StateAnalysis,
    StateSpec,
    analyze,
    build_state,
    partial_trace_b,
    spec_from_json,
    spec_to_json_dict,
    tensor_power,
)
from .tensorops import (
    DEFAULT_MEMORY_CAP,
    kron,
    perm_operator,
    symmetric_basis,
    symmetrizer,
)

__version__ = "0.1.0"
