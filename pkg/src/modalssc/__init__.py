"""Strong structural controllability of pattern-constrained networks, mode by mode."""

from .analysis import (
    IFF_FAILS,
    IFF_HOLDS,
    INCONCLUSIVE,
    SUFFICIENT,
    SscVerdict,
    UncontrollableWitness,
    build_abar,
    construct_rank_deficient_witness,
    construct_uncontrollable_witness,
    geometric_multiplicity_bound,
    is_delta_ssc,
    is_strongly_structurally_controllable,
    spectrum_exclusion_n1ds,
)
from .errors import (
    ConfigError,
    ModalSscError,
    NetworkFileError,
    SamplingError,
    SearchLimitError,
    SpecValidationError,
    WitnessError,
)
from .graph import (
    BipartiteGraph,
    DeltaNetworkGraph,
    LoopDigraph,
    build_delta_network_graph,
    build_global_graph,
    coupling_subgraph,
    coupling_union_digraph,
    pattern_full_row_rank,
)
from .oracle import (
    RealizationMatrix,
    VerificationReport,
    controllable_eigen_report,
    monte_carlo_verify,
    numeric_geometric_multiplicity,
    numeric_rank,
    pbh_controllable,
    sample_realization,
    validate_realization,
)
from .pattern import (
    ARB,
    DEFAULT_TOL,
    STAR,
    ZERO,
    BlockStructure,
    CharacteristicVector,
    DeltaSet,
    NetworkSpec,
    PatternMatrix,
    SpectralKnowledge,
    derive_characteristic,
    derive_n1ds_knowledge,
    n1ds_spec,
)
from .zeroforcing import ZfsReport, derived_set, is_zfs, min_zfs, ordinary_derived_set

__version__ = "0.1.0"

__all__ = [
    "ARB",
    "DEFAULT_TOL",
    "IFF_FAILS",
    "IFF_HOLDS",
    "INCONCLUSIVE",
    "STAR",
    "SUFFICIENT",
    "ZERO",
    "BipartiteGraph",
    "BlockStructure",
    "CharacteristicVector",
    "ConfigError",
    "DeltaNetworkGraph",
    "DeltaSet",
    "LoopDigraph",
    "ModalSscError",
    "NetworkFileError",
    "NetworkSpec",
    "PatternMatrix",
    "RealizationMatrix",
    "SamplingError",
    "SearchLimitError",
    "SpecValidationError",
    "SpectralKnowledge",
    "SscVerdict",
    "UncontrollableWitness",
    "VerificationReport",
    "WitnessError",
    "ZfsReport",
    "build_abar",
    "build_delta_network_graph",
    "build_global_graph",
    "construct_rank_deficient_witness",
    "construct_uncontrollable_witness",
    "controllable_eigen_report",
    "coupling_subgraph",
    "coupling_union_digraph",
    "derive_characteristic",
    "derive_n1ds_knowledge",
    "derived_set",
    "geometric_multiplicity_bound",
    "is_delta_ssc",
    "is_strongly_structurally_controllable",
    "is_zfs",
    "min_zfs",
    "monte_carlo_verify",
    "n1ds_spec",
    "numeric_geometric_multiplicity",
    "numeric_rank",
    "ordinary_derived_set",
    "pattern_full_row_rank",
    "pbh_controllable",
    "sample_realization",
    "spectrum_exclusion_n1ds",
    "validate_realization",
]
