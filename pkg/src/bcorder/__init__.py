"""Tools for ordering the two receivers of a discrete memoryless broadcast channel.

The package decides, numerically and where possible in closed form, how the
two receivers of a broadcast channel compare: is one a degraded version of
the other, is one less noisy or more capable, and if a universal ordering
fails, does it still hold over a restricted class of input distributions.
On top of the ordering tests it sweeps superposition-coding rate regions and
matching outer bounds.
"""

from .probcore import (
    CELL_FLOOR,
    SIMPLEX_TOL,
    Dist,
    DomainError,
    Joint2,
    Joint3,
    assemble_joint,
    binary_convolve,
    binary_entropy,
    conditional_mi,
    entropy,
    entropy_vec,
    joint_through_channel,
    mutual_information,
)
from .channels import (
    ChannelFormatError,
    CSymmetryWitness,
    Dmc,
    NotCSymmetricError,
    SymmetrizedJoint,
    bec,
    bsc,
    cascade,
    channel_from_dict,
    channel_mi,
    channel_to_dict,
    detect_c_symmetry,
    load_channel,
    save_channel,
    split_input_pair,
    symmetrize,
)
from .bscbec import (
    BscBecPair,
    DegeneratePairError,
    InternalConsistencyError,
    PairClass,
    PairTag,
    classify_pair,
    critical_point,
    d_curve,
    d_derivative,
    d_func,
    degrading_channel,
    is_less_noisy_convexity,
)
from .classify import (
    AuxDecomposition,
    ClassVerdict,
    Outcome,
    gap_functional,
    search_less_noisy_counterexample,
    simplex_grid,
    test_degraded,
    test_dominant_c_symmetry,
    test_essentially_less_noisy,
    test_essentially_more_capable,
    test_less_noisy,
    test_more_capable,
)
from .regions import (
    RatePoint,
    RegionFrontier,
    frontier_contains,
    frontier_distance,
    outer_bound_eq_ob,
    outer_bound_vx,
    superposition_region,
    theorem1_region,
    theorem2_region,
)

__version__ = "0.1.0"

__all__ = [
    "AuxDecomposition",
    "BscBecPair",
    "CELL_FLOOR",
    "ChannelFormatError",
    "ClassVerdict",
    "CSymmetryWitness",
    "DegeneratePairError",
    "Dist",
    "Dmc",
    "DomainError",
    "InternalConsistencyError",
    "Joint2",
    "Joint3",
    "NotCSymmetricError",
    "Outcome",
    "PairClass",
    "PairTag",
    "RatePoint",
    "RegionFrontier",
    "SIMPLEX_TOL",
    "SymmetrizedJoint",
    "assemble_joint",
    "bec",
    "binary_convolve",
    "binary_entropy",
    "bsc",
    "cascade",
    "channel_from_dict",
    "channel_mi",
    "channel_to_dict",
    "classify_pair",
    "conditional_mi",
    "critical_point",
    "d_curve",
    "d_derivative",
    "d_func",
    "degrading_channel",
    "detect_c_symmetry",
    "entropy",
    "entropy_vec",
    "frontier_contains",
    "frontier_distance",
    "gap_functional",
    "is_less_noisy_convexity",
    "joint_through_channel",
    "load_channel",
    "mutual_information",
    "outer_bound_eq_ob",
    "outer_bound_vx",
    "save_channel",
    "search_less_noisy_counterexample",
    "simplex_grid",
    "split_input_pair",
    "superposition_region",
    "symmetrize",
    "test_degraded",
    "test_dominant_c_symmetry",
    "test_essentially_less_noisy",
    "test_essentially_more_capable",
    "test_less_noisy",
    "test_more_capable",
    "theorem1_region",
    "theorem2_region",
]
