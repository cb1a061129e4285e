"""Finite-alphabet laboratory for identification systems with secret binding.

Computes achievable rate regions (identification, secrecy, template, privacy)
over quantized auxiliary channels and simulates the matching random-binning
enrollment/identification construction with a one-time-pad masking layer.
"""

__version__ = "0.1.0"

from .probability import (
    AuxiliaryPair,
    Channel,
    FiniteDistribution,
    JointDistribution,
    SystemModel,
    compose_joint,
    conditional_mutual_information,
    entropy,
    marginalize,
    mutual_information,
)
from .region import (
    MutualInfoSummary,
    RateTuple,
    RegionSpec,
    SearchConfig,
    boundary_sweep,
    cardinality_sweep,
    check_equivalence,
    extreme_tuple_a2,
    is_member_a1,
    reduction_checks,
    summarize,
)
from .simulate import (
    CodeParams,
    Codebook,
    Database,
    SimReport,
    Template,
    achievability_trend,
    derive_params,
    enroll,
    exact_leakage,
    generate_codebook,
    identify,
    mask,
    run_trials,
    unmask,
)
from .typicality import (
    SymbolSequence,
    TypicalityParams,
    empirical_counts,
    is_jointly_typical,
    is_strongly_typical,
)
