"""
Decision procedures.

Modules:
- realize: realizability of (θ, φ) with witnesses
- action_model: randomized check of the explicit action behind a realization
- classify: virtually cyclic groups and their orbit spaces
- covers: finite groups acting freely on the infinite-π1 orbit spaces
"""

from .realize import (
    Verdict,
    WitnessSearchConfig,
    realizable_canonical,
    realizable_general,
    find_witness,
)

from .action_model import (
    ActionModelConfig,
    ActionModelReport,
    verify_action_model,
)

from .classify import (
    VCGroupSpec,
    ClassificationResult,
    classify_vc,
)

from .covers import (
    AmbientGroupElement,
    FiniteGroupLabel,
    CoverRow,
    SubgroupKey,
    enumerate_covers,
    identify_finite_quotient,
    subgroup_key,
    search_subgroups,
    free_involution_rows,
)

__all__ = [
    # Realizability
    'Verdict', 'WitnessSearchConfig', 'realizable_canonical', 'realizable_general',
    'find_witness',

    # Action model
    'ActionModelConfig', 'ActionModelReport', 'verify_action_model',

    # Classification
    'VCGroupSpec', 'ClassificationResult', 'classify_vc',
    'AmbientGroupElement', 'FiniteGroupLabel', 'CoverRow', 'SubgroupKey',
    'enumerate_covers', 'identify_finite_quotient', 'subgroup_key',
    'search_subgroups', 'free_involution_rows',
]
