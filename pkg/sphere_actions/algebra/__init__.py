"""
Exact algebra for the decision procedures.

Modules:
- freeword: reduced words, automorphisms and the abelianization matrix
- intlat: integer matrices, Smith normal form, kernels and involution canonical forms
- twistgrp: the semidirect product F ⋊ Z2, orientations, free products and decomposition checks
"""

from .freeword import (
    Letter,
    Word,
    FreeAutomorphism,
    reduce,
    multiply,
    invert,
    exponent_sum,
    apply_aut,
    compose,
    is_involution,
    abelianization_matrix,
)

from .intlat import (
    IntMatrix,
    SmithForm,
    LatticeBasis,
    CanonicalInvolution,
    smith_normal_form,
    kernel_lattice,
    involution_invariants,
    canonicalize_involution,
    canonical_matrix,
    match_canonical_form,
)

from .twistgrp import (
    TwistedGroup,
    SemidirectElement,
    OrientationHom,
    DyerScottClaim,
    LambdaBlock,
    EmbeddingReport,
    sd_multiply,
    sd_invert,
    has_order_two,
    validate_orientation,
    orientation_violations,
    evaluate_orientation,
    free_product_with_z2,
    combine_orientations,
    verify_dyer_scott,
    standard_involution,
    standard_claim,
)

__all__ = [
    # Free groups
    'Letter', 'Word', 'FreeAutomorphism', 'reduce', 'multiply', 'invert',
    'exponent_sum', 'apply_aut', 'compose', 'is_involution', 'abelianization_matrix',

    # Lattices
    'IntMatrix', 'SmithForm', 'LatticeBasis', 'CanonicalInvolution',
    'smith_normal_form', 'kernel_lattice', 'involution_invariants',
    'canonicalize_involution', 'canonical_matrix', 'match_canonical_form',

    # Semidirect products
    'TwistedGroup', 'SemidirectElement', 'OrientationHom', 'DyerScottClaim',
    'LambdaBlock', 'EmbeddingReport', 'sd_multiply', 'sd_invert', 'has_order_two',
    'validate_orientation', 'orientation_violations', 'evaluate_orientation',
    'free_product_with_z2', 'combine_orientations', 'verify_dyer_scott',
    'standard_involution', 'standard_claim',
]
