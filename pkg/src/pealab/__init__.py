"""Finite-model workbench for pseudo effect algebras and pseudo D-posets.

Everything is exhaustively verifiable on small carriers: bounded posets
and their morphisms, the interval and triple constructions, the two
partial differences, partial additions, catalogs up to isomorphism, and
structure transfer along split coequalizers.
"""

from .catalog import (
    CatalogEntry,
    build_catalog,
    catalog_pdps,
    enumerate_bounded_posets,
    enumerate_pea_structures,
    enumerate_posets,
    find_smallest_noncommutative,
    size_limit,
)
from .errors import (
    FormatError,
    InvalidStructure,
    LimitExceeded,
    PealabError,
    TransferError,
)
from .functors import (
    alpha,
    beta,
    check_square,
    interval_elements,
    interval_map,
    interval_poset,
    triple_elements,
    triple_map,
    triple_poset,
    zero_embedding,
)
from .pdp import (
    PDPMorphism,
    PseudoDPoset,
    bslash_morphism,
    check_pdp,
    check_pdp_morphism,
    enumerate_pdp_morphisms,
    equalizer_pdp,
    is_dposet,
    product_pdp,
    slash_morphism,
    subalgebra_generated,
)
from .pea import (
    PseudoEffectAlgebra,
    check_pea,
    check_pea_morphism,
    induced_order,
    is_commutative,
    pdp_to_pea,
    pea_to_pdp,
)
from .plmaps import (
    BandViolation,
    PLMap,
    doubling_map,
    find_band_violation,
    identity_map,
    pl_compose,
    pl_in_unit_interval,
    pl_map,
    pl_noncommutativity_witness,
    pl_sum,
)
from .posets import (
    BoundedPoset,
    Poset,
    PosetMorphism,
    SplitFork,
    check_morphism,
    coequalizer_bposets,
    coequalizer_posets,
    enumerate_morphisms,
    find_isomorphism,
    identity,
    is_split_fork,
    product_bposets,
    validate_bounded_poset,
)
from .reports import Report, Violation
from .transfer import (
    TransferResult,
    generate_split_forks,
    i_preserves_fork,
    split_fork_from_idempotent,
    transfer_structure,
    verify_coequalizer_psdpos,
)

__version__ = "0.1.0"
