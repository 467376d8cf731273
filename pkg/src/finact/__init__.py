"""finact: finite monoid acts, their constructions, and lifting properties."""

from .core import (
    Act,
    ActMap,
    Congruence,
    FiniteMonoid,
    StructureError,
    canonical_form,
    canonical_key,
    compose,
    congruence_closure,
    empty_act,
    empty_acts_allowed,
    fixed_point_inclusion,
    fixed_points,
    identity_map,
    indecomposable_components,
    is_closed_subset,
    point_act,
    regular_act,
    set_empty_acts_allowed,
    subact,
    validate,
)
from .constructions import (
    ChainDiagram,
    ConstructionResult,
    Nonexistence,
    TensorMap,
    TensorResult,
    chain_colimit,
    coproduct,
    pullback,
    pushout,
    pushout_mediating,
    quotient,
    quotient_induced,
    rees_quotient,
    tensor,
    tensor_induced,
)
from .homsearch import (
    MapRetractWitness,
    Square,
    enumerate_maps,
    find_filler,
    find_isomorphism,
    find_map_retract,
    find_retraction,
    find_section,
    iter_maps,
)
from .classes import (
    ActClass,
    ClassDescriptor,
    Decision,
    EPI,
    MONO,
    MapFlags,
    SPLIT_EPI,
    SPLIT_MONO,
    UNITARY,
    Universe,
    classify_map,
    default_bound,
    enumerate_acts,
    explicit_act_class,
    explicit_maps,
    fix_fibers,
    flat_rees_mono,
    has_lifting,
    in_class,
    is_flat_bounded,
    is_projective_wrt,
    is_stable_bounded,
    is_unitary,
    llp_against,
    projective_for,
    pure_epi,
    relative_box,
    rlp_against,
    triangle,
    unitary_complement,
    unitary_with_complement_in,
    universe,
)
from .wfs import (
    CentredPrecoverEvidence,
    CofCertificate,
    Factorization,
    SOAResult,
    SOASquare,
    SOAStage,
    WfsReport,
    centred_factor_via_precover,
    centred_precover,
    centred_wfs_precover,
    check_precover,
    cof_certificate,
    factor_unitary_split,
    factor_via_precover,
    precover,
    replay_soa_theta,
    small_object_factorize,
    soa_theta_certificate,
    verify_cof_certificate,
    verify_soa,
    wfs_verify,
    zero_act,
)
