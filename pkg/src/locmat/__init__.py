"""Exact calculus of Steinitz numbers, saturated sets, and locally matrix
algebra spectra."""

from .density import INFINITY, Density, Surd, cmp_density, format_density, parse_density
from .saturated import (
    ALL_NATURALS,
    AllNaturals,
    AxiomViolation,
    FiniteType,
    Inclusion,
    InfType,
    SaturatedSet,
    Segment,
    TailRule,
    check_saturation_axioms,
    compare_inclusion,
    contains,
    density,
    equals_extensional,
    equals_formal,
    format_set,
    max_element,
    mk_all_naturals,
    mk_finite_type,
    mk_inf_type,
    mk_segment,
    parse_set,
    r_sub,
    rebase,
    sample_members,
    union_chain,
)
from .steinitz import (
    INF,
    ONE,
    ParseError,
    SteinitzNumber,
    canonical_ratio,
    divide_by,
    divides,
    enumerate_omega,
    finitely_divides,
    lcm,
    mul_natural,
    omega_contains,
    parse,
    parse_scaled,
    rationally_connected,
    scale,
)
from .algebra import (
    AlgebraDescriptor,
    ChainPresentation,
    CornerWitness,
    FiniteMatrixChain,
    Stage,
    check_certificate,
    corner,
    embeds_as_approximative_corner,
    format_descriptor,
    interleave,
    is_unital,
    isomorphic,
    m_infinity,
    match_corner,
    matrix_over,
    parse_descriptor,
    realize,
    spec_matrix,
    spec_unital,
    spectrum_of_chain,
)

__version__ = "0.1.0"
