"""Finite groupoid racks, their constructions, and colorings of
Y-oriented spatial trivalent graph diagrams."""

from .algebra import (
    UNDEFINED,
    AxiomCheckFailed,
    FiniteGroup,
    FiniteGroupoid,
    FiniteRack,
    GroupoidRack,
    MalformedTable,
    SymmetricRackData,
    ValidationReport,
    canonical_involution,
    check_group,
    check_groupoid,
    check_groupoid_rack,
    check_rack,
    check_symmetric_rack,
    rack_pow,
)
from .coloring import (
    TooLarge,
    count_colorings,
    count_colorings_oracle,
    enumerate_colorings,
    is_coloring,
    recolor_inverse_move,
)
from .constructions import (
    AugmentedRackData,
    ConditionViolated,
    MultipleGroupRackData,
    augmented_groupoid_rack,
    check_augmented_rack,
    check_multiple_group_rack,
    conjugation_augmented,
    conjugation_mgr,
    heap_rack,
    is_multiple_conjugation_quandle,
    multiple_group_rack,
    rack_square,
    trivial_mgr,
)
from .corpus import MovePair, boundary_profile, corpus, invariance_rows
from .diagram import (
    Crossing,
    Diagram,
    NotCircleComponent,
    PatternMismatch,
    ValidationError,
    Vertex,
    arcs,
    circle_components,
    components,
    find_isomorphism,
    isomorphic,
    parse_diagram,
    serialize_diagram,
    validate,
)
from .formats import ParseError, read_algebra, write_algebra
from .groups import (
    builtin_group,
    conjugation_rack,
    cyclic_group,
    dihedral_quandle,
    symmetric_group,
    trivial_group,
    trivial_rack,
)
from .moves import MoveSite, apply_inverse_move, apply_move, parse_site, rewrite, rewrite_sequence
from .universality import (
    LemmaViolated,
    UniversalityData,
    check_universality_conditions,
    universality_construct,
    universality_data_from,
)

__version__ = "0.1.0"
