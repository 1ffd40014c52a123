"""Exact computation of f-twisted Alexander matrices of quandles, their
elementary ideals over group rings, and low-degree quandle homology."""
from .alexander import (
    AlexanderPair,
    TwistedMatrix,
    build_matrix,
    elementary_ideal,
    f_derivative,
    pair_cocycle,
    pair_laurent,
    reduce_matrix,
    verify_alexander_pair,
)
from .errors import *  # noqa: F401,F403
from .homology import (
    Cocycle,
    boundary_matrix,
    cocycle_basis,
    cocycle_check,
    quandle_H2,
    theta_rho_image,
)
from .knots import (
    MarkedPresentation,
    PDCode,
    pd_to_presentation,
    state_sum_weights,
    surface_weight_ideal,
    verify_theorem2,
)
from .quandle import (
    FiniteQuandle,
    FreeQuandleElement,
    Presentation,
    check_axioms,
    enumerate_homs,
    evaluate_word,
    fq_operate,
    is_connected,
    presentation_from_table,
    word,
)
from .ring import (
    LAURENT,
    AbelianGroup,
    GroupRingElem,
    IdealLattice,
    cyclic,
    gr_add,
    gr_monomial_inverse,
    gr_mul,
    gr_neg,
    ideal_contains,
    ideal_equal,
    ideal_from_generators,
    laurent,
    laurent_normalize,
)

__version__ = "0.1.0"
