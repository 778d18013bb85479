"""Exact Hilbert series of invariants from formal characters.

The pipeline: a nice rational character ``P(t, q) / prod (1 - t^alpha q^k)``
is expanded in q, each coefficient is split into Schur polynomials, the
operator D turns each Schur polynomial into an invariant dimension, and the
resulting integer series is matched to a closed form ``P(q) / prod (1 - q^d)``.
"""

from .errors import (
    BetaOutOfRange,
    CharqError,
    FactorNotExpandable,
    InsufficientPrefix,
    InvalidPartition,
    NegativeQPower,
    NoFit,
    NonSymmetric,
    NotDivisible,
    UnsupportedSize,
    VariableCountMismatch,
)
from .invariants import (
    CyclicDiagonal,
    DiagonalTorus,
    FullGL,
    GroupSpec,
    MaximalUnipotent,
    SpecialLinear,
    d_character,
    d_schur,
    free_algebra_character,
    group_from_json,
    hilbert_invariants,
)
from .laurent import (
    CharacterSeries,
    IntSeries,
    LaurentPoly,
    lp_eval_ones,
    lp_exact_div,
    lp_is_symmetric,
    lp_mul,
    qs_add,
    qs_geom,
    qs_mul,
)
from .nice_rational import (
    Decomposition,
    NiceRational,
    nr_add,
    nr_decompose,
    nr_mul,
    nr_series,
    nr_substitute_tq,
)
from .reconstruct import (
    FittedForm,
    RecurrenceGuess,
    find_recurrence,
    fit_numerator,
    search_denominators,
)
from .schur import (
    SchurExpansion,
    e_factor,
    kostka,
    schur_expand,
    schur_poly,
    schur_poly_bialternant,
)
from .worked import (
    QuadraticIrrational,
    detect_eventual_period,
    fhl_series,
    nagata_identity_check,
    nagata_series,
    semigroup_coeff,
    semigroup_differences,
    semigroup_series,
    tensor_invariant_dim_oracle,
)

__version__ = "0.1.0"
