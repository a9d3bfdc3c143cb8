"""Skew polynomials k[X, sigma] over finite fields: arithmetic, reduced norms,
factorization, counting and uniform sampling of factorizations."""

from .centre_norm import (
    CentrePolynomial,
    centre_embed,
    centre_project,
    commutative_factorize,
    norm,
    reduced_norm,
    reduced_norm_charpoly,
    reduced_norm_matrix,
    reduced_norm_small,
)
from .combinatorics import (
    FactorizationSampler,
    PathTable,
    count_factorizations,
    count_type_e_step,
    dual_type,
    random_factorization,
    random_right_divisor,
)
from .errors import (
    ContextMismatch,
    GuardExceeded,
    NotCentral,
    NotEtale,
    NotIrreducible,
    OrePolyError,
    ParseError,
    RetryBudgetExceeded,
)
from .factorizer import (
    FactorizationResult,
    TypeProfile,
    are_similar,
    factor_step,
    first_factor,
    is_irreducible,
    skew_factorization,
    split_by_norm_factors,
    strip_x,
    type_profile,
)
from .field_tower import (
    FieldElement,
    FiniteField,
    SkewContext,
    build_context,
    conjugates,
    format_field_spec,
    frobenius_power,
    parse_field_spec,
    primitive_data,
    relative_norm,
)
from .skew_ring import (
    SkewMatrix,
    SkewPolynomial,
    fast_extended_rgcd,
    lgcd,
    left_divmod,
    llcm,
    matrix_rep,
    matrix_unrep,
    rgcd,
    right_divmod,
    rlcm,
    skew_mul,
    skew_mul_classical,
    skew_mul_commutative,
    skew_mul_karatsuba,
    skew_mul_matrix,
)

__version__ = "0.1.0"
