"""Exact computations linking metrised Jordan algebras with the polynomial hypersurfaces they generate."""

from .algebra import (
    Algebra,
    CentralSeries,
    NotQuasiRegularError,
    central_ascending_series,
    is_associative,
    is_jordan,
    is_nilpotent,
    l_operator,
    multiply,
    power,
    quasi_inverse_neg,
    quasi_inverse_series,
    quasi_regular_certificate,
    u_operator,
)
from .canonical import (
    CanonicalResult,
    Flag,
    can_form_basis,
    complete_flag,
    normalize_partition,
    semi_canonicalize,
    verify_semi_canonical,
)
from .catalog import builtin, cayley, list_catalog
from .exactnum import Matrix, Rational, mat_adjugate_inverse, mat_det, mat_kernel, sym_signature
from .metrised import (
    MetrisedAlgebra,
    SplitReport,
    dimension_bound_check,
    direct_sum,
    is_trace_form,
    orthogonal_split_scan,
    skew_derivation_dim,
    validate,
)
from .poly import PolyMatrix, Polynomial, differentiate, evaluate, hessian, poly_det, substitute_linear
from .surface import (
    Surface,
    algebra_at_point,
    dzeta_matrix_at,
    generate_surface,
    is_improper_hypersphere,
    pde_residual_hatC,
    pde_residual_nablaK,
    verify_pde,
)

__version__ = "0.1.0"
