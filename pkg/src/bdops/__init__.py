"""Genuine Bernstein-Durrmeyer operators and their blended variants.

Evaluation of the classical operator and three modifications (first-order
blend, second-order and third-order variants), exact rational oracles for
their moment identities, quadrature against Bernstein basis rows, modulus
and asymptotic analysis, and reproduction of the published error tables.
"""
from .backend import available_backends, backend_name, set_backend
from .basis import basis_monomial_integral, basis_row, basis_rows, eval_basis, eval_basis_exact
from .functions import G1, G2, G3, TestFunction, from_name, monomial, polynomial
from .operators import (
    AlphaSequences,
    BetaGammaSequences,
    ConstraintError,
    OperatorSpec,
    apply,
    apply_exact,
    apply_grid,
    blended_weight_u1,
    centered_polynomial,
    classical_alpha_sequences,
    classical_beta_sequences,
    classical_genuine,
    default_alpha_sequences,
    general2,
    is_positive,
    modified1,
    tilde2,
    tilde2_sequences,
    tilde3,
    tilde3_coefficients,
)
from .quadrature import QuadraturePlan, integrate_against_basis, make_plan
from .moments import (
    MomentReport,
    central_moment_oracle,
    central_moment_tilde2_closed,
    central_moment_tilde3_closed,
    central_moment_u1_closed,
    decay_slope,
    moment_oracle,
    moment_tilde2_closed,
    moment_u1_closed,
    remainder_scaling,
    verify_lemma,
)
from .analysis import (
    BoundCheck,
    DegenerateFitError,
    OrderFit,
    VoronovskajaTarget,
    check_uniform_bound,
    fit_convergence_order,
    modulus_of_continuity,
    voronovskaja_residual,
)
from .experiments import (
    KNOWN_DISCREPANCIES,
    CellReport,
    ErrorTable,
    FigureSeries,
    emit_figure,
    figure_series,
    nonpositive_alpha_sequences,
    published_table,
    reproduce_table,
    run_suite,
)

__version__ = "0.1.0"
