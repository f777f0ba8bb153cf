"""Census, certification, and likelihood tools for cycle concentration models."""

from ._core import (
    CensusError,
    CensusReport,
    Certificate,
    ConvergenceError,
    IntersectionPoint,
    MleResult,
    NeedsMinorsError,
    OracleReport,
    Polynomial,
    SimplicityError,
    char_poly_even_minus,
    char_poly_even_plus,
    char_poly_odd,
    checkerboard,
    conjugate_sign,
    critical_points_oracle,
    divisibility_check,
    enumerate_points,
    factorization_check,
    harvest_minors,
    in_affine_slice,
    in_l_inverse,
    jacobian_at,
    likelihood_gradient,
    log_lik,
    m_matrix,
    ml_degree_formula,
    oracle_generic_s,
    p_poly,
    poly_roots,
    project_l,
    project_lperp,
    random_generic_s,
    rank_certificate,
    rk_identity_check,
    shift_conjugate,
    solve_mle,
    support_positions,
    variety_degree_formula,
)

__all__ = [
    "CensusError",
    "CensusReport",
    "Certificate",
    "ConvergenceError",
    "IntersectionPoint",
    "MleResult",
    "NeedsMinorsError",
    "OracleReport",
    "Polynomial",
    "SimplicityError",
    "char_poly_even_minus",
    "char_poly_even_plus",
    "char_poly_odd",
    "checkerboard",
    "conjugate_sign",
    "critical_points_oracle",
    "divisibility_check",
    "enumerate_points",
    "factorization_check",
    "harvest_minors",
    "in_affine_slice",
    "in_l_inverse",
    "jacobian_at",
    "likelihood_gradient",
    "log_lik",
    "m_matrix",
    "ml_degree_formula",
    "oracle_generic_s",
    "p_poly",
    "poly_roots",
    "project_l",
    "project_lperp",
    "random_generic_s",
    "rank_certificate",
    "rk_identity_check",
    "shift_conjugate",
    "solve_mle",
    "support_positions",
    "variety_degree_formula",
]

__version__ = "0.1.0"
