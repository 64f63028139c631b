"""Criticality eigenvalue workbench.

Solves the normalized coupled flux/enthalpy boundary-value problem for a
cross section known at three points, by closed-form elliptic integrals,
singularity-aware quadrature, a one-scalar-equation discrete scheme and the
traditional code-coupling iteration.
"""

from critsolve._core import (
    ConvergencePoint,
    CouplingState,
    DiscreteSolution,
    DomainError,
    GeneralizedEigenResult,
    HalfCubicFactors,
    HomographicMap,
    InfeasibleLambdaError,
    NearDegenerateError,
    ProfilePoint,
    PsiCase,
    PsiFactorization,
    SigmaKind,
    SigmaModel,
    SigmaSamples,
    SolveResult,
    build_homographic_map,
    build_mesh,
    build_model,
    classify_psi,
    convergence_study,
    coupling_iterate,
    discrete_sum,
    ellik_complete,
    ellik_incomplete,
    integral_I,
    integral_I_quadrature,
    lambda_lower_bound,
    make_samples,
    psi_eval,
    psi_from_factorization,
    reconstruct_profiles,
    sigma_eval,
    smallest_generalized_eigen,
    solve_lambda,
    solve_lambda_discrete,
    v_eval,
    v_prime,
)

__all__ = [
    "ConvergencePoint",
    "CouplingState",
    "DiscreteSolution",
    "DomainError",
    "GeneralizedEigenResult",
    "HalfCubicFactors",
    "HomographicMap",
    "InfeasibleLambdaError",
    "NearDegenerateError",
    "ProfilePoint",
    "PsiCase",
    "PsiFactorization",
    "SigmaKind",
    "SigmaModel",
    "SigmaSamples",
    "SolveResult",
    "build_homographic_map",
    "build_mesh",
    "build_model",
    "classify_psi",
    "convergence_study",
    "coupling_iterate",
    "discrete_sum",
    "ellik_complete",
    "ellik_incomplete",
    "integral_I",
    "integral_I_quadrature",
    "lambda_lower_bound",
    "make_samples",
    "psi_eval",
    "psi_from_factorization",
    "reconstruct_profiles",
    "sigma_eval",
    "smallest_generalized_eigen",
    "solve_lambda",
    "solve_lambda_discrete",
    "v_eval",
    "v_prime",
]
