#pragma once

#include <vector>

#include "critsolve/model.hpp"

namespace critsolve {

/// Moebius map T(h) = (h-d)/(h-c) that carries the four roots of the quartic
/// psi onto {+-a, +-b} (or {+-a, +-ib} for a conjugate pair), reducing the
/// flux integral to a first-kind elliptic integral with parameter m.
struct HomographicMap {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double A = 0.0;  // (a+1)/(a-1), opposite-signs case only
    double B = 0.0;  // (b+1)/(b-1), opposite-signs case only
    double m = 0.0;  // elliptic parameter
};

/// Builds the reduction map for a quartic factorization.  Throws DegenerateMap
/// when a constitutive denominator vanishes (within 1e-12 of zero), which
/// signals misclassification or a collapsing root pair.
HomographicMap build_homographic_map(const PsiFactorization& fact);

/// I(lambda) = integral over (0,1) of 1/sqrt(psi_lambda), by the closed-form
/// dispatch on the root layout.  Strictly decreasing in lambda.  Throws
/// InfeasibleLambda below the feasibility bound and NearDegenerate when the
/// closed forms cannot be trusted (callers fall back to quadrature).
double integral_I(const SigmaModel& model, double lambda);

/// Same integral by adaptive quadrature after the substitution
/// h = sin^2(pi t / 2), which removes both endpoint singularities.
/// Independent of the closed-form path; serves as its oracle.
double integral_I_quadrature(const SigmaModel& model, double lambda,
                             double rel_tol = 1e-10);

/// One sampled point of the solution profiles.
struct ProfilePoint {
    double z;
    double h;
    double phi;
};

/// Solver output: the eigenvalue, its reciprocal k_eff, dispatch metadata and
/// the sampled profiles z -> (h, phi).
struct SolveResult {
    double lambda = 0.0;
    double keff = 0.0;
    PsiCase case_tag = PsiCase::QuadratureFallback;
    bool used_quadrature_fallback = false;
    int iterations = 0;
    double residual = 0.0;
    std::vector<ProfilePoint> profile;
};

/// Solves I(lambda) = 1 by a bracketed root finder on the strictly decreasing
/// I.  The bracket opens at lambda_lower_bound * (1 + 1e-6) and expands
/// geometrically to the right.  |I(lambda*) - 1| <= tol on return.
SolveResult solve_lambda(const SigmaModel& model, double tol = 1e-12,
                         int profile_points = 201);

/// z(h) = integral over (0,h) of 1/sqrt(psi_lambda) on the graded grid
/// h_k = sin^2(pi k / (2 (n_points-1))), plus phi = sqrt(psi_lambda(h)).
/// z is strictly increasing with z(1) = I(lambda).
std::vector<ProfilePoint> reconstruct_profiles(const SigmaModel& model,
                                               double lambda, int n_points);

} // namespace critsolve
