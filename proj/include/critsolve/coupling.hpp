#pragma once

#include <span>
#include <vector>

#include "critsolve/model.hpp"

namespace critsolve {

/// Smallest eigenvalue/eigenvector of the pencil
///
///   (-d^2/dz^2 + 1) phi = lambda Sigma phi,  phi(0) = phi(1) = 0,
///
/// on the uniform grid z_i = i/(M+1) with second-order central differences.
/// sigma_field holds Sigma at the M interior nodes (all > 0).  The pencil is
/// symmetrized through D^{-1/2} A D^{-1/2} and solved by inverse power
/// iteration (tridiagonal solves) to 1e-12 relative eigenvalue accuracy.
/// The returned flux lives on the interior nodes, is positive, and has unit
/// trapezoidal integral (boundary values are zero).
struct GeneralizedEigenResult {
    double lambda = 0.0;
    std::vector<double> phi;  // interior nodes, normalized
    int iterations = 0;
};

GeneralizedEigenResult smallest_generalized_eigen(
    std::span<const double> sigma_field, int grid_m);

/// History of the alternating neutronics/enthalpy iteration.
///
/// lambda_seq and psi_norm_seq start with the initialization eigensolve
/// (constant Sigma frozen at h = 0) and gain one entry per iteration;
/// h_delta_seq has exactly one entry per iteration, so its length is the
/// iteration count.  The late ratios h_delta[n+1]/h_delta[n] are the
/// empirical contraction factors of the scheme.  psi_norm_seq holds the
/// discrete (trapezoidal) L2 norm of sqrt(Sigma(h)) * phi for each solve.
/// Fields include the boundary nodes.
struct CouplingState {
    int grid_m = 0;
    std::vector<double> z_nodes;       // 0..1 inclusive, M+2 values
    std::vector<double> h_field;       // enthalpy, h(0) = 0
    std::vector<double> phi_field;     // flux, zero at both boundaries
    std::vector<double> lambda_seq;    // lambda_0, lambda_1, ...
    std::vector<double> h_delta_seq;   // |h_{n+1} - h_n|_inf per iteration
    std::vector<double> psi_norm_seq;  // aligned with lambda_seq
    bool converged = false;
};

/// Alternates the generalized eigensolve with the enthalpy update
/// h' = phi (cumulative trapezoidal integration, h(0) = 0) until the
/// enthalpy increment drops below tol or max_iter is reached.  Divergence is
/// a reportable outcome: the state comes back with converged = false.
CouplingState coupling_iterate(const SigmaModel& model, int grid_m, double tol,
                               int max_iter);

} // namespace critsolve
