#pragma once

#include <optional>
#include <span>
#include <vector>

#include "critsolve/model.hpp"

namespace critsolve {

/// Output of the one-scalar-equation discrete solve: the mesh in h, the
/// resulting z abscissas (a byproduct of the converged eigenvalue), the flux
/// samples and the residual |S(lambda_n) - 1|.
struct DiscreteSolution {
    int n = 0;
    double lambda_n = 0.0;
    std::vector<double> h_nodes;
    std::vector<double> z_nodes;
    std::vector<double> phi_nodes;
    double residual = 0.0;
    int iterations = 0;
};

/// Graded mesh h_j = sin^2(pi j / (2n)), j = 0..n, with exact endpoints.
/// The grading absorbs the inverse-square-root singularities of 1/sqrt(psi)
/// at h = 0 and h = 1.  Throws MeshTooSmall for n < 2.
std::vector<double> build_mesh(int n);

/// S(lambda) = sum over cells of (h_{j+1} - h_j) / (mean of sqrt(psi) at the
/// cell ends); strictly decreasing in lambda.  Throws InfeasibleLambda if any
/// node sees psi < 0.
double discrete_sum(const SigmaModel& model, double lambda,
                    std::span<const double> mesh);

/// Solves S(lambda) = 1 by safeguarded Newton (analytic S', bisection
/// fallback inside the bracket).  Stopping criterion |S(lambda) - 1| <= tol.
DiscreteSolution solve_lambda_discrete(const SigmaModel& model, int n,
                                       double tol = 1e-12);

struct ConvergencePoint {
    int n;
    double error;
    std::optional<double> order;  // absent for the first entry or repeated n
};

/// |lambda_n - lambda_ref| for each mesh plus the observed order between
/// consecutive entries (log of the error ratio over log of the mesh ratio).
std::vector<ConvergencePoint> convergence_study(const SigmaModel& model,
                                                std::span<const int> n_list,
                                                double lambda_ref);

} // namespace critsolve
