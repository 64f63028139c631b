#include "critsolve/cn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "critsolve/errors.hpp"

namespace critsolve {

namespace {

constexpr double kPi = std::numbers::pi;

struct SumAndSlope {
    double sum;
    double slope;  // dS/dlambda
};

// S(lambda) and its lambda-derivative in one sweep.  d sqrt(psi)/d lambda =
// -V(h)/sqrt(psi); the endpoint contributions are 0/0 forms whose limit is 0.
SumAndSlope discrete_sum_with_slope(const SigmaModel& model, double lambda,
                                    std::span<const double> mesh) {
    const std::size_t n = mesh.size() - 1;
    double sum = 0.0, slope = 0.0;
    double phi_prev = 0.0, dphi_prev = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        const double h = mesh[j];
        const double psi = psi_eval(model, lambda, h);
        if (psi < 0.0) {
            throw InfeasibleLambda("psi < 0 at a mesh node");
        }
        const double phi = std::sqrt(psi);
        const double dphi =
            (j == 0 || j == n) ? 0.0 : -v_eval(model, h) / phi;
        if (j > 0) {
            const double dh = mesh[j] - mesh[j - 1];
            const double den = 0.5 * (phi_prev + phi);
            sum += dh / den;
            slope -= dh / (den * den) * 0.5 * (dphi_prev + dphi);
        }
        phi_prev = phi;
        dphi_prev = dphi;
    }
    return {sum, slope};
}

} // namespace

std::vector<double> build_mesh(int n) {
    if (n < 2) throw MeshTooSmall("mesh needs at least 2 cells");
    std::vector<double> mesh(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const double s = std::sin(kPi * j / (2.0 * n));
        mesh[static_cast<std::size_t>(j)] = s * s;
    }
    mesh.front() = 0.0;
    mesh.back() = 1.0;
    return mesh;
}

double discrete_sum(const SigmaModel& model, double lambda,
                    std::span<const double> mesh) {
    if (mesh.size() < 3) throw MeshTooSmall("mesh needs at least 2 cells");
    return discrete_sum_with_slope(model, lambda, mesh).sum;
}

DiscreteSolution solve_lambda_discrete(const SigmaModel& model, int n,
                                       double tol) {
    if (!(tol > 0.0)) throw DomainError("tol must be > 0");
    const std::vector<double> mesh = build_mesh(n);
    const double llow = lambda_lower_bound(model);

    double lo = llow * (1.0 + 1e-6);
    bool lo_ok = false;
    try {
        lo_ok = discrete_sum(model, lo, mesh) > 1.0;
    } catch (const InfeasibleLambda&) {
    }
    if (!lo_ok) {
        lo = llow * (1.0 + 1e-9);
        if (!(discrete_sum(model, lo, mesh) > 1.0)) {
            throw InfeasibleBracket("S(lambda) <= 1 at the feasibility bound");
        }
    }
    double hi = std::max(
        llow * 1.5,
        (1.0 + kPi * kPi) / (0.25 * (model.samples.sigma0 +
                                     2.0 * model.samples.sigma_half +
                                     model.samples.sigma1)));
    int expansions = 0;
    while (discrete_sum(model, hi, mesh) > 1.0) {
        if (++expansions > 200) {
            throw InfeasibleBracket("S(lambda) stays above 1 under expansion");
        }
        hi = llow + 2.0 * (hi - llow);
    }

    double lambda = std::clamp(
        (1.0 + kPi * kPi) / (0.25 * (model.samples.sigma0 +
                                     2.0 * model.samples.sigma_half +
                                     model.samples.sigma1)),
        lo, hi);
    DiscreteSolution sol;
    sol.n = n;
    sol.h_nodes = mesh;
    double residual = 0.0;
    int iter = 0;
    constexpr int kMaxIter = 200;
    for (; iter < kMaxIter; ++iter) {
        const auto [sum, slope] = discrete_sum_with_slope(model, lambda, mesh);
        residual = sum - 1.0;
        if (std::abs(residual) <= tol) break;
        if (residual > 0.0) {
            lo = lambda;  // S decreasing: still left of the solution
        } else {
            hi = lambda;
        }
        double next = lambda - residual / slope;
        if (!(next > lo) || !(next < hi) || !std::isfinite(next)) {
            next = 0.5 * (lo + hi);
        }
        if (next == lambda) break;  // interval exhausted at machine precision
        lambda = next;
    }
    if (iter >= kMaxIter && std::abs(residual) > tol) {
        throw NoConvergence("Newton iteration exceeded its budget");
    }

    sol.lambda_n = lambda;
    sol.residual = std::abs(residual);
    sol.iterations = iter;
    const std::size_t m = mesh.size();
    sol.phi_nodes.resize(m);
    sol.z_nodes.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        sol.phi_nodes[j] =
            std::sqrt(std::max(psi_eval(model, lambda, mesh[j]), 0.0));
    }
    sol.z_nodes[0] = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
        const double dh = mesh[j] - mesh[j - 1];
        sol.z_nodes[j] = sol.z_nodes[j - 1] +
                         dh / (0.5 * (sol.phi_nodes[j - 1] + sol.phi_nodes[j]));
    }
    return sol;
}

std::vector<ConvergencePoint> convergence_study(const SigmaModel& model,
                                                std::span<const int> n_list,
                                                double lambda_ref) {
    std::vector<ConvergencePoint> points;
    points.reserve(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const int n = n_list[i];
        const double err =
            std::abs(solve_lambda_discrete(model, n).lambda_n - lambda_ref);
        std::optional<double> order;
        if (i > 0 && n != n_list[i - 1] && points[i - 1].error > 0.0 &&
            err > 0.0) {
            order = std::log(points[i - 1].error / err) /
                    std::log(static_cast<double>(n) / n_list[i - 1]);
        }
        points.push_back({n, err, order});
    }
    return points;
}

} // namespace critsolve
