#include "critsolve/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "critsolve/errors.hpp"

namespace critsolve {

namespace {

// Solves the symmetric positive definite tridiagonal system with constant
// off-diagonal `off` and diagonal `diag`, in place (Thomas algorithm).
void solve_tridiagonal(double diag, double off, std::vector<double>& rhs,
                       std::vector<double>& scratch) {
    const std::size_t n = rhs.size();
    scratch.resize(n);
    double pivot = diag;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        scratch[i] = off / pivot;
        pivot = diag - off * scratch[i];
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] -= scratch[i + 1] * rhs[i + 1];
    }
}

} // namespace

GeneralizedEigenResult smallest_generalized_eigen(
    std::span<const double> sigma_field, int grid_m) {
    if (grid_m < 2 || sigma_field.size() != static_cast<std::size_t>(grid_m)) {
        throw DomainError("sigma field size must equal the interior count");
    }
    for (double s : sigma_field) {
        if (!(s > 0.0)) throw DomainError("sigma must be positive everywhere");
    }
    const double dz = 1.0 / (grid_m + 1);
    const double diag = 2.0 / (dz * dz) + 1.0;
    const double off = -1.0 / (dz * dz);

    std::vector<double> sqrt_sigma(sigma_field.size());
    std::transform(sigma_field.begin(), sigma_field.end(), sqrt_sigma.begin(),
                   [](double s) { return std::sqrt(s); });

    // inverse power iteration on B = D^{-1/2} A D^{-1/2}:
    // y = B^{-1} x = D^{1/2} A^{-1} D^{1/2} x
    std::vector<double> x(sigma_field.size(),
                          1.0 / std::sqrt(static_cast<double>(grid_m)));
    std::vector<double> y, scratch;
    double lambda = 0.0, lambda_prev = -1.0;
    int iter = 0;
    constexpr int kMaxIter = 100000;
    for (; iter < kMaxIter; ++iter) {
        y.assign(x.begin(), x.end());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] *= sqrt_sigma[i];
        solve_tridiagonal(diag, off, y, scratch);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] *= sqrt_sigma[i];
        const double rayleigh =
            std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
        const double norm = std::sqrt(
            std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
        if (!(norm > 0.0) || !(rayleigh > 0.0)) {
            throw IterationStall("power iteration lost positivity");
        }
        for (double& v : y) v /= norm;
        x.swap(y);
        lambda = 1.0 / rayleigh;
        if (iter > 1 &&
            std::abs(lambda - lambda_prev) <= 1e-12 * std::abs(lambda)) {
            break;
        }
        lambda_prev = lambda;
    }
    if (iter >= kMaxIter) {
        throw IterationStall("power iteration failed to settle");
    }

    GeneralizedEigenResult result;
    result.lambda = lambda;
    result.iterations = iter + 1;
    result.phi.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        result.phi[i] = x[i] / sqrt_sigma[i];
    }
    if (result.phi.front() < 0.0) {
        for (double& v : result.phi) v = -v;
    }
    // unit trapezoidal integral; the boundary values are zero
    const double integral =
        dz * std::accumulate(result.phi.begin(), result.phi.end(), 0.0);
    for (double& v : result.phi) v /= integral;
    return result;
}

CouplingState coupling_iterate(const SigmaModel& model, int grid_m, double tol,
                               int max_iter) {
    if (grid_m < 10) throw DomainError("coupling grid needs at least 10 points");
    if (!(tol > 0.0)) throw DomainError("tol must be > 0");
    const double dz = 1.0 / (grid_m + 1);

    CouplingState state;
    state.grid_m = grid_m;
    state.z_nodes.resize(static_cast<std::size_t>(grid_m) + 2);
    for (std::size_t i = 0; i < state.z_nodes.size(); ++i) {
        state.z_nodes[i] = static_cast<double>(i) * dz;
    }

    const auto cumtrapz = [&](const std::vector<double>& phi_interior) {
        std::vector<double> h(static_cast<std::size_t>(grid_m) + 2, 0.0);
        double prev_phi = 0.0;
        for (int i = 1; i <= grid_m + 1; ++i) {
            const double phi_i =
                (i <= grid_m) ? phi_interior[static_cast<std::size_t>(i - 1)]
                              : 0.0;
            h[static_cast<std::size_t>(i)] =
                h[static_cast<std::size_t>(i - 1)] +
                0.5 * dz * (prev_phi + phi_i);
            prev_phi = phi_i;
        }
        for (double& v : h) v = std::clamp(v, 0.0, 1.0);
        return h;
    };

    const auto psi_norm = [&](const std::vector<double>& sigma_nodes,
                              const std::vector<double>& phi_interior) {
        double acc = 0.0;
        for (std::size_t i = 0; i < phi_interior.size(); ++i) {
            const double psi = std::sqrt(sigma_nodes[i]) * phi_interior[i];
            acc += psi * psi;
        }
        return std::sqrt(acc * dz);
    };

    // initialization: constant cross section frozen at h = 0
    const double sigma0 = sigma_eval(model, 0.0);
    std::vector<double> sigma_field(static_cast<std::size_t>(grid_m), sigma0);
    GeneralizedEigenResult eig = smallest_generalized_eigen(sigma_field, grid_m);
    state.lambda_seq.push_back(eig.lambda);
    state.psi_norm_seq.push_back(psi_norm(sigma_field, eig.phi));
    std::vector<double> h = cumtrapz(eig.phi);

    for (int n = 1; n <= max_iter; ++n) {
        for (int i = 1; i <= grid_m; ++i) {
            sigma_field[static_cast<std::size_t>(i - 1)] =
                sigma_eval(model, h[static_cast<std::size_t>(i)]);
        }
        eig = smallest_generalized_eigen(sigma_field, grid_m);
        state.psi_norm_seq.push_back(psi_norm(sigma_field, eig.phi));
        std::vector<double> h_new = cumtrapz(eig.phi);
        double delta = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            delta = std::max(delta, std::abs(h_new[i] - h[i]));
        }
        state.lambda_seq.push_back(eig.lambda);
        state.h_delta_seq.push_back(delta);
        h = std::move(h_new);
        if (delta <= tol) {
            state.converged = true;
            break;
        }
    }

    state.h_field = std::move(h);
    state.phi_field.resize(static_cast<std::size_t>(grid_m) + 2, 0.0);
    std::copy(eig.phi.begin(), eig.phi.end(), state.phi_field.begin() + 1);
    return state;
}

} // namespace critsolve
