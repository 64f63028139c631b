#pragma once

// Test-only reference computations, kept independent of the closed-form
// evaluation paths they are used to check.

#include <array>
#include <cmath>

#include "critsolve/model.hpp"
#include "critsolve/quadrature.hpp"

namespace oracles {

// V by its Green-function representation
//   V(h) = -[(1-h) * int_0^h s sigma(s) ds + h * int_h^1 (1-s) sigma(s) ds],
// with the integrals done by adaptive quadrature (split at the piecewise
// junction).  Independent of the closed forms in v_eval.
inline double v_reference(const critsolve::SigmaModel& model, double h) {
    const auto left = [&](double s) {
        return s * critsolve::sigma_eval(model, s);
    };
    const auto right = [&](double s) {
        return (1.0 - s) * critsolve::sigma_eval(model, s);
    };
    auto split_integral = [&](auto&& f, double a, double b) {
        if (a < 0.5 && b > 0.5) {
            return critsolve::integrate_adaptive(f, a, 0.5, 1e-13, 1e-15) +
                   critsolve::integrate_adaptive(f, 0.5, b, 1e-13, 1e-15);
        }
        return critsolve::integrate_adaptive(f, a, b, 1e-13, 1e-15);
    };
    const double il = split_integral(left, 0.0, h);
    const double ir = split_integral(right, h, 1.0);
    return -((1.0 - h) * il + h * ir);
}

// Defining integral of the first-kind elliptic integral.
inline double ellik_reference(double phi, double m, double rel_tol = 1e-14) {
    return critsolve::integrate_adaptive(
        [m](double theta) {
            const double s = std::sin(theta);
            return 1.0 / std::sqrt(1.0 - m * s * s);
        },
        0.0, phi, rel_tol, 1e-16);
}

// Ritz projection of V onto span{h(h-1), h^2(h-1)}: solve the 2x2 stiffness
// system K c = rhs with rhs_i = -int sigma w_i, then read the affine
// sigma~ = (projected V)'' off at the endpoints.  This is the independent
// route to the projected-endpoint formulas used by the semi-analytic kinds.
inline std::array<double, 2> projected_endpoints(
    const critsolve::SigmaModel& model) {
    // stiffness of w1 = h(h-1), w2 = h^2(h-1): exact rational entries
    const double k11 = 1.0 / 3.0, k12 = 1.0 / 6.0, k22 = 2.0 / 15.0;
    auto load = [&](auto&& w) {
        auto f = [&](double h) {
            return critsolve::sigma_eval(model, h) * w(h);
        };
        return -(critsolve::integrate_adaptive(f, 0.0, 0.5, 1e-13, 1e-15) +
                 critsolve::integrate_adaptive(f, 0.5, 1.0, 1e-13, 1e-15));
    };
    const double b1 = load([](double h) { return h * (h - 1.0); });
    const double b2 = load([](double h) { return h * h * (h - 1.0); });
    const double det = k11 * k22 - k12 * k12;
    const double c1 = (k22 * b1 - k12 * b2) / det;
    const double c2 = (k11 * b2 - k12 * b1) / det;
    // (c1 w1 + c2 w2)'' = 2 c1 + c2 (6h - 2)
    return {2.0 * c1 - 2.0 * c2, 2.0 * c1 + 4.0 * c2};
}

} // namespace oracles
