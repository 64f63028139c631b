#include "critsolve/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "critsolve/errors.hpp"

namespace critsolve {

double carlson_rf(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z < 0.0 || (x + y == 0.0) || (y + z == 0.0) ||
        (z + x == 0.0)) {
        throw ParameterOutOfRange(
            "carlson_rf: arguments must be non-negative with at most one zero");
    }
    // Duplication theorem: halving the deviation from the mean each round,
    // then a fifth-order Taylor expansion at the common limit.
    constexpr double kTol = 0.0024;  // error ~ tol^6 after the expansion
    double u = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        u = (x + y + z) / 3.0;
        dx = (u - x) / u;
        dy = (u - y) / u;
        dz = (u - z) / u;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kTol) break;
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lam = sy * (sx + sz) + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
    }
    const double e2 = dx * dy - dz * dz;
    const double e3 = dx * dy * dz;
    return (1.0 + e2 * (e2 / 24.0 - e3 * 3.0 / 44.0 - 0.1) + e3 / 14.0) /
           std::sqrt(u);
}

double ellik_incomplete(double phi, double m) {
    constexpr double kHalfPi = 1.5707963267948966;
    if (!(m < 1.0)) throw ParameterOutOfRange("ellik: parameter m must be < 1");
    if (!(phi >= 0.0) || phi > kHalfPi * (1.0 + 1e-12)) {
        throw ParameterOutOfRange("ellik: amplitude must lie in [0, pi/2]");
    }
    phi = std::min(phi, kHalfPi);
    if (phi == 0.0) return 0.0;
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    return s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
}

double ellik_complete(double m) {
    if (!(m < 1.0)) throw ParameterOutOfRange("ellik: parameter m must be < 1");
    return carlson_rf(0.0, 1.0 - m, 1.0);
}

double ellik_complete_complement(double mc) {
    if (!(mc > 0.0)) {
        throw ParameterOutOfRange("ellik: complementary parameter must be > 0");
    }
    return carlson_rf(0.0, mc, 1.0);
}

double ellik_incomplete_complement(double phi, double mc) {
    constexpr double kHalfPi = 1.5707963267948966;
    if (!(mc > 0.0)) {
        throw ParameterOutOfRange("ellik: complementary parameter must be > 0");
    }
    if (!(phi >= 0.0) || phi > kHalfPi * (1.0 + 1e-12)) {
        throw ParameterOutOfRange("ellik: amplitude must lie in [0, pi/2]");
    }
    phi = std::min(phi, kHalfPi);
    if (phi == 0.0) return 0.0;
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    // 1 - m sin^2 = mc sin^2 + cos^2, free of the subtraction 1 - m
    return s * carlson_rf(c * c, mc * s * s + c * c, 1.0);
}

} // namespace critsolve
