#include "critsolve/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "critsolve/elliptic.hpp"
#include "critsolve/errors.hpp"
#include "critsolve/quadrature.hpp"

namespace critsolve {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

double safe_asin_inv_sqrt(double twice_r) {
    // arcsin(1/sqrt(2 r)); the argument can overshoot 1 by rounding when the
    // root sits exactly on the junction.
    double x = 1.0 / std::sqrt(twice_r);
    if (x > 1.0) {
        if (x > 1.0 + 1e-9) {
            throw InfeasibleLambda("junction lies beyond the root");
        }
        x = 1.0;
    }
    return std::asin(x);
}

double require_positive(double value, const char* what) {
    if (!(value > 0.0)) throw DegenerateMap(what);
    return value;
}

// Parameters that live in (0,1) drift onto 1 under rounding when a root pair
// collides with an interval endpoint (the integral blows up there); signal
// the collision so callers fall back to quadrature.
double guard_parameter(double m) {
    if (m >= 1.0 - 1e-14) {
        throw NearDegenerate("elliptic parameter at the collision limit");
    }
    return m;
}

double guard_complement(double mc) {
    if (!(mc > 1e-14)) {
        throw NearDegenerate("elliptic parameter at the collision limit");
    }
    return mc;
}

// Half-period reflection for amplitudes in (pi/2, pi): the conjugate-pair
// half-cubic reduction produces such amplitudes when the root modulus drops
// below 1/2.
double ellik_extended_complement(double phi, double mc) {
    if (phi <= kHalfPi) return ellik_incomplete_complement(phi, mc);
    return 2.0 * ellik_complete_complement(mc) -
           ellik_incomplete_complement(kPi - phi, mc);
}

// Closed form for the affine representation (and anything that degenerates
// into it): I = 2 K(m) / sqrt(xi (1 + |alpha|/3) - 1).
double integral_affine(double xi, double alpha) {
    const double a = std::abs(alpha);
    const double den = xi * (1.0 + a / 3.0) - 1.0;
    const double den_min = xi * (1.0 - a / 3.0) - 1.0;
    if (!(den_min > 0.0)) throw InfeasibleLambda("psi not positive on (0,1)");
    if (a < 1e-13) return kPi / std::sqrt(xi - 1.0);
    const double mc = guard_complement(den_min / den);
    return 2.0 / std::sqrt(den) * ellik_complete_complement(mc);
}

// One half-cubic contribution, integral over (0, 1/2) of 1/sqrt(psi half).
double integral_half(const HalfCubicFactors& f) {
    using Kind = HalfCubicFactors::Kind;
    switch (f.kind) {
        case Kind::Linear: {
            const double xi = f.xi, b0 = f.b0;
            if (std::abs(xi - 1.0) < 1e-13) {
                return std::sqrt(2.0 / b0);
            }
            if (xi > 1.0) {
                const double phi0 = std::sqrt((2.0 * b0 - (xi - 1.0)) / (xi - 1.0));
                return 2.0 / std::sqrt(xi - 1.0) * std::atan(1.0 / phi0);
            }
            const double c = std::sqrt((1.0 - xi) / b0);
            const double s = std::sqrt(c * c + 2.0);
            // log((s+c)/(s-c)) = 2 log((s+c)/sqrt(2)) since (s+c)(s-c) = 2;
            // the direct quotient cancels for large c
            return 2.0 / (c * std::sqrt(b0)) *
                   std::log((s + c) / std::numbers::sqrt2);
        }
        case Kind::RealStraddle: {
            const double m = f.r_plus / f.r_minus;  // < 0
            const double phi0 = safe_asin_inv_sqrt(2.0 * f.r_plus);
            return 2.0 / std::sqrt(f.a0 * (-f.r_minus)) * ellik_incomplete(phi0, m);
        }
        case Kind::ComplexPair: {
            const double zeta2 = std::sqrt(f.q_const);
            const double zeta = std::sqrt(zeta2);
            // 2 zeta^2 -+ q1: rewrite the cancelling one through the
            // discriminant, 4 q0 - q1^2 = (2 zeta^2 - q1)(2 zeta^2 + q1)
            const double disc = f.q_linear * f.q_linear - 4.0 * f.q_const;
            double s_plus = 2.0 * zeta2 + f.q_linear;
            double s_minus = 2.0 * zeta2 - f.q_linear;
            if (f.q_linear >= 0.0) s_minus = -disc / s_plus;
            else s_plus = -disc / s_minus;
            const double mc = guard_complement(s_plus / (4.0 * zeta2));
            const double phi0 = 2.0 * std::atan(1.0 / (zeta * std::numbers::sqrt2));
            return 1.0 / (zeta * std::sqrt(f.a0)) *
                   ellik_extended_complement(phi0, mc);
        }
        case Kind::RealPositivePair: {
            const double mc =
                guard_complement((f.r_plus - f.r_minus) / f.r_plus);
            const double phi0 = safe_asin_inv_sqrt(2.0 * f.r_minus);
            return 2.0 / std::sqrt(f.a0 * f.r_plus) *
                   ellik_incomplete_complement(phi0, mc);
        }
        case Kind::RealNegativePair: {
            // both roots below 0; integrate above the largest root of the cubic
            const double mc = guard_complement(f.r_plus / f.r_minus);
            const double phi0 =
                std::asin(std::sqrt(0.5 / (0.5 - f.r_plus)));
            return 2.0 / std::sqrt(f.a0 * (-f.r_minus)) *
                   ellik_incomplete_complement(phi0, mc);
        }
    }
    throw Error("unreachable");
}

struct PsiClamp {
    // Tolerates rounding noise right at the zeros of psi; anything more
    // negative is a genuine feasibility violation.
    double scale;
    double operator()(double psi) const {
        if (psi < -1e-12 * scale) {
            throw InfeasibleLambda("psi < 0 at a quadrature node");
        }
        return std::max(psi, 1e-300);
    }
};

// Transformed integrand for integrals of 1/sqrt(psi): h = sin^2(pi t / 2)
// removes the simple endpoint zeros.  h and 1-h come from sin^2 and cos^2 so
// each keeps full precision at its own endpoint.
class TransformedInverseSqrtPsi {
  public:
    TransformedInverseSqrtPsi(const SigmaModel& model, double lambda)
        : model_(model), lambda_(lambda), clamp_{1.0 + lambda * model.mu} {}

    double operator()(double t) const {
        const double s = std::sin(kHalfPi * t);
        const double c = std::cos(kHalfPi * t);
        const double psi =
            clamp_(psi_eval_parts(model_, lambda_, s * s, c * c));
        return kPi * s * c / std::sqrt(psi);
    }

  private:
    const SigmaModel& model_;
    double lambda_;
    PsiClamp clamp_;
};

} // namespace

HomographicMap build_homographic_map(const PsiFactorization& fact) {
    HomographicMap map;
    const double sigma = fact.sum_sigma;
    const double disc = fact.discriminant;
    switch (fact.case_tag) {
        case PsiCase::QuarticOppositeSigns: {
            const double p = fact.p, g = fact.g;
            require_positive(g - p, "root gap vanishes");
            require_positive(std::abs(1.0 - p) - 1e-12, "root collides with 1");
            require_positive(std::abs(g) - 1e-12, "root collides with 0");
            map.A = -std::sqrt(g * (g - p) / (1.0 - p));
            map.B = std::sqrt((1.0 - p) * (g - p) / g);
            map.a = (map.A + 1.0) / (map.A - 1.0);
            map.b = (map.B + 1.0) / (map.B - 1.0);
            map.c = -(map.a + 1.0) / (map.b - map.a);
            map.d = -map.c * map.b;
            map.m = 1.0 - map.a * map.a / (map.b * map.b);
            return map;
        }
        case PsiCase::QuarticComplexPairSigmaEq1:
            throw DegenerateMap("1 - sigma vanishes; use the symmetric closed form");
        case PsiCase::QuarticComplexPairSigmaLt1:
        case PsiCase::QuarticComplexPairSigmaGt1: {
            require_positive(std::abs(1.0 - sigma) - 1e-12, "1 - sigma vanishes");
            const double mod2 = 0.25 * (sigma * sigma - disc);  // |root|^2
            const double dt = mod2 * (0.25 * (sigma - 2.0) * (sigma - 2.0) -
                                      0.25 * disc);
            const double sq = std::sqrt(dt);
            if (fact.case_tag == PsiCase::QuarticComplexPairSigmaLt1) {
                map.c = -(sq + mod2) / (1.0 - sigma);
            } else {
                map.c = (sq + mod2) / (sigma - 1.0);
            }
            map.a = 1.0 / (1.0 - 2.0 * map.c);
            map.b = std::sqrt(-disc) / (2.0 * map.c - sigma);
            map.d = -map.a * map.c;
            map.m = -map.a * map.a / (map.b * map.b);
            return map;
        }
        case PsiCase::QuarticSameSignGt2: {
            const double p = fact.p, g = fact.g;
            require_positive(g - p, "root gap vanishes");
            require_positive(std::abs(g + p - 1.0) - 1e-12, "sigma - 1 vanishes");
            const double dp = 4.0 * p * g * (p - 1.0) * (g - 1.0);
            map.b = (p * (p - 1.0) + g * (g - 1.0) + std::sqrt(dp)) /
                    ((g - p) * (g + p - 1.0));
            map.a = map.b * (p - g) + p + g - 1.0;
            map.c = (map.a + 1.0) / (2.0 * map.a);
            map.d = map.a * map.c;
            map.m = map.a * map.a / (map.b * map.b);
            return map;
        }
        case PsiCase::QuarticSameSignLt0: {
            const double p = fact.p, g = fact.g;
            require_positive(g - p, "root gap vanishes");
            require_positive(std::abs(1.0 - g - p) - 1e-12, "1 - sigma vanishes");
            const double dp = 4.0 * p * g * (p - 1.0) * (g - 1.0);
            map.b = (p * (p - 1.0) + g * (g - 1.0) + std::sqrt(dp)) /
                    ((g - p) * (1.0 - g - p));
            map.a = map.b * (p - g) + 1.0 - p - g;
            map.c = -(1.0 - map.a) / (2.0 * map.a);
            map.d = -map.a * map.c;
            map.m = map.a * map.a / (map.b * map.b);
            return map;
        }
        default:
            throw DegenerateMap("factorization is not a quartic with a map");
    }
}

double integral_I(const SigmaModel& model, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
    const double xi = lambda * model.mu;
    switch (model.kind) {
        case SigmaKind::Constant:
            if (!(xi > 1.0)) throw InfeasibleLambda("psi not positive on (0,1)");
            return kPi / std::sqrt(xi - 1.0);
        case SigmaKind::Affine:
        case SigmaKind::SemiAnalyticQuadratic:
        case SigmaKind::SemiAnalyticPiecewise:
            return integral_affine(xi, model.alpha);
        case SigmaKind::Quadratic: {
            const PsiFactorization fact = classify_psi(model, lambda);
            switch (fact.case_tag) {
                case PsiCase::QuadraticConstant:
                case PsiCase::CubicAffine:
                    return integral_affine(xi, model.alpha);
                case PsiCase::QuarticOppositeSigns: {
                    const HomographicMap map = build_homographic_map(fact);
                    const double ratio = map.a / map.b;
                    const double mc = guard_complement(ratio * ratio);
                    return (1.0 / std::sqrt(fact.leading)) * (1.0 - ratio) /
                           std::sqrt(fact.g - fact.p) *
                           ellik_complete_complement(mc);
                }
                case PsiCase::QuarticComplexPairSigmaEq1:
                    return 4.0 /
                           (std::sqrt(std::abs(fact.leading)) *
                            std::sqrt(-fact.discriminant)) *
                           ellik_complete(1.0 / fact.discriminant);
                case PsiCase::QuarticComplexPairSigmaLt1:
                case PsiCase::QuarticComplexPairSigmaGt1: {
                    const HomographicMap map = build_homographic_map(fact);
                    return 2.0 *
                           std::sqrt((1.0 - map.a * map.a) *
                                     (map.b * map.b + 1.0)) /
                           (std::sqrt(std::abs(fact.leading)) * std::abs(map.b) *
                            std::abs(map.d - map.c)) *
                           ellik_complete(map.m);
                }
                case PsiCase::QuarticSameSignGt2:
                case PsiCase::QuarticSameSignLt0: {
                    const HomographicMap map = build_homographic_map(fact);
                    return 2.0 *
                           std::sqrt((1.0 - map.a * map.a) *
                                     (map.b * map.b - 1.0)) /
                           (std::sqrt(std::abs(fact.leading)) * std::abs(map.b) *
                            std::abs(map.d - map.c)) *
                           ellik_complete(guard_parameter(map.m));
                }
                default:
                    throw Error("unreachable quartic tag");
            }
        }
        case SigmaKind::PiecewiseAffine: {
            const PsiFactorization fact = classify_psi(model, lambda);
            return integral_half(*fact.left) + integral_half(*fact.right);
        }
    }
    throw Error("unreachable");
}

double integral_I_quadrature(const SigmaModel& model, double lambda,
                             double rel_tol) {
    if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
    const TransformedInverseSqrtPsi integrand(model, lambda);
    // split at the junction image t = 1/2 (kink for the piecewise kind)
    return integrate_adaptive(integrand, 0.0, 0.5, rel_tol) +
           integrate_adaptive(integrand, 0.5, 1.0, rel_tol);
}

SolveResult solve_lambda(const SigmaModel& model, double tol,
                         int profile_points) {
    if (!(tol > 0.0)) throw DomainError("tol must be > 0");
    SolveResult result;
    const auto eval = [&](double lam) -> double {
        try {
            return integral_I(model, lam);
        } catch (const NearDegenerate&) {
        } catch (const DegenerateMap&) {
        }
        result.used_quadrature_fallback = true;
        return integral_I_quadrature(model, lam, std::min(1e-10, tol * 0.1));
    };

    const double llow = lambda_lower_bound(model);
    double left = llow * (1.0 + 1e-6);
    double f_left = eval(left) - 1.0;
    if (f_left <= 0.0) {
        left = llow * (1.0 + 1e-9);
        f_left = eval(left) - 1.0;
        if (f_left <= 0.0) {
            throw BracketFailure("I(lambda) <= 1 already at the feasibility bound");
        }
    }
    double right = llow * 1.5;
    double f_right = eval(right) - 1.0;
    int expansions = 0;
    while (f_right > 0.0) {
        if (++expansions > 200) {
            throw BracketFailure("I(lambda) stays above 1 under expansion");
        }
        right = llow + 2.0 * (right - llow);
        f_right = eval(right) - 1.0;
    }

    // Brent's method on the monotone residual I(lambda) - 1
    double a = left, b = right, fa = f_left, fb = f_right;
    double c = a, fc = fa, d_step = b - a, e_step = d_step;
    int iter = 0;
    constexpr int kMaxIter = 200;
    for (; iter < kMaxIter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5e-15;
        const double xm = 0.5 * (c - b);
        if (std::abs(fb) <= tol || std::abs(xm) <= tol1 || fb == 0.0) break;
        if (std::abs(e_step) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                                   std::abs(e_step * q))) {
                e_step = d_step;
                d_step = p / q;
            } else {
                d_step = xm;
                e_step = d_step;
            }
        } else {
            d_step = xm;
            e_step = d_step;
        }
        a = b;
        fa = fb;
        b += (std::abs(d_step) > tol1) ? d_step
                                       : std::copysign(tol1, xm);
        fb = eval(b) - 1.0;
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            e_step = d_step = b - a;
        }
    }
    if (iter >= kMaxIter) {
        throw NoConvergence("root finder exceeded its iteration budget");
    }

    result.lambda = b;
    result.keff = 1.0 / b;
    result.iterations = iter;
    result.residual = std::abs(fb);
    try {
        result.case_tag = classify_psi(model, b).case_tag;
    } catch (const NearDegenerate&) {
        result.case_tag = PsiCase::QuadratureFallback;
        result.used_quadrature_fallback = true;
    }
    if (profile_points >= 3) {
        result.profile = reconstruct_profiles(model, b, profile_points);
    }
    return result;
}

std::vector<ProfilePoint> reconstruct_profiles(const SigmaModel& model,
                                               double lambda, int n_points) {
    if (n_points < 3) throw DomainError("profile needs at least 3 points");
    const TransformedInverseSqrtPsi integrand(model, lambda);
    std::vector<ProfilePoint> profile(n_points);
    const int segments = n_points - 1;
    double z = 0.0;
    profile[0] = {0.0, 0.0, 0.0};
    for (int k = 1; k <= segments; ++k) {
        const double t0 = static_cast<double>(k - 1) / segments;
        const double t1 = static_cast<double>(k) / segments;
        if (t0 < 0.5 && t1 > 0.5) {
            z += integrate_adaptive(integrand, t0, 0.5, 1e-11, 1e-14);
            z += integrate_adaptive(integrand, 0.5, t1, 1e-11, 1e-14);
        } else {
            z += integrate_adaptive(integrand, t0, t1, 1e-11, 1e-14);
        }
        const double s = std::sin(kHalfPi * t1);
        const double h = (k == segments) ? 1.0 : s * s;
        const double psi = std::max(psi_eval(model, lambda, h), 0.0);
        profile[k] = {z, h, std::sqrt(psi)};
    }
    return profile;
}

} // namespace critsolve
