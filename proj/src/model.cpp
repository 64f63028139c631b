#include "critsolve/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "critsolve/errors.hpp"

namespace critsolve {

namespace {

// Quadratic interpolant coefficients sigma(h) = c0 + c1 h + c2 h^2.
struct QuadCoeffs {
    double c0, c1, c2;
};

QuadCoeffs quad_coeffs(const SigmaSamples& s) {
    return {s.sigma0, -3.0 * s.sigma0 + 4.0 * s.sigma_half - s.sigma1,
            2.0 * (s.sigma0 - 2.0 * s.sigma_half + s.sigma1)};
}

void check_domain(double h) {
    if (!(h >= 0.0 && h <= 1.0)) {
        throw DomainError("h outside [0, 1]");
    }
}

// Roots of a x^2 + b x + c = 0 with positive discriminant, computed without
// the subtractive cancellation of the textbook formula.  Returns (lo, hi).
std::array<double, 2> stable_quadratic_roots(double a, double b, double c,
                                             double disc) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    double r1, r2;
    if (q != 0.0) {
        r1 = q / a;
        r2 = c / q;
    } else {
        r1 = 0.0;
        r2 = 0.0;
    }
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

// Half-cubic coefficients psi^0(h) = h (cub h^2 + lin h + slope0) for the
// left piece; the right piece reuses them with (alpha, beta) -> (-beta, -alpha).
struct HalfCoeffs {
    double cub;     // -2 alpha xi / 3
    double lin;     // alpha xi - xi + 1
    double slope0;  // (beta - 5 alpha) xi / 12 + xi - 1
};

HalfCoeffs half_coeffs(double alpha, double beta, double xi) {
    return {-2.0 / 3.0 * alpha * xi, alpha * xi - xi + 1.0,
            (beta - 5.0 * alpha) / 12.0 * xi + xi - 1.0};
}

HalfCubicFactors classify_half(double alpha, double beta, double xi) {
    const HalfCoeffs co = half_coeffs(alpha, beta, xi);
    HalfCubicFactors f;
    f.xi = xi;
    if (std::abs(alpha) < 1e-13) {
        f.kind = HalfCubicFactors::Kind::Linear;
        f.b0 = co.slope0;
        const double mid = 0.25 * (1.0 - xi) + 0.5 * f.b0;  // psi^0(1/2)
        if (!(f.b0 > 0.0) || !(mid > 0.0)) {
            throw InfeasibleLambda("half-cubic not positive up to the junction");
        }
        return f;
    }
    f.a0 = 2.0 / 3.0 * std::abs(alpha) * xi;
    if (!(co.slope0 > 0.0)) {
        throw InfeasibleLambda("psi slope at the boundary is not positive");
    }
    if (alpha > 0.0) {
        // q(h) = -a0 h^2 + lin h + slope0, one root on each side of 0
        const double disc = co.lin * co.lin + 4.0 * f.a0 * co.slope0;
        const auto r = stable_quadratic_roots(f.a0, -co.lin, -co.slope0, disc);
        f.kind = HalfCubicFactors::Kind::RealStraddle;
        f.r_minus = r[0];
        f.r_plus = r[1];
        if (!(f.r_plus >= 0.5 * (1.0 - 1e-12))) {
            throw InfeasibleLambda("positive root falls below the junction");
        }
        return f;
    }
    // alpha < 0: q(h) = a0 h^2 + lin h + slope0 with a0 > 0
    const double disc = co.lin * co.lin - 4.0 * f.a0 * co.slope0;
    const double disc_scale = co.lin * co.lin + 4.0 * f.a0 * std::abs(co.slope0);
    if (std::abs(disc) < 1e-9 * (1.0 + disc_scale)) {
        throw NearDegenerate("half-cubic root pair nearly coincident");
    }
    if (disc < 0.0) {
        f.kind = HalfCubicFactors::Kind::ComplexPair;
        f.q_linear = co.lin / f.a0;
        f.q_const = co.slope0 / f.a0;
        return f;
    }
    const auto r = stable_quadratic_roots(f.a0, co.lin, co.slope0, disc);
    f.r_minus = r[0];
    f.r_plus = r[1];
    if (f.r_plus < 0.0) {
        f.kind = HalfCubicFactors::Kind::RealNegativePair;
        return f;
    }
    if (f.r_minus >= 0.5 * (1.0 - 1e-12)) {
        f.kind = HalfCubicFactors::Kind::RealPositivePair;
        return f;
    }
    throw InfeasibleLambda("real root pair intersects the half interval");
}

double half_eval(const HalfCubicFactors& f, double u) {
    switch (f.kind) {
        case HalfCubicFactors::Kind::Linear:
            return (1.0 - f.xi) * u * u + f.b0 * u;
        case HalfCubicFactors::Kind::RealStraddle:
            return f.a0 * u * (u - f.r_minus) * (f.r_plus - u);
        case HalfCubicFactors::Kind::ComplexPair:
            return f.a0 * u * (u * u + f.q_linear * u + f.q_const);
        case HalfCubicFactors::Kind::RealPositivePair:
            return f.a0 * u * (f.r_minus - u) * (f.r_plus - u);
        case HalfCubicFactors::Kind::RealNegativePair:
            return f.a0 * u * (u - f.r_minus) * (u - f.r_plus);
    }
    return 0.0;
}

// h(h-1) / (2 V(h)) extended by its endpoint limits.
double feasibility_ratio(const SigmaModel& model, double h) {
    if (h <= 0.0) return -1.0 / (2.0 * v_prime(model, 0.0));
    if (h >= 1.0) return 1.0 / (2.0 * v_prime(model, 1.0));
    return h * (h - 1.0) / (2.0 * v_eval(model, h));
}

template <class F>
double golden_maximize(F&& f, double a, double b, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

} // namespace

SigmaSamples make_samples(double s0, double s_half, double s1) {
    if (!(s0 > 0.0) || !(s_half > 0.0) || !(s1 > 0.0) ||
        !std::isfinite(s0) || !std::isfinite(s_half) || !std::isfinite(s1)) {
        throw NonPositiveSample("cross-section samples must be finite and > 0");
    }
    return {s0, s_half, s1};
}

const char* to_string(SigmaKind kind) {
    switch (kind) {
        case SigmaKind::Constant: return "constant";
        case SigmaKind::Affine: return "affine";
        case SigmaKind::Quadratic: return "quadratic";
        case SigmaKind::PiecewiseAffine: return "piecewise";
        case SigmaKind::SemiAnalyticQuadratic: return "semi_quadratic";
        case SigmaKind::SemiAnalyticPiecewise: return "semi_piecewise";
    }
    return "?";
}

std::optional<SigmaKind> kind_from_string(const std::string& token) {
    static const std::pair<const char*, SigmaKind> table[] = {
        {"constant", SigmaKind::Constant},
        {"affine", SigmaKind::Affine},
        {"quadratic", SigmaKind::Quadratic},
        {"piecewise", SigmaKind::PiecewiseAffine},
        {"semi_quadratic", SigmaKind::SemiAnalyticQuadratic},
        {"semi_piecewise", SigmaKind::SemiAnalyticPiecewise},
    };
    for (const auto& [name, kind] : table) {
        if (token == name) return kind;
    }
    return std::nullopt;
}

const char* to_string(PsiCase c) {
    switch (c) {
        case PsiCase::QuadraticConstant: return "quadratic_constant";
        case PsiCase::CubicAffine: return "cubic_affine";
        case PsiCase::QuarticOppositeSigns: return "quartic_opposite_signs";
        case PsiCase::QuarticComplexPairSigmaEq1: return "quartic_complex_sigma_eq1";
        case PsiCase::QuarticComplexPairSigmaLt1: return "quartic_complex_sigma_lt1";
        case PsiCase::QuarticComplexPairSigmaGt1: return "quartic_complex_sigma_gt1";
        case PsiCase::QuarticSameSignGt2: return "quartic_same_sign_gt2";
        case PsiCase::QuarticSameSignLt0: return "quartic_same_sign_lt0";
        case PsiCase::PiecewiseCubicPair: return "piecewise_cubic_pair";
        case PsiCase::QuadratureFallback: return "quadrature_fallback";
    }
    return "?";
}

const char* to_string(HalfCubicFactors::Kind k) {
    switch (k) {
        case HalfCubicFactors::Kind::Linear: return "linear";
        case HalfCubicFactors::Kind::RealStraddle: return "real_straddle";
        case HalfCubicFactors::Kind::ComplexPair: return "complex_pair";
        case HalfCubicFactors::Kind::RealPositivePair: return "real_positive_pair";
        case HalfCubicFactors::Kind::RealNegativePair: return "real_negative_pair";
    }
    return "?";
}

SigmaModel build_model(const SigmaSamples& samples, SigmaKind kind) {
    const double s0 = samples.sigma0, sh = samples.sigma_half, s1 = samples.sigma1;
    SigmaModel m{kind, samples};
    switch (kind) {
        case SigmaKind::Constant:
            // mean of the piecewise-affine interpolant
            m.mu = 0.25 * (s0 + 2.0 * sh + s1);
            break;
        case SigmaKind::Affine:
            m.mu = 0.5 * (s0 + s1);
            m.alpha = 1.0 - s0 / m.mu;
            break;
        case SigmaKind::Quadratic:
            m.mu = 0.5 * (s0 + s1);
            m.alpha = 1.0 - s0 / m.mu;
            m.delta = -(s0 - 2.0 * sh + s1) / (s0 + s1);
            break;
        case SigmaKind::PiecewiseAffine:
            m.mu = sh;
            m.alpha = 1.0 - s0 / sh;
            m.beta = s1 / sh - 1.0;
            if (!(m.alpha < 1.0) || !(m.beta > -1.0)) {
                throw InvalidShape("piecewise slopes violate positivity");
            }
            break;
        case SigmaKind::SemiAnalyticQuadratic: {
            const double t0 = (3.0 * s0 + 4.0 * sh - 2.0 * s1) / 5.0;
            const double t1 = (-2.0 * s0 + 4.0 * sh + 3.0 * s1) / 5.0;
            if (!(t0 > 0.0) || !(t1 > 0.0)) {
                throw NonPositiveProjection("projected endpoint <= 0");
            }
            m.mu = 0.5 * (t0 + t1);
            m.alpha = 1.0 - t0 / m.mu;
            break;
        }
        case SigmaKind::SemiAnalyticPiecewise: {
            const double t0 = (11.0 * s0 + 10.0 * sh - 5.0 * s1) / 16.0;
            const double t1 = (-5.0 * s0 + 10.0 * sh + 11.0 * s1) / 16.0;
            if (!(t0 > 0.0) || !(t1 > 0.0)) {
                throw NonPositiveProjection("projected endpoint <= 0");
            }
            m.mu = 0.5 * (t0 + t1);
            m.alpha = 1.0 - t0 / m.mu;
            break;
        }
    }
    if (kind != SigmaKind::Constant && kind != SigmaKind::PiecewiseAffine) {
        if (!(std::abs(m.alpha) < 1.0)) {
            throw InvalidShape("asymmetry |alpha| >= 1");
        }
    }
    if (kind == SigmaKind::Quadratic) {
        const double gamma = 1.0 - std::abs(m.alpha) / 3.0 + 2.0 * m.delta / 3.0;
        if (!(m.delta > -1.0) || !(gamma > 0.0)) {
            throw InvalidShape("quadratic curvature out of range");
        }
    }
    return m;
}

double sigma_eval(const SigmaModel& m, double h) {
    check_domain(h);
    switch (m.kind) {
        case SigmaKind::Constant:
            return m.mu;
        case SigmaKind::Affine:
        case SigmaKind::SemiAnalyticQuadratic:
        case SigmaKind::SemiAnalyticPiecewise:
            return m.mu * (1.0 - m.alpha + 2.0 * m.alpha * h);
        case SigmaKind::Quadratic: {
            const auto [c0, c1, c2] = quad_coeffs(m.samples);
            return c0 + h * (c1 + h * c2);
        }
        case SigmaKind::PiecewiseAffine:
            if (h <= 0.5) return m.mu * (1.0 - m.alpha + 2.0 * m.alpha * h);
            return m.mu * (1.0 - m.beta + 2.0 * m.beta * h);
    }
    return 0.0;
}

double v_eval(const SigmaModel& m, double h) {
    check_domain(h);
    switch (m.kind) {
        case SigmaKind::Constant:
            return 0.5 * m.mu * h * (h - 1.0);
        case SigmaKind::Affine:
        case SigmaKind::SemiAnalyticQuadratic:
        case SigmaKind::SemiAnalyticPiecewise:
            return m.mu * h * (h - 1.0) * (0.5 - m.alpha / 6.0 + m.alpha * h / 3.0);
        case SigmaKind::Quadratic:
            // affine part plus the curvature correction, both with exact
            // zeros at the endpoints
            return m.mu * h * (h - 1.0) *
                   (0.5 - m.alpha / 6.0 + m.alpha * h / 3.0 -
                    m.delta / 3.0 * (h * h - h - 1.0));
        case SigmaKind::PiecewiseAffine: {
            const double a = m.alpha, b = m.beta;
            if (h <= 0.5) {
                return m.mu * h *
                       (8.0 * a * h * h - 12.0 * a * h + 5.0 * a - b + 12.0 * h -
                        12.0) /
                       24.0;
            }
            return m.mu * (h - 1.0) *
                   (-a + 8.0 * b * h * h - 4.0 * b * h + b + 12.0 * h) / 24.0;
        }
    }
    return 0.0;
}

double v_prime(const SigmaModel& m, double h) {
    check_domain(h);
    switch (m.kind) {
        case SigmaKind::Constant:
            return m.mu * (h - 0.5);
        case SigmaKind::Affine:
        case SigmaKind::SemiAnalyticQuadratic:
        case SigmaKind::SemiAnalyticPiecewise:
            return m.mu * ((2.0 * h - 1.0) * (0.5 - m.alpha / 6.0 + m.alpha * h / 3.0) +
                           h * (h - 1.0) * m.alpha / 3.0);
        case SigmaKind::Quadratic:
            return m.mu * ((2.0 * h - 1.0) * (0.5 - m.alpha / 6.0 + m.alpha * h / 3.0) +
                           h * (h - 1.0) * m.alpha / 3.0) -
                   m.mu * m.delta / 3.0 *
                       (4.0 * h * h * h - 6.0 * h * h + 1.0);
        case SigmaKind::PiecewiseAffine: {
            const double a = m.alpha, b = m.beta;
            if (h <= 0.5) {
                return m.mu *
                       (24.0 * a * h * h + 24.0 * (1.0 - a) * h +
                        (5.0 * a - b - 12.0)) /
                       24.0;
            }
            return m.mu *
                   ((8.0 * b * h * h - 4.0 * b * h + b - a + 12.0 * h) +
                    (h - 1.0) * (16.0 * b * h - 4.0 * b + 12.0)) /
                   24.0;
        }
    }
    return 0.0;
}

double psi_eval(const SigmaModel& m, double lambda, double h) {
    return psi_eval_parts(m, lambda, h, 1.0 - h);
}

double psi_eval_parts(const SigmaModel& m, double lambda, double h,
                      double one_minus_h) {
    check_domain(h);
    const double xi = lambda * m.mu;
    switch (m.kind) {
        case SigmaKind::Constant:
            return (xi - 1.0) * h * one_minus_h;
        case SigmaKind::Affine:
        case SigmaKind::SemiAnalyticQuadratic:
        case SigmaKind::SemiAnalyticPiecewise:
            return h * one_minus_h *
                   (xi * (1.0 - m.alpha / 3.0) - 1.0 +
                    2.0 / 3.0 * m.alpha * xi * h);
        case SigmaKind::Quadratic:
            return h * one_minus_h *
                   (xi * (1.0 - m.alpha / 3.0) - 1.0 +
                    2.0 / 3.0 * m.alpha * xi * h -
                    2.0 / 3.0 * m.delta * xi * (h * h - h - 1.0));
        case SigmaKind::PiecewiseAffine: {
            if (h <= 0.5) {
                const HalfCoeffs co = half_coeffs(m.alpha, m.beta, xi);
                return h * (co.slope0 + h * (co.lin + h * co.cub));
            }
            const HalfCoeffs co = half_coeffs(-m.beta, -m.alpha, xi);
            const double u = one_minus_h;
            return u * (co.slope0 + u * (co.lin + u * co.cub));
        }
    }
    return 0.0;
}

double lambda_lower_bound(const SigmaModel& m) {
    constexpr int kGridIntervals = 4096;
    double best = std::max(feasibility_ratio(m, 0.0), feasibility_ratio(m, 1.0));
    std::vector<double> vals(kGridIntervals + 1);
    vals[0] = feasibility_ratio(m, 0.0);
    vals[kGridIntervals] = feasibility_ratio(m, 1.0);
    for (int i = 1; i < kGridIntervals; ++i) {
        const double h = static_cast<double>(i) / kGridIntervals;
        vals[i] = feasibility_ratio(m, h);
        best = std::max(best, vals[i]);
    }
    // refine every interior local maximum that competes with the best value
    const auto ratio = [&](double h) { return feasibility_ratio(m, h); };
    for (int i = 1; i < kGridIntervals; ++i) {
        if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] &&
            vals[i] > best - 1e-6 * std::abs(best)) {
            const double a = static_cast<double>(i - 1) / kGridIntervals;
            const double b = static_cast<double>(i + 1) / kGridIntervals;
            best = std::max(best, golden_maximize(ratio, a, b, 1e-13));
        }
    }
    // a maximum can sit in a boundary layer thinner than the grid spacing
    // (strongly degenerate shapes); the edge panels are unimodal, refine both
    best = std::max(best,
                    golden_maximize(ratio, 0.0, 1.0 / kGridIntervals, 1e-13));
    best = std::max(
        best, golden_maximize(ratio, 1.0 - 1.0 / kGridIntervals, 1.0, 1e-13));
    return best;
}

PsiFactorization classify_psi(const SigmaModel& m, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
    const double xi = lambda * m.mu;
    PsiFactorization fact{};

    const auto classify_affine_like = [&](double alpha) {
        const double c = xi * (1.0 - alpha / 3.0) - 1.0;
        const double d = 2.0 / 3.0 * alpha * xi;
        if (!(c > 0.0) || !(c + d > 0.0)) {
            throw InfeasibleLambda("psi not positive on (0,1)");
        }
        if (std::abs(alpha) < 1e-13) {
            fact.case_tag = PsiCase::QuadraticConstant;
            fact.leading = -(xi - 1.0);
            fact.p = 0.0;
            fact.g = 1.0;
        } else {
            fact.case_tag = PsiCase::CubicAffine;
            fact.leading = -d;
            fact.p = -c / d;
        }
    };

    switch (m.kind) {
        case SigmaKind::Constant:
            if (!(xi > 1.0)) throw InfeasibleLambda("psi not positive on (0,1)");
            fact.case_tag = PsiCase::QuadraticConstant;
            fact.leading = -(xi - 1.0);
            fact.p = 0.0;
            fact.g = 1.0;
            return fact;

        case SigmaKind::Affine:
        case SigmaKind::SemiAnalyticQuadratic:
        case SigmaKind::SemiAnalyticPiecewise:
            classify_affine_like(m.alpha);
            return fact;

        case SigmaKind::Quadratic: {
            if (std::abs(m.delta) < 1e-10) {
                // the quartic degenerates to the affine cubic
                classify_affine_like(m.alpha);
                return fact;
            }
            const double a0 = 2.0 / 3.0 * xi * m.delta;
            const double sigma = (m.delta + m.alpha) / m.delta;
            const double pi =
                (1.0 - xi + m.alpha * xi / 3.0 - 2.0 / 3.0 * m.delta * xi) / a0;
            const double disc = sigma * sigma - 4.0 * pi;
            fact.leading = a0;
            fact.sum_sigma = sigma;
            fact.prod_pi = pi;
            fact.discriminant = disc;
            if (m.delta > 0.0) {
                // the extra root pair must straddle [0, 1]
                if (disc <= 1e-9 * (1.0 + sigma * sigma) || !(pi < 0.0) ||
                    !(1.0 - sigma + pi < 0.0)) {
                    throw InfeasibleLambda("psi not positive on (0,1)");
                }
                const double q =
                    0.5 * (sigma + std::copysign(std::sqrt(disc), sigma));
                fact.p = std::min(q, pi / q);
                fact.g = std::max(q, pi / q);
                fact.case_tag = PsiCase::QuarticOppositeSigns;
                return fact;
            }
            if (std::abs(disc) < 1e-9 * (1.0 + sigma * sigma)) {
                throw NearDegenerate("quartic root pair nearly coincident");
            }
            if (disc < 0.0) {
                if (std::abs(sigma - 1.0) < 1e-12 * (1.0 + std::abs(sigma))) {
                    fact.case_tag = PsiCase::QuarticComplexPairSigmaEq1;
                } else if (sigma < 1.0) {
                    fact.case_tag = PsiCase::QuarticComplexPairSigmaLt1;
                } else {
                    fact.case_tag = PsiCase::QuarticComplexPairSigmaGt1;
                }
                return fact;
            }
            const double q =
                0.5 * (sigma + std::copysign(std::sqrt(disc), sigma));
            fact.p = std::min(q, pi / q);
            fact.g = std::max(q, pi / q);
            if (fact.g < 0.0) {
                fact.case_tag = PsiCase::QuarticSameSignLt0;
            } else if (fact.p > 1.0) {
                fact.case_tag = PsiCase::QuarticSameSignGt2;
            } else {
                throw InfeasibleLambda("psi not positive on (0,1)");
            }
            return fact;
        }

        case SigmaKind::PiecewiseAffine: {
            fact.case_tag = PsiCase::PiecewiseCubicPair;
            fact.left = classify_half(m.alpha, m.beta, xi);
            fact.right = classify_half(-m.beta, -m.alpha, xi);
            fact.leading = fact.left->a0;
            fact.discriminant = fact.left->q_linear * fact.left->q_linear -
                                4.0 * fact.left->q_const;
            return fact;
        }
    }
    throw Error("unreachable");
}

double psi_from_factorization(const PsiFactorization& fact, double h) {
    switch (fact.case_tag) {
        case PsiCase::QuadraticConstant:
            return fact.leading * h * (h - 1.0);
        case PsiCase::CubicAffine:
            return fact.leading * h * (h - 1.0) * (h - fact.p);
        case PsiCase::QuarticOppositeSigns:
        case PsiCase::QuarticComplexPairSigmaEq1:
        case PsiCase::QuarticComplexPairSigmaLt1:
        case PsiCase::QuarticComplexPairSigmaGt1:
        case PsiCase::QuarticSameSignGt2:
        case PsiCase::QuarticSameSignLt0:
            return fact.leading * h * (h - 1.0) *
                   (h * h - fact.sum_sigma * h + fact.prod_pi);
        case PsiCase::PiecewiseCubicPair:
            if (h <= 0.5) return half_eval(*fact.left, h);
            return half_eval(*fact.right, 1.0 - h);
        case PsiCase::QuadratureFallback:
            break;
    }
    throw Error("factorization does not carry a closed form");
}

} // namespace critsolve
