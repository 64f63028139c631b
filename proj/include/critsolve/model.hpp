#pragma once

#include <optional>
#include <string>

namespace critsolve {

/// The three cross-section samples sigma(0), sigma(1/2), sigma(1).
/// All strictly positive.
struct SigmaSamples {
    double sigma0;
    double sigma_half;
    double sigma1;
};

/// Validates positivity; throws NonPositiveSample.
SigmaSamples make_samples(double s0, double s_half, double s1);

/// How the continuous cross section is rebuilt from the three samples.
///
/// The two SemiAnalytic kinds replace the quadratic (resp. piecewise-affine)
/// interpolant by its Ritz projection onto affine profiles and then share the
/// Affine evaluation path.
enum class SigmaKind {
    Constant,
    Affine,
    Quadratic,
    PiecewiseAffine,
    SemiAnalyticQuadratic,
    SemiAnalyticPiecewise,
};

const char* to_string(SigmaKind kind);
std::optional<SigmaKind> kind_from_string(const std::string& token);

/// A cross-section representation with its derived shape parameters.
///
///   Constant          sigma = mu, mu = (s0 + 2 s_half + s1)/4
///   Affine            sigma = mu (1 - alpha + 2 alpha h), mu = (s0+s1)/2
///   Quadratic         degree-2 interpolant; mu = (s0+s1)/2, alpha = 1 - s0/mu,
///                     delta = -(s0 - 2 s_half + s1)/(s0 + s1)
///   PiecewiseAffine   mu = s_half, s0 = mu (1-alpha), s1 = mu (1+beta)
///   SemiAnalytic*     affine with projected endpoints mu (1 -+ alpha)
///
/// Immutable after construction; safe to share between threads.
struct SigmaModel {
    SigmaKind kind;
    SigmaSamples samples;
    double mu = 0.0;
    double alpha = 0.0;
    double delta = 0.0;  // curvature, Quadratic only
    double beta = 0.0;   // right slope, PiecewiseAffine only
};

SigmaModel build_model(const SigmaSamples& samples, SigmaKind kind);

/// sigma(h) for h in [0, 1]; throws DomainError outside.
double sigma_eval(const SigmaModel& model, double h);

/// The double antiderivative V of sigma with V(0) = V(1) = 0 (convex, < 0 on
/// (0,1)).  Closed form per kind; for the piecewise kind V and V' are
/// continuous across h = 1/2.
double v_eval(const SigmaModel& model, double h);

/// dV/dh, closed form per kind (one-sided value at the piecewise junction).
double v_prime(const SigmaModel& model, double h);

/// psi_lambda(h) = h(h-1) - 2 lambda V(h), evaluated in factored form so that
/// both endpoint zeros are exact and no cancellation occurs near them.
double psi_eval(const SigmaModel& model, double lambda, double h);

/// psi_lambda with the complement 1-h supplied by the caller.  Quadrature
/// substitutions produce h = sin^2 and 1-h = cos^2 to full precision each;
/// recomputing 1-h from a rounded h near 1 would lose the endpoint zero.
double psi_eval_parts(const SigmaModel& model, double lambda, double h,
                      double one_minus_h);

/// Supremum over (0,1) of h(h-1) / (2 V(h)); psi_lambda > 0 on (0,1) exactly
/// for lambda above this bound.  Endpoint limits -1/(2V'(0)) and 1/(2V'(1))
/// are included.  Relative accuracy ~1e-10.
double lambda_lower_bound(const SigmaModel& model);

/// Root layout of psi_lambda, which selects the closed-form integral.
enum class PsiCase {
    QuadraticConstant,           // psi = a0 h(h-1)
    CubicAffine,                 // psi = a0 h(h-1)(h-p)
    QuarticOppositeSigns,        // real roots p < 0 < 1 < g
    QuarticComplexPairSigmaEq1,  // conjugate pair, p+g = 1
    QuarticComplexPairSigmaLt1,  // conjugate pair, p+g < 1
    QuarticComplexPairSigmaGt1,  // conjugate pair, p+g > 1
    QuarticSameSignGt2,          // real roots 1 < p < g
    QuarticSameSignLt0,          // real roots p < g < 0
    PiecewiseCubicPair,          // two half-cubics, classified independently
    QuadratureFallback,          // no closed form used (degenerate dispatch)
};

const char* to_string(PsiCase c);

/// Factorization of one piecewise half-cubic psi^0(h) = h * q(h) on (0, 1/2],
/// expressed in left-half coordinates.  The right half is stored with the
/// parameter swap (alpha, beta) -> (-beta, -alpha) so that its value at h is
/// this factorization evaluated at 1-h.
struct HalfCubicFactors {
    enum class Kind {
        Linear,            // alpha = 0: psi^0 = (1-xi) h^2 + b0 h
        RealStraddle,      // alpha > 0: q = a0 (h - rMinus)(rPlus - h), rMinus < 0 < rPlus
        ComplexPair,       // alpha < 0, conjugate roots: q = a0 (h^2 + qLinear h + qConst)
        RealPositivePair,  // alpha < 0: q = a0 (rMinus - h)(rPlus - h), 1/2 <= rMinus <= rPlus
        RealNegativePair,  // alpha < 0: q = a0 (h - rMinus)(h - rPlus), rMinus <= rPlus < 0
    };
    Kind kind;
    double a0 = 0.0;       // |2 alpha xi / 3|; unused for Linear
    double xi = 0.0;       // lambda * sigma_half
    double b0 = 0.0;       // Linear only: slope of psi^0 at 0
    double r_minus = 0.0;  // real roots of the quadratic factor
    double r_plus = 0.0;
    double q_linear = 0.0;  // monic quadratic factor h^2 + q_linear h + q_const
    double q_const = 0.0;
};

const char* to_string(HalfCubicFactors::Kind k);

/// Full root classification of psi_lambda.
///
/// For the quartic cases psi = leading * h (h-1) (h^2 - sum_sigma h + prod_pi)
/// and discriminant = sum_sigma^2 - 4 prod_pi; p, g hold the real roots when
/// they exist.  For PiecewiseCubicPair the two halves carry the data.
struct PsiFactorization {
    PsiCase case_tag;
    double leading = 0.0;
    double p = 0.0;
    double g = 0.0;
    double sum_sigma = 0.0;
    double prod_pi = 0.0;
    double discriminant = 0.0;
    std::optional<HalfCubicFactors> left;
    std::optional<HalfCubicFactors> right;
};

/// Classifies the roots of psi_lambda.  Throws InfeasibleLambda when
/// psi_lambda <= 0 somewhere in (0,1) and NearDegenerate when a root pair is
/// too close to collapsing for the closed forms to be trusted.
PsiFactorization classify_psi(const SigmaModel& model, double lambda);

/// Reconstructs psi_lambda(h) from a factorization (product form).
double psi_from_factorization(const PsiFactorization& fact, double h);

} // namespace critsolve
