#pragma once

#include <stdexcept>
#include <string>

namespace critsolve {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveSample : Error { using Error::Error; };
struct InvalidShape : Error { using Error::Error; };
struct NonPositiveProjection : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

/// lambda is at or below the feasibility bound: psi_lambda <= 0 somewhere in (0,1).
struct InfeasibleLambda : Error { using Error::Error; };

/// A root pair is about to collide; closed-form dispatch is unsafe and the
/// caller should fall back to quadrature.
struct NearDegenerate : Error { using Error::Error; };

struct ParameterOutOfRange : Error { using Error::Error; };
struct DegenerateMap : Error { using Error::Error; };
struct BracketFailure : Error { using Error::Error; };
struct InfeasibleBracket : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct MeshTooSmall : Error { using Error::Error; };
struct IterationStall : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace critsolve
