#pragma once

namespace critsolve {

/// Incomplete elliptic integral of the first kind,
///
///   ellik(phi, m) = integral over theta in [0, phi] of 1/sqrt(1 - m sin^2 theta),
///
/// in the parameter convention (m, not the modulus k = sqrt(m)).  Negative m
/// is fully supported; it shows up whenever a conjugate root pair is reduced
/// to standard form.  Arguments are (phi, m) everywhere in this library.
///
/// Requires m < 1 and phi in [0, pi/2]; throws ParameterOutOfRange otherwise.
/// Relative accuracy is close to machine precision (Carlson symmetric form
/// with the duplication theorem).
double ellik_incomplete(double phi, double m);

/// Complete elliptic integral of the first kind, ellik(pi/2, m).
/// Requires m < 1; diverges logarithmically as m -> 1.
double ellik_complete(double m);

/// K and F through the complementary parameter mc = 1 - m (mc > 0).  Near
/// m = 1 the direct forms lose all relative accuracy to the subtraction
/// 1 - m; these take the complement as computed by the caller, which the
/// closed-form reductions can usually produce without cancellation.
double ellik_complete_complement(double mc);
double ellik_incomplete_complement(double phi, double mc);

/// Carlson symmetric integral R_F(x, y, z); x, y, z >= 0, at most one zero.
double carlson_rf(double x, double y, double z);

} // namespace critsolve
