#pragma once

namespace cavarray {

/// Wigner 3-j symbol (j1 j2 j3; m1 m2 m3), evaluated with the Racah
/// closed-form sum in extended precision.
///
/// Returns 0 when the triangle rule, the m-sum rule, or |m| <= j is
/// violated. Throws std::invalid_argument for negative or non-half-integer
/// j, or m incompatible with j (j+m must be an integer).
double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3);

/// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6} via the Racah sum.
/// Returns 0 when any of the four triads violates the triangle rules.
double wigner6j(double j1, double j2, double j3, double j4, double j5, double j6);

}  // namespace cavarray
