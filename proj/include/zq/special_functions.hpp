#pragma once

#include <vector>

namespace zq {

inline constexpr int kMaxBesselOrder = 200;
inline constexpr double kMaxBesselArgument = 1e5;
inline constexpr int kLogFactorialTableSize = 400;

/// J_order(x) for integer order in [0, 200] and |x| <= 1e5.
///
/// Small arguments use the ascending series, moderate arguments Miller's
/// downward recurrence normalized by J_0 + 2 sum J_2k = 1, and |x| >= 2000
/// the Hankel expansion of J_0, J_1 followed by upward recurrence.
double bessel_j(int order, double x);

/// J_0(x) .. J_max_order(x) from a single recurrence run.
std::vector<double> bessel_j_sequence(int max_order, double x);

/// J_order(x) / x with the removable singularity at x = 0 filled in.
/// Requires order >= 1.
double bessel_j_over_x(int order, double x);

/// Spherical Bessel j_l(x), l in [0, 200].
double spherical_bessel_j(int l, double x);
std::vector<double> spherical_bessel_j_sequence(int max_l, double x);

/// log(n!) for 0 <= n < 400, from a table built once.
double log_factorial(int n);

/// Angular momenta and projections as doubled integers (2j, 2m), so that
/// half-integers never pass through floating point.
struct AngularMomentumTriple {
  int two_j1 = 0, two_j2 = 0, two_j3 = 0;
  int two_m1 = 0, two_m2 = 0, two_m3 = 0;

  /// Throws InvalidTriple unless every |m| <= j, j - m is integral and
  /// j1 + j2 + j3 is integral.
  void validate() const;
};

/// <j1 m1; j2 m2 | j3 m3> in the Condon-Shortley phase convention.
///
/// Zero (not an error) when m1 + m2 != m3 or the triangle condition fails.
/// The alternating Racah sum is accumulated exactly in big-integer binomial
/// form, so the only rounding is in the factorial prefactor.
double clebsch_gordan(const AngularMomentumTriple& t);

}  // namespace zq
