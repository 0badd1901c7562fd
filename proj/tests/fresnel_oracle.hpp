#pragma once

#include "oracles.hpp"

namespace oracle {

// Defining integral of the Fresnel radial coefficient in diffraction units:
// i^|m| sqrt(n+1) integral_0^1 r R(r) J_|m|(-2 pi u r) exp(i k r^2 / 2z) dr.
inline Complex fresnel_v(int n, int m, double u, double z, double k) {
  const int am = std::abs(m);
  const double chirp = k / (2.0 * z);
  const double sign = am % 2 ? -1.0 : 1.0;
  auto integrand = [&](double r) {
    return r * radial(n, am, r) * sign * std::cyl_bessel_j(static_cast<double>(am), 2.0 * kPi * u * r) *
           std::polar(1.0, chirp * r * r);
  };
  // Split [0, 1] so that each piece holds a bounded number of chirp and
  // Bessel oscillations.
  const int pieces = 4 + static_cast<int>(chirp / 4.0 + 2.0 * u);
  Complex total{};
  for (int p = 0; p < pieces; ++p) {
    total += adaptive_integral(integrand, static_cast<double>(p) / pieces, static_cast<double>(p + 1) / pieces, 1e-13);
  }
  return i_power(am) * std::sqrt(n + 1.0) * total;
}

// Far-field limit sqrt(n+1) i^-n J_{n+1}(2 pi u) / (2 pi u).
inline Complex far_field(int n, double u) {
  const double x = 2.0 * kPi * u;
  return std::sqrt(n + 1.0) * i_power(-n) * std::cyl_bessel_j(n + 1.0, x) / x;
}

inline double far_field_peak(int n) {
  double peak = 0.0;
  for (double u = 1e-3; u < 3.0; u += 1e-3) peak = std::max(peak, std::abs(far_field(n, u)));
  return peak;
}

}  // namespace oracle
