#pragma once

#include <vector>

namespace zq {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
GaussLegendreRule gauss_legendre(int n);

/// Tensor-product rule on the unit disc for the measure rho drho dtheta.
///
/// Radial part: Gauss-Legendre mapped to [0, 1] with rho folded into the
/// weights. Azimuthal part: N equispaced angles theta_k = 2 pi k / N.
struct DiscQuadrature {
  int degree_capacity = 0;
  std::vector<double> radial_nodes;
  std::vector<double> radial_weights;
  int azimuthal_count = 0;

  double azimuthal_weight() const;
  double angle(int k) const;
  std::size_t size() const { return radial_nodes.size() * static_cast<std::size_t>(azimuthal_count); }
};

/// Disc rule that integrates rho^a e^{i b theta} exactly for
/// a <= 2 * degree_capacity + 1 and |b| < 2 * degree_capacity + 2, which
/// covers any product of two Zernike polynomials of order <= degree_capacity.
DiscQuadrature build_quadrature(int degree_capacity);

}  // namespace zq
