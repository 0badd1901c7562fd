#include "zq/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "zq/error.hpp"

namespace zq {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double DiscQuadrature::azimuthal_weight() const {
  return 2.0 * std::numbers::pi / azimuthal_count;
}

double DiscQuadrature::angle(int k) const {
  return 2.0 * std::numbers::pi * k / azimuthal_count;
}

DiscQuadrature build_quadrature(int degree_capacity) {
  if (degree_capacity < 0) throw InvalidArgument("build_quadrature: degree_capacity must be >= 0");
  // rho * rho^a with a <= 2c+1 has degree 2c+2 <= 2N-1 for N = c+2.
  const int radial_count = degree_capacity + 2;
  const auto gl = gauss_legendre(radial_count);
  DiscQuadrature q;
  q.degree_capacity = degree_capacity;
  q.azimuthal_count = 2 * degree_capacity + 2;
  q.radial_nodes.resize(radial_count);
  q.radial_weights.resize(radial_count);
  for (int i = 0; i < radial_count; ++i) {
    const double rho = 0.5 * (gl.nodes[i] + 1.0);
    q.radial_nodes[i] = rho;
    q.radial_weights[i] = 0.5 * gl.weights[i] * rho;
  }
  return q;
}

}  // namespace zq
