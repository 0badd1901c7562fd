#include "zq/zernike.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "zq/error.hpp"

namespace zq {
namespace {

// Radial values for every mode n <= n_max at one rho, indexed by single index.
std::vector<double> radial_table(int n_max, double rho) {
  const auto modes = enumerate_up_to(n_max);
  std::vector<double> out(modes.size());
  for (const auto& idx : modes) out[idx.single_index()] = std::sqrt(idx.n() + 1.0) * radial(idx.n(), idx.abs_m(), rho);
  return out;
}

}  // namespace

double radial(int n, int m_abs, double rho) {
  if (!ModeIndex::is_valid(n, m_abs)) {
    throw InvalidMode("radial: invalid (n, |m|) = (" + std::to_string(n) + "," + std::to_string(m_abs) + ")");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("radial: rho outside [0, 1]");

  const int k_max = (n - m_abs) / 2;
  const double x = 2.0 * rho * rho - 1.0;
  const double m = m_abs;
  double p_prev = 1.0;
  double p = 1.0;
  if (k_max >= 1) p = 1.0 + 0.5 * (m + 2.0) * (x - 1.0);
  for (int k = 2; k <= k_max; ++k) {
    const double s = 2.0 * k + m;
    const double a = (s - 1.0) * (s * (s - 2.0) * x - m * m);
    const double b = 2.0 * (k - 1.0) * (k + m - 1.0) * s;
    const double next = (a * p - b * p_prev) / (2.0 * k * (k + m) * (s - 2.0));
    p_prev = p;
    p = next;
  }
  double power = 1.0;
  for (int i = 0; i < m_abs; ++i) power *= rho;
  return power * p;
}

Complex zernike(const ModeIndex& idx, double rho, double theta) {
  const double r = std::sqrt(idx.n() + 1.0) * radial(idx.n(), idx.abs_m(), rho);
  const double phase = idx.m() * theta;
  return {r * std::cos(phase), r * std::sin(phase)};
}

ZernikeExpansion::ZernikeExpansion(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw InvalidArgument("ZernikeExpansion: n_max must be >= 0");
}

void ZernikeExpansion::set(const ModeIndex& idx, Complex value) {
  if (idx.n() > n_max_) {
    throw InvalidArgument("ZernikeExpansion: mode " + idx.to_string() + " exceeds n_max " + std::to_string(n_max_));
  }
  coefficients_[idx] = value;
}

void ZernikeExpansion::add(const ModeIndex& idx, Complex value) {
  if (idx.n() > n_max_) {
    throw InvalidArgument("ZernikeExpansion: mode " + idx.to_string() + " exceeds n_max " + std::to_string(n_max_));
  }
  coefficients_[idx] += value;
}

Complex ZernikeExpansion::get(const ModeIndex& idx) const {
  const auto it = coefficients_.find(idx);
  return it == coefficients_.end() ? Complex{} : it->second;
}

ZernikeExpansion ZernikeExpansion::pruned(double threshold) const {
  ZernikeExpansion out(n_max_);
  for (const auto& [idx, a] : coefficients_) {
    if (std::abs(a) > threshold) out.coefficients_.emplace(idx, a);
  }
  return out;
}

ZernikeExpansion ZernikeExpansion::single(const ModeIndex& idx, Complex value) {
  ZernikeExpansion out(idx.n());
  out.set(idx, value);
  return out;
}

ZernikeExpansion fit(const PupilFunction& pupil, int n_max, const DiscQuadrature& quad) {
  if (n_max < 0) throw InvalidArgument("fit: n_max must be >= 0");
  if (quad.degree_capacity < n_max) {
    throw CapacityError("fit: quadrature capacity " + std::to_string(quad.degree_capacity) +
                        " is below n_max " + std::to_string(n_max));
  }
  const auto modes = enumerate_up_to(n_max);
  std::vector<Complex> acc(modes.size());
  const double dtheta = quad.azimuthal_weight();

  // e^{-i m theta_k} for m in [-n_max, n_max]
  std::vector<Complex> phases(static_cast<std::size_t>(2 * n_max + 1) * quad.azimuthal_count);
  for (int k = 0; k < quad.azimuthal_count; ++k) {
    for (int m = -n_max; m <= n_max; ++m) {
      phases[static_cast<std::size_t>(k) * (2 * n_max + 1) + (m + n_max)] = std::polar(1.0, -m * quad.angle(k));
    }
  }

  for (std::size_t i = 0; i < quad.radial_nodes.size(); ++i) {
    const double rho = quad.radial_nodes[i];
    const auto rad = radial_table(n_max, rho);
    const double w = quad.radial_weights[i] * dtheta / std::numbers::pi;
    for (int k = 0; k < quad.azimuthal_count; ++k) {
      const Complex value = pupil(rho, quad.angle(k)) * w;
      const Complex* ph = &phases[static_cast<std::size_t>(k) * (2 * n_max + 1) + n_max];
      for (std::size_t j = 0; j < modes.size(); ++j) acc[j] += value * rad[j] * ph[modes[j].m()];
    }
  }

  ZernikeExpansion out(n_max);
  for (std::size_t j = 0; j < modes.size(); ++j) out.set(modes[j], acc[j]);
  return out;
}

Complex reconstruct(const ZernikeExpansion& expansion, double rho, double theta) {
  Complex sum{};
  for (const auto& [idx, a] : expansion) sum += a * zernike(idx, rho, theta);
  return sum;
}

ZernikeExpansion rotate_expansion(const ZernikeExpansion& expansion, double alpha) {
  ZernikeExpansion out(expansion.n_max());
  for (const auto& [idx, a] : expansion) out.set(idx, a * std::polar(1.0, idx.m() * alpha));
  return out;
}

std::vector<Complex> pupil_gram_matrix(int n_max, const DiscQuadrature& quad) {
  if (quad.degree_capacity < n_max) {
    throw CapacityError("pupil_gram_matrix: quadrature capacity below n_max");
  }
  const auto modes = enumerate_up_to(n_max);
  const std::size_t dim = modes.size();
  std::vector<Complex> gram(dim * dim);
  std::vector<Complex> values(dim);
  const double dtheta = quad.azimuthal_weight();
  for (std::size_t i = 0; i < quad.radial_nodes.size(); ++i) {
    const auto rad = radial_table(n_max, quad.radial_nodes[i]);
    const double w = quad.radial_weights[i] * dtheta;
    for (int k = 0; k < quad.azimuthal_count; ++k) {
      for (std::size_t j = 0; j < dim; ++j) values[j] = rad[j] * std::polar(1.0, modes[j].m() * quad.angle(k));
      for (std::size_t a = 0; a < dim; ++a) {
        const Complex ca = std::conj(values[a]) * w;
        for (std::size_t b = 0; b < dim; ++b) gram[a * dim + b] += ca * values[b];
      }
    }
  }
  return gram;
}

}  // namespace zq
