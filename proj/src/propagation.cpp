#include "zq/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>

#include "zq/coupling.hpp"
#include "zq/error.hpp"
#include "zq/parallel.hpp"
#include "zq/special_functions.hpp"

namespace zq {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

Complex i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// J_{h+1}(x)/x for h = 0..max_h.
std::vector<double> bessel_over_x_table(int max_h, double x) {
  std::vector<double> out(static_cast<std::size_t>(max_h) + 1);
  if (x < 1e-6) {
    for (int h = 0; h <= max_h; ++h) out[h] = bessel_j_over_x(h + 1, x);
    return out;
  }
  const auto seq = bessel_j_sequence(max_h + 1, x);
  for (int h = 0; h <= max_h; ++h) out[h] = seq[h + 1] / x;
  return out;
}

double grid_radius_max(const GridSpec& spec) {
  double r = 0.0;
  for (int ix : {0, spec.width - 1}) {
    for (int iy : {0, spec.height - 1}) r = std::max(r, std::hypot(spec.x(ix), spec.y(iy)));
  }
  return r;
}

}  // namespace

void GridSpec::validate() const {
  if (width <= 0 || height <= 0) throw InvalidArgument("grid: width and height must be positive");
  if (!(extent_x > 0.0) || !(extent_y > 0.0) || !std::isfinite(extent_x) || !std::isfinite(extent_y)) {
    throw InvalidArgument("grid: extents must be positive and finite");
  }
}

FieldGrid::FieldGrid(GridSpec spec, PlaneKind plane, double z)
    : spec_(spec), plane_(plane), z_(z) {
  spec_.validate();
  samples_.assign(spec_.sample_count(), Complex{});
}

FieldGrid::FieldGrid(GridSpec spec, PlaneKind plane, double z, std::vector<Complex> samples)
    : spec_(spec), plane_(plane), z_(z), samples_(std::move(samples)) {
  spec_.validate();
  if (samples_.size() != spec_.sample_count()) {
    throw InvalidArgument("grid: sample count does not match width * height");
  }
}

std::string FieldGrid::plane_tag() const {
  switch (plane_) {
    case PlaneKind::Pupil: return "pupil";
    case PlaneKind::Image: return "image";
    case PlaneKind::Fresnel: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "fresnel(%.17g)", z_);
      return buf;
    }
  }
  return "pupil";
}

FieldGrid sample_pupil(const ZernikeExpansion& expansion, const GridSpec& spec) {
  FieldGrid grid(spec, PlaneKind::Pupil);
  parallel_for(static_cast<std::size_t>(spec.height), [&](std::size_t row) {
    const int iy = static_cast<int>(row);
    const double y = spec.y(iy);
    for (int ix = 0; ix < spec.width; ++ix) {
      const double x = spec.x(ix);
      const double r = std::hypot(x, y);
      if (r <= 1.0) grid.at(ix, iy) = reconstruct(expansion, r, std::atan2(y, x));
    }
  });
  return grid;
}

Complex zernike_ft(const ModeIndex& idx, double q, double phi) {
  if (!(q >= 0.0)) throw DomainError("zernike_ft: q must be non-negative");
  const double radial = bessel_j_over_x(idx.n() + 1, 2.0 * kPi * q);
  return 2.0 * kPi * i_power(idx.n()) * std::sqrt(idx.n() + 1.0) * radial * std::polar(1.0, idx.m() * phi);
}

Complex expansion_ft(const ZernikeExpansion& expansion, double q, double phi) {
  if (!(q >= 0.0)) throw DomainError("expansion_ft: q must be non-negative");
  if (expansion.empty()) return {};
  int n_top = 0;
  for (const auto& [idx, a] : expansion) n_top = std::max(n_top, idx.n());
  const auto table = bessel_over_x_table(n_top, 2.0 * kPi * q);
  Complex sum{};
  for (const auto& [idx, a] : expansion) {
    sum += a * (2.0 * kPi * std::sqrt(idx.n() + 1.0) * table[idx.n()]) * i_power(idx.n()) *
           std::polar(1.0, idx.m() * phi);
  }
  return sum;
}

FieldGrid fraunhofer_field(const ZernikeExpansion& expansion, const GridSpec& spec) {
  FieldGrid grid(spec, PlaneKind::Image);
  if (expansion.empty()) return grid;
  parallel_for(static_cast<std::size_t>(spec.height), [&](std::size_t row) {
    const int iy = static_cast<int>(row);
    const double y = spec.y(iy);
    for (int ix = 0; ix < spec.width; ++ix) {
      const double x = spec.x(ix);
      grid.at(ix, iy) = expansion_ft(expansion, std::hypot(x, y), std::atan2(y, x));
    }
  });
  return grid;
}

void FresnelParams::validate() const {
  if (!(z > 0.0) || !std::isfinite(z)) throw InvalidArgument("fresnel: z must be positive");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("fresnel: k must be positive");
}

FresnelSeries::FresnelSeries(const ModeIndex& idx, const FresnelParams& params, double rho_max,
                             const TruncationRule& rule)
    : n_(idx.n()), m_abs_(idx.abs_m()), rho_max_(rho_max), tolerance_(rule.tolerance) {
  params.validate();
  if (!(rho_max >= 0.0)) throw InvalidArgument("fresnel: rho_max must be non-negative");
  const double beta = params.defocus();

  l_max_ = rule.l_max.value_or(static_cast<int>(std::ceil(kE * beta / 2.0)) + rule.margin);
  if (l_max_ < 0) throw InvalidArgument("fresnel: l_max must be non-negative");
  const int h_auto = std::min(n_ + 2 * l_max_, static_cast<int>(std::ceil(kPi * kE * rho_max)) + rule.margin);
  h_max_ = rule.h_max.value_or(h_auto);
  if (h_max_ < m_abs_) h_max_ = m_abs_;
  if ((h_max_ - m_abs_) % 2 != 0) --h_max_;
  l_max_ = std::min(l_max_, (n_ + h_max_) / 2);

  if (h_max_ + 1 > kMaxBesselOrder || l_max_ + 1 > kMaxBesselOrder) {
    throw ConvergenceError("fresnel series needs h_max=" + std::to_string(h_max_) + ", l_max=" +
                           std::to_string(l_max_) + " which exceeds the supported Bessel order " +
                           std::to_string(kMaxBesselOrder) + "; increase z or reduce the grid extent");
  }

  const auto jl = spherical_bessel_j_sequence(l_max_ + 1, beta);
  h_coefficients_.assign(static_cast<std::size_t>(h_max_) + 1, Complex{});
  const auto mode = ModeIndex::validate(n_, m_abs_);
  for (int l = 0; l <= l_max_; ++l) {
    const auto table = coupling_coefficients(ModeIndex::validate(2 * l, 0), mode);
    for (const auto& [h, coeff] : table.entries) {
      if (h > h_max_) continue;
      h_coefficients_[h] += i_power(l - h) * (std::sqrt((2.0 * l + 1.0) * (h + 1.0)) * coeff * jl[l]);
    }
  }
  // First neglected l block, bounded with |R| <= 1 and |J_{h+1}(x)/x| <= 1/2.
  l_tail_ = l_max_ < (n_ + h_max_) / 2
                ? (2.0 * l_max_ + 3.0) * std::abs(jl[l_max_ + 1]) * std::sqrt(n_ + 1.0) * 0.5
                : 0.0;
  global_phase_ = std::polar(1.0, beta);
}

Complex FresnelSeries::operator()(double rho) const {
  if (!(rho >= 0.0) || rho > rho_max_ * (1.0 + 1e-12) + 1e-300) {
    throw DomainError("fresnel: rho outside the range the series was truncated for");
  }
  const auto table = bessel_over_x_table(h_max_, 2.0 * kPi * rho);
  Complex sum{};
  for (int h = m_abs_; h <= h_max_; h += 2) sum += h_coefficients_[h] * table[h];

  double tail = l_tail_;
  const bool h_truncated = h_max_ < n_ + 2 * l_max_;
  if (h_truncated) {
    for (int h = std::max(m_abs_, h_max_ - 2); h <= h_max_; h += 2) tail += std::abs(h_coefficients_[h] * table[h]);
  }
  const double scale = std::sqrt(n_ + 1.0) * 0.5;
  if (tail > tolerance_ * scale) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "fresnel series for (%d,%d) not converged at rho=%.6g: tail estimate %.3e exceeds %.3e "
                  "(h_max=%d, l_max=%d)",
                  n_, m_abs_, rho, tail, tolerance_ * scale, h_max_, l_max_);
    throw ConvergenceError(buf);
  }
  return global_phase_ * sum;
}

Complex fresnel_v(const ModeIndex& idx, double rho, const FresnelParams& params, const TruncationRule& rule) {
  return FresnelSeries(idx, params, rho, rule)(rho);
}

FieldGrid fresnel_field(const ZernikeExpansion& expansion, const FresnelParams& params, const GridSpec& spec,
                        const TruncationRule& rule) {
  params.validate();
  FieldGrid grid(spec, PlaneKind::Fresnel, params.z);
  if (expansion.empty()) return grid;

  const double rho_max = grid_radius_max(spec);
  std::map<std::pair<int, int>, FresnelSeries> series;
  for (const auto& [idx, a] : expansion) {
    const auto key = std::make_pair(idx.n(), idx.abs_m());
    if (!series.contains(key)) series.emplace(key, FresnelSeries(idx, params, rho_max, rule));
  }

  const Complex lead = Complex(0.0, -params.k / params.z) * std::polar(1.0, std::fmod(params.k * params.z, 2.0 * kPi));
  const double chirp = 2.0 * kPi * kPi * params.z / params.k;
  parallel_for(static_cast<std::size_t>(spec.height), [&](std::size_t row) {
    const int iy = static_cast<int>(row);
    const double y = spec.y(iy);
    for (int ix = 0; ix < spec.width; ++ix) {
      const double x = spec.x(ix);
      const double rho = std::hypot(x, y);
      const double theta = std::atan2(y, x);
      std::map<std::pair<int, int>, Complex> radial_values;
      Complex sum{};
      for (const auto& [idx, a] : expansion) {
        const auto key = std::make_pair(idx.n(), idx.abs_m());
        auto it = radial_values.find(key);
        if (it == radial_values.end()) it = radial_values.emplace(key, series.at(key)(rho)).first;
        sum += a * std::polar(1.0, idx.m() * theta) * it->second;
      }
      grid.at(ix, iy) = lead * std::polar(1.0, chirp * rho * rho) * sum;
    }
  });
  return grid;
}

}  // namespace zq
