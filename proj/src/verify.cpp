#include "zq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "zq/coupling.hpp"
#include "zq/error.hpp"
#include "zq/parallel.hpp"
#include "zq/propagation.hpp"
#include "zq/quadrature.hpp"
#include "zq/special_functions.hpp"

namespace zq {
namespace {

constexpr double kPi = std::numbers::pi;

void check_n_max(int n_max) {
  if (n_max < 0 || n_max > kMaxRadialOrder) {
    throw InvalidArgument("verify: n_max must lie in [0, " + std::to_string(kMaxRadialOrder) + "]");
  }
}

Complex i_power(int p) {
  static constexpr Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((p % 4) + 4) % 4];
}

}  // namespace

double pupil_gram_deviation(int n_max) {
  check_n_max(n_max);
  const auto gram = pupil_gram_matrix(n_max, build_quadrature(n_max));
  const std::size_t dim = mode_count(n_max);
  double dev = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      dev = std::max(dev, std::abs(gram[a * dim + b] - (a == b ? kPi : 0.0)));
    }
  }
  return dev;
}

std::vector<Complex> image_gram_matrix(int n_max, double q_cutoff) {
  check_n_max(n_max);
  if (!(q_cutoff > 0.0)) throw InvalidArgument("image_gram_matrix: cutoff must be positive");
  const double upper = 2.0 * kPi * q_cutoff;
  if (upper > kMaxBesselArgument) throw DomainError("image_gram_matrix: cutoff exceeds the Bessel domain");

  // I(nu, mu) = integral_0^X J_nu(t) J_mu(t) dt / t, composite Gauss-Legendre.
  const int orders = n_max + 1;
  const auto panels = static_cast<std::size_t>(std::ceil(upper / (0.5 * kPi)));
  const double width = upper / static_cast<double>(panels);
  const auto rule = gauss_legendre(12);
  std::vector<double> partial(panels * orders * orders);
  parallel_for(panels, [&](std::size_t p) {
    double* out = &partial[p * orders * orders];
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
      const double t = p * width + 0.5 * width * (rule.nodes[g] + 1.0);
      const auto seq = bessel_j_sequence(orders, t);
      const double w = 0.5 * width * rule.weights[g] / t;
      for (int a = 0; a < orders; ++a) {
        for (int b = a; b < orders; b += 2) out[a * orders + b] += w * seq[a + 1] * seq[b + 1];
      }
    }
  });
  std::vector<double> integral(orders * orders);
  for (std::size_t p = 0; p < panels; ++p) {
    for (int k = 0; k < orders * orders; ++k) integral[k] += partial[p * orders * orders + k];
  }
  for (int a = 0; a < orders; ++a) {
    for (int b = a; b < orders; b += 2) {
      integral[a * orders + b] += std::cos((b - a) * kPi / 2.0) / (kPi * upper);
      integral[b * orders + a] = integral[a * orders + b];
    }
  }

  const auto modes = enumerate_up_to(n_max);
  const std::size_t dim = modes.size();
  std::vector<Complex> gram(dim * dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (modes[a].m() != modes[b].m()) continue;
      const int na = modes[a].n();
      const int nb = modes[b].n();
      gram[a * dim + b] = 2.0 * kPi * std::sqrt((na + 1.0) * (nb + 1.0)) * i_power(nb - na) * integral[na * orders + nb];
    }
  }
  return gram;
}

double image_gram_deviation(int n_max, double q_cutoff) {
  const auto gram = image_gram_matrix(n_max, q_cutoff);
  const std::size_t dim = mode_count(n_max);
  double dev = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      dev = std::max(dev, std::abs(gram[a * dim + b] - (a == b ? kPi : 0.0)));
    }
  }
  return dev;
}

std::vector<CheckResult> verify_pupil(int n_max) {
  check_n_max(n_max);
  std::vector<CheckResult> out;
  out.push_back({"pupil_gram", pupil_gram_deviation(n_max), 1e-12});

  double count_dev = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    count_dev = std::max(count_dev, std::abs(static_cast<double>(enumerate_up_to(n).size()) -
                                             (n + 1.0) * (n + 2.0) / 2.0));
  }
  out.push_back({"mode_count", count_dev, 0.0});

  const auto modes = enumerate_up_to(n_max);
  double endpoint_dev = 0.0;
  double index_dev = 0.0;
  for (const auto& idx : modes) {
    endpoint_dev = std::max(endpoint_dev, std::abs(radial(idx.n(), idx.abs_m(), 1.0) - 1.0));
    const auto back = ModeIndex::from_single_index(idx.single_index());
    if (back != idx) index_dev = 1.0;
  }
  out.push_back({"radial_endpoint", endpoint_dev, 1e-12});
  out.push_back({"index_round_trip", index_dev, 0.0});

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int pair_limit = std::min(n_max, 6);
  const auto pair_modes = enumerate_up_to(pair_limit);
  double product_dev = 0.0;
  for (const auto& a : pair_modes) {
    for (const auto& b : pair_modes) {
      const auto table = coupling_coefficients(a, b);
      for (int s = 0; s < 4; ++s) {
        const double rho = std::sqrt(unit(rng));
        const double theta = 2.0 * kPi * unit(rng);
        Complex sum{};
        for (const auto& [n3, coeff] : table.entries) {
          sum += coeff * zernike(ModeIndex::validate(n3, table.m3()), rho, theta);
        }
        product_dev = std::max(product_dev, std::abs(sum - zernike(a, rho, theta) * zernike(b, rho, theta)));
      }
    }
  }
  out.push_back({"product_identity", product_dev, 1e-10});

  ZernikeExpansion reference(n_max);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const auto& idx : modes) reference.set(idx, Complex(gauss(rng), gauss(rng)));
  const auto refit = fit([&](double r, double t) { return reconstruct(reference, r, t); }, n_max,
                         build_quadrature(n_max));
  double fit_dev = 0.0;
  for (const auto& idx : modes) fit_dev = std::max(fit_dev, std::abs(refit.get(idx) - reference.get(idx)));
  out.push_back({"fit_round_trip", fit_dev, 1e-11});
  return out;
}

std::vector<CheckResult> verify_image(int n_max) {
  check_n_max(n_max);
  std::vector<CheckResult> out;
  out.push_back({"image_gram", image_gram_deviation(n_max, 200.0), 2e-3});
  out.push_back({"piston_on_axis", std::abs(zernike_ft(ModeIndex::validate(0, 0), 0.0, 0.0) - kPi), 1e-14});
  return out;
}

}  // namespace zq
