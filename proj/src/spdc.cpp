#include "zq/spdc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "zq/coupling.hpp"
#include "zq/error.hpp"
#include "zq/parallel.hpp"
#include "zq/quadrature.hpp"
#include "zq/special_functions.hpp"

namespace zq {
namespace {

constexpr double kPi = std::numbers::pi;

Complex i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Ztilde_j(r) for every mode n <= n_max, single-index order.
std::vector<Complex> image_basis(int n_max, Vec2 r) {
  const double q = std::hypot(r.x, r.y);
  const double phi = std::atan2(r.y, r.x);
  const double x = 2.0 * kPi * q;
  std::vector<double> radial(static_cast<std::size_t>(n_max) + 1);
  if (x < 1e-6) {
    for (int n = 0; n <= n_max; ++n) radial[n] = bessel_j_over_x(n + 1, x);
  } else {
    const auto seq = bessel_j_sequence(n_max + 1, x);
    for (int n = 0; n <= n_max; ++n) radial[n] = seq[n + 1] / x;
  }
  const auto modes = enumerate_up_to(n_max);
  std::vector<Complex> out(modes.size());
  for (const auto& idx : modes) {
    out[idx.single_index()] = 2.0 * kPi * std::sqrt(idx.n() + 1.0) * radial[idx.n()] * i_power(idx.n()) *
                              std::polar(1.0, idx.m() * phi);
  }
  return out;
}

void check_state_dim(int n_max, std::size_t size, std::size_t expected) {
  if (n_max < 0) throw InvalidArgument("state: n_max must be non-negative");
  if (size != expected) throw InvalidArgument("state: coefficient count does not match n_max");
}

}  // namespace

SinglePhotonState make_single_photon(int n_max, std::vector<Complex> zeta) {
  check_state_dim(n_max, zeta.size(), mode_count(n_max));
  double norm2 = 0.0;
  for (const auto& z : zeta) norm2 += std::norm(z);
  if (norm2 == 0.0) throw DegenerateInput("single photon state has zero norm");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : zeta) z *= inv;
  return SinglePhotonState{n_max, std::move(zeta), 1.0};
}

SinglePhotonState project_single_photon(const std::function<Complex(double, double)>& spectrum, int n_max,
                                        const ProjectionOptions& opts) {
  if (n_max < 0) throw InvalidArgument("project_single_photon: n_max must be non-negative");
  if (!(opts.q_max > 0.0) || !(opts.panel_width > 0.0) || opts.panel_order < 1) {
    throw InvalidArgument("project_single_photon: invalid integration options");
  }
  const int n_theta = opts.azimuthal_count > 0 ? opts.azimuthal_count : 4 * n_max + 64;
  const auto panels = static_cast<long>(std::ceil(opts.q_max / opts.panel_width));
  const double width = opts.q_max / static_cast<double>(panels);
  const auto gl = gauss_legendre(opts.panel_order);
  const auto modes = enumerate_up_to(n_max);

  std::vector<Complex> phases(static_cast<std::size_t>(n_theta) * (2 * n_max + 1));
  std::vector<double> cos_t(n_theta), sin_t(n_theta);
  for (int k = 0; k < n_theta; ++k) {
    const double theta = 2.0 * kPi * k / n_theta;
    cos_t[k] = std::cos(theta);
    sin_t[k] = std::sin(theta);
    for (int m = -n_max; m <= n_max; ++m) {
      phases[static_cast<std::size_t>(k) * (2 * n_max + 1) + (m + n_max)] = std::polar(1.0, -m * theta);
    }
  }
  std::vector<Complex> conj_i(modes.size());
  for (const auto& idx : modes) conj_i[idx.single_index()] = std::conj(i_power(idx.n()));

  std::vector<Complex> acc(modes.size());
  double spectrum_norm = 0.0;
  std::vector<double> radial(static_cast<std::size_t>(n_max) + 1);
  for (long p = 0; p < panels; ++p) {
    const double lo = p * width;
    for (int g = 0; g < opts.panel_order; ++g) {
      const double q = lo + 0.5 * width * (gl.nodes[g] + 1.0);
      const double x = 2.0 * kPi * q;
      const auto seq = bessel_j_sequence(n_max + 1, x);
      for (int n = 0; n <= n_max; ++n) radial[n] = 2.0 * kPi * std::sqrt(n + 1.0) * seq[n + 1] / x;
      const double w = 0.5 * width * gl.weights[g] * q * 2.0 * kPi / n_theta;
      for (int k = 0; k < n_theta; ++k) {
        const Complex c = spectrum(q * cos_t[k], q * sin_t[k]) * w;
        spectrum_norm += std::norm(c) / w;
        const Complex* ph = &phases[static_cast<std::size_t>(k) * (2 * n_max + 1) + n_max];
        for (std::size_t j = 0; j < modes.size(); ++j) {
          acc[j] += c * radial[modes[j].n()] * conj_i[j] * ph[modes[j].m()];
        }
      }
    }
  }

  double captured = 0.0;
  for (auto& a : acc) {
    a /= std::sqrt(kPi);
    captured += std::norm(a);
  }
  const double fraction = spectrum_norm > 0.0 ? captured / spectrum_norm : 0.0;
  if (fraction < 1e-6) {
    throw DegenerateInput("project_single_photon: captured fraction " + std::to_string(fraction) +
                          " is below 1e-6");
  }
  auto state = make_single_photon(n_max, std::move(acc));
  state.captured_fraction = fraction;
  return state;
}

double g1_at(const SinglePhotonState& state, Vec2 r) {
  const auto basis = image_basis(state.n_max, r);
  Complex amp{};
  for (std::size_t j = 0; j < basis.size(); ++j) amp += state.zeta[j] * basis[j];
  return std::norm(amp);
}

FieldGrid g1_fraunhofer(const SinglePhotonState& state, const GridSpec& spec) {
  FieldGrid grid(spec, PlaneKind::Image);
  parallel_for(static_cast<std::size_t>(spec.height), [&](std::size_t row) {
    const int iy = static_cast<int>(row);
    for (int ix = 0; ix < spec.width; ++ix) grid.at(ix, iy) = g1_at(state, {spec.x(ix), spec.y(iy)});
  });
  return grid;
}

Complex spdc_amplitude(Vec2 q1, Vec2 q2, const ZernikeExpansion& pump, double crystal_length,
                       double pump_wavenumber) {
  if (!(crystal_length > 0.0) || !(pump_wavenumber > 0.0)) {
    throw InvalidArgument("spdc_amplitude: crystal length and pump wavenumber must be positive");
  }
  const Vec2 sum{q1.x + q2.x, q1.y + q2.y};
  const double dx = q1.x - q2.x;
  const double dy = q1.y - q2.y;
  const double arg = crystal_length * (dx * dx + dy * dy) / (4.0 * pump_wavenumber);
  const double sinc = arg == 0.0 ? 1.0 : std::sin(arg) / arg;
  const Complex v = expansion_ft(pump, std::hypot(sum.x, sum.y), std::atan2(sum.y, sum.x));
  return std::sqrt(2.0 * crystal_length / (kPi * kPi * pump_wavenumber)) * v * sinc;
}

TwoPhotonState::TwoPhotonState(int n_max, std::vector<Complex> zeta, bool normalize)
    : n_max_(n_max), dim_(mode_count(n_max)), raw_norm_(0.0), normalized_(false), zeta_(std::move(zeta)) {
  check_state_dim(n_max, zeta_.size(), dim_ * dim_);
  double norm2 = 0.0;
  for (const auto& z : zeta_) norm2 += std::norm(z);
  raw_norm_ = std::sqrt(norm2);
  if (raw_norm_ == 0.0) throw EmptyState("all two-photon coefficients vanish within the cutoff");
  if (normalize) {
    const double inv = 1.0 / raw_norm_;
    for (auto& z : zeta_) z *= inv;
    normalized_ = true;
  } else {
    normalized_ = std::abs(raw_norm_ - 1.0) < 1e-12;
  }
}

bool TwoPhotonState::is_symmetric(double tol) const {
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = a + 1; b < dim_; ++b) {
      if (std::abs(at(a, b) - at(b, a)) > tol) return false;
    }
  }
  return true;
}

TwoPhotonState TwoPhotonState::product(int n_max, const std::vector<Complex>& u) {
  const std::size_t dim = mode_count(n_max);
  check_state_dim(n_max, u.size(), dim);
  std::vector<Complex> zeta(dim * dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) zeta[a * dim + b] = u[a] * u[b];
  }
  return TwoPhotonState(n_max, std::move(zeta), true);
}

TwoPhotonState spdc_zeta(const ZernikeExpansion& pump, int n_max) {
  if (n_max < 0 || n_max > kMaxRadialOrder) {
    throw InvalidArgument("spdc_zeta: n_max must lie in [0, " + std::to_string(kMaxRadialOrder) + "]");
  }
  std::map<int, std::map<int, Complex>> by_m;  // m -> n -> a
  for (const auto& [idx, a] : pump) {
    if (a != Complex{}) by_m[idx.m()][idx.n()] = a;
  }
  const auto modes = enumerate_up_to(n_max);
  const std::size_t dim = modes.size();
  std::vector<Complex> zeta(dim * dim);
  parallel_for(dim, [&](std::size_t j1) {
    for (std::size_t j2 = 0; j2 < dim; ++j2) {
      const auto pm = by_m.find(modes[j1].m() + modes[j2].m());
      if (pm == by_m.end()) continue;
      const auto table = coupling_coefficients(modes[j1], modes[j2]);
      Complex sum{};
      for (const auto& [n3, coeff] : table.entries) {
        const auto pn = pm->second.find(n3);
        if (pn != pm->second.end()) sum += pn->second * coeff;
      }
      zeta[j1 * dim + j2] = sum;
    }
  });
  TwoPhotonState state(n_max, std::move(zeta), true);
  if (!state.is_symmetric(1e-12)) throw std::logic_error("spdc_zeta: coefficient matrix is not symmetric");
  return state;
}

ReducedDensityMatrix::ReducedDensityMatrix(int n_max, std::vector<Complex> xi)
    : n_max_(n_max), dim_(mode_count(n_max)), xi_(std::move(xi)) {
  check_state_dim(n_max, xi_.size(), dim_ * dim_);
}

double ReducedDensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t a = 0; a < dim_; ++a) t += at(a, a).real();
  return t;
}

ReducedDensityMatrix reduce(const TwoPhotonState& state) {
  if (!state.normalized()) throw InvalidArgument("reduce: state must be normalized");
  const std::size_t dim = state.dim();
  std::vector<char> nonzero_row(dim, 0);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t c = 0; c < dim && !nonzero_row[a]; ++c) nonzero_row[a] = state.at(a, c) != Complex{};
  }
  std::vector<Complex> xi(dim * dim);
  for (std::size_t a = 0; a < dim; ++a) {
    if (!nonzero_row[a]) continue;
    for (std::size_t b = a; b < dim; ++b) {
      if (!nonzero_row[b]) continue;
      Complex sum{};
      for (std::size_t c = 0; c < dim; ++c) sum += state.at(a, c) * std::conj(state.at(b, c));
      xi[a * dim + b] = sum;
      xi[b * dim + a] = std::conj(sum);
    }
    xi[a * dim + a] = Complex(xi[a * dim + a].real(), 0.0);
  }
  ReducedDensityMatrix rho(state.n_max(), std::move(xi));

  for (std::size_t a = 0; a < dim; ++a) {
    if (rho.at(a, a).real() < -1e-12) throw std::logic_error("reduce: negative diagonal entry");
    for (std::size_t b = a + 1; b < dim; ++b) {
      if (std::abs(rho.at(a, b) - std::conj(rho.at(b, a))) > 1e-12) throw std::logic_error("reduce: not Hermitian");
    }
  }
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw std::logic_error("reduce: trace differs from one");
  return rho;
}

double purity(const ReducedDensityMatrix& rho) {
  double s = 0.0;
  for (const auto& v : rho.matrix()) s += std::norm(v);
  return s;
}

SchmidtSpectrum schmidt_spectrum(const TwoPhotonState& state, const JacobiOptions& opts) {
  const auto rho = reduce(state);
  const std::size_t dim = rho.dim();

  std::vector<std::size_t> parent(dim);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a + 1; b < dim; ++b) {
      if (rho.at(a, b) != Complex{}) parent[find(a)] = find(b);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t a = 0; a < dim; ++a) blocks[find(a)].push_back(a);

  SchmidtSpectrum out;
  for (const auto& [root, members] : blocks) {
    if (members.size() == 1) {
      out.coefficients.push_back(rho.at(members[0], members[0]).real());
      continue;
    }
    const std::size_t s = members.size();
    std::vector<Complex> sub(s * s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) sub[i * s + j] = rho.at(members[i], members[j]);
    }
    const auto eig = hermitian_eigenvalues(sub, s, opts);
    out.coefficients.insert(out.coefficients.end(), eig.begin(), eig.end());
  }
  std::sort(out.coefficients.begin(), out.coefficients.end(), std::greater<>());
  double sum_sq = 0.0;
  for (double l : out.coefficients) sum_sq += l * l;
  out.schmidt_number = 1.0 / sum_sq;
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Entangled: return "entangled";
    case Verdict::Product: return "product";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<CsbWitness> csb_defects(const ReducedDensityMatrix& rho) {
  std::vector<CsbWitness> out;
  const std::size_t dim = rho.dim();
  out.reserve(dim * (dim - 1) / 2);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a + 1; b < dim; ++b) {
      out.push_back({a, b, std::norm(rho.at(a, b)) - rho.at(a, a).real() * rho.at(b, b).real()});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CsbWitness& l, const CsbWitness& r) { return l.defect < r.defect; });
  return out;
}

EntanglementReport entanglement_verdict(const TwoPhotonState& state, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("entanglement_verdict: epsilon must be positive");
  const auto rho = reduce(state);
  EntanglementReport report;
  report.n_max = state.n_max();
  report.raw_norm = state.raw_norm();
  report.epsilon = epsilon;
  report.purity = purity(rho);
  report.spectrum = schmidt_spectrum(state);
  auto defects = csb_defects(rho);
  const bool all_above = defects.empty() || defects.front().defect > -epsilon;
  if (report.purity < 1.0 - epsilon) {
    report.verdict = Verdict::Entangled;
  } else if (all_above) {
    report.verdict = Verdict::Product;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  if (defects.size() > 10) defects.resize(10);
  report.witnesses = std::move(defects);
  return report;
}

double g2_fraunhofer(const TwoPhotonState& state, Vec2 r1, Vec2 r2) {
  const auto b1 = image_basis(state.n_max(), r1);
  const auto b2 = image_basis(state.n_max(), r2);
  Complex amp{};
  for (std::size_t j1 = 0; j1 < state.dim(); ++j1) {
    Complex row{};
    for (std::size_t j2 = 0; j2 < state.dim(); ++j2) row += state.at(j1, j2) * b2[j2];
    amp += b1[j1] * row;
  }
  return 4.0 * std::norm(amp);
}

}  // namespace zq
