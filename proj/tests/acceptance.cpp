// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "fresnel_oracle.hpp"
#include "oracles.hpp"
#include "spdc_oracle.hpp"
#include "zq/coupling.hpp"
#include "zq/propagation.hpp"
#include "zq/spdc.hpp"
#include "zq/verify.hpp"
#include "zq/zernike.hpp"

#ifndef ZQTOOL_PATH
#error "ZQTOOL_PATH must point at the zqtool binary"
#endif

using zq::Complex;
using zq::ModeIndex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome gram() {
  const double dev = zq::pupil_gram_deviation(10);
  return {dev < 1e-12 && zq::mode_count(10) == 66, fmt("66 modes, max |G - pi I| = %.2e", dev)};
}

Outcome counts() {
  for (int n = 0; n <= 50; ++n) {
    const auto modes = zq::enumerate_up_to(n);
    const std::size_t want = static_cast<std::size_t>((n + 1) * (n + 2) / 2);
    if (modes.size() != want || zq::mode_count(n) != want) return {false, fmt("n=%d: %zu modes", n, modes.size())};
  }
  return {true, "n = 0..50 match (n+1)(n+2)/2"};
}

double projected(const ModeIndex& a, const ModeIndex& b, int n3) {
  const int m3 = a.m() + b.m();
  const Complex v = oracle::disc_integral(
      [&](double r, double t) {
        return oracle::zernike(a.n(), a.m(), r, t) * oracle::zernike(b.n(), b.m(), r, t) *
               std::conj(oracle::zernike(n3, m3, r, t));
      },
      1, 64);
  return v.real() / oracle::kPi;
}

Outcome linearization() {
  const auto modes = zq::enumerate_up_to(8);
  oracle::Gen gen(3);
  double worst_table = 0.0, worst_point = 0.0;
  std::size_t pairs = 0;
  for (const auto& a : modes) {
    for (const auto& b : modes) {
      ++pairs;
      const auto t = zq::coupling_coefficients(a, b);
      const int m3 = t.m3();
      for (int n3 = std::abs(m3); n3 <= a.n() + b.n(); n3 += 2) {
        const auto it = t.entries.find(n3);
        const double got = it == t.entries.end() ? 0.0 : it->second;
        worst_table = std::max(worst_table, std::abs(got - projected(a, b, n3)));
      }
      for (int s = 0; s < 100; ++s) {
        const auto [r, th] = gen.disc_point();
        Complex rhs{};
        for (const auto& [n3, v] : t.entries) rhs += v * zq::zernike(ModeIndex::validate(n3, m3), r, th);
        const Complex lhs = oracle::zernike(a.n(), a.m(), r, th) * oracle::zernike(b.n(), b.m(), r, th);
        worst_point = std::max(worst_point, std::abs(lhs - rhs));
      }
    }
  }
  return {pairs == 45 * 45 && worst_table < 1e-10 && worst_point < 1e-10,
          fmt("%zu pairs, table dev %.2e, pointwise dev %.2e", pairs, worst_table, worst_point)};
}

Outcome selection_rules() {
  const auto modes = zq::enumerate_up_to(8);
  std::size_t violations = 0, too_many = 0;
  for (const auto& a : modes) {
    for (const auto& b : modes) {
      const auto t = zq::coupling_coefficients(a, b);
      const int m3 = t.m3();
      if (t.size() > static_cast<std::size_t>(std::min(a.n(), b.n()) + 1)) ++too_many;
      for (const auto& [n3, v] : t.entries) {
        const bool inside = n3 >= std::abs(m3) && (n3 - std::abs(m3)) % 2 == 0 && n3 >= std::abs(a.n() - b.n()) &&
                            n3 <= a.n() + b.n();
        if (!inside || v == 0.0) ++violations;
      }
      for (int n3 = 0; n3 <= 20; ++n3) {
        const bool window = n3 >= std::abs(m3) && (n3 - std::abs(m3)) % 2 == 0 && n3 >= std::abs(a.n() - b.n()) &&
                            n3 <= a.n() + b.n();
        if (!window && n3 >= std::abs(m3) && (n3 - std::abs(m3)) % 2 == 0 &&
            zq::linearization_coefficient(a, b, n3) != 0.0) {
          ++violations;
        }
      }
    }
  }
  return {violations == 0 && too_many == 0,
          fmt("%zu nonzero entries outside windows, %zu tables over min(n1,n2)+1", violations, too_many)};
}

Outcome fourier() {
  oracle::Gen gen(5);
  double worst = 0.0;
  for (const auto& idx : zq::enumerate_up_to(6)) {
    for (int s = 0; s < 20; ++s) {
      const double q = gen.uniform(0.0, 3.0);
      const double phi = gen.uniform(-oracle::kPi, oracle::kPi);
      const Complex direct = oracle::disc_integral(
          [&](double r, double t) {
            return oracle::zernike(idx.n(), idx.m(), r, t) *
                   std::polar(1.0, 2.0 * oracle::kPi * r * q * std::cos(t - phi));
          },
          4, 96);
      worst = std::max(worst, std::abs(zq::zernike_ft(idx, q, phi) - direct));
    }
  }
  return {worst < 1e-8, fmt("28 modes x 20 points, max dev %.2e", worst)};
}

Outcome fresnel() {
  // (u, k/4z) from the near field to the far field.
  const std::vector<std::pair<double, double>> samples = {
      {0.0, 1e-3}, {0.35, 0.05}, {1.1, 0.4}, {0.7, 1.5}, {2.3, 3.0},
      {0.2, 7.0},  {1.6, 12.0},  {3.1, 2.0}, {4.2, 25.0}, {0.9, 40.0}};
  double worst = 0.0, worst_limit = 0.0, worst_phase = 0.0;
  int limit_points = 0, skipped = 0;
  for (const auto& idx : zq::enumerate_up_to(4)) {
    for (const auto& [u, beta] : samples) {
      const zq::FresnelParams p{1.0, 4.0 * beta};
      const Complex want = oracle::fresnel_v(idx.n(), idx.m(), u, p.z, p.k);
      worst = std::max(worst, std::abs(zq::fresnel_v(idx, u, p) - want) / std::abs(want));
    }
    const double peak = oracle::far_field_peak(idx.n());
    for (double u = 0.05; u < 2.5; u += 0.1) {
      const Complex far = oracle::far_field(idx.n(), u);
      if (std::abs(far) < 0.1 * peak) {
        ++skipped;
        continue;
      }
      ++limit_points;
      const Complex v4 = zq::fresnel_v(idx, u, zq::FresnelParams{1.0, 4e-4});
      const Complex v7 = zq::fresnel_v(idx, u, zq::FresnelParams{1.0, 4e-7});
      worst_limit = std::max(worst_limit, std::abs(std::abs(v4) - std::abs(far)) / std::abs(far));
      worst_limit = std::max(worst_limit, std::abs(v7 - far) / std::abs(far));
      worst_phase = std::max(worst_phase, std::abs(v4 - far) / std::abs(far));
    }
  }
  return {worst < 1e-8 && worst_limit < 1e-6,
          fmt("15 modes x 10 samples, max rel dev %.2e; far-field limit over %d points (%d near nulls skipped): "
              "|V| at k/4z=1e-4 and V at 1e-7 rel dev %.2e, V at 1e-4 rel dev %.2e",
              worst, limit_points, skipped, worst_limit, worst_phase)};
}

const std::vector<std::pair<int, int>> kPumps = {{0, 0}, {1, 1}, {2, 0}, {2, 2}};

Outcome spdc() {
  double worst = 0.0;
  for (const auto& [n, m] : kPumps) {
    const auto state = zq::spdc_zeta(zq::ZernikeExpansion::single(ModeIndex::validate(n, m)), 4);
    auto want = oracle::thin_crystal_zeta(n, m, 4);
    oracle::normalize(want);
    for (std::size_t i = 0; i < want.size(); ++i) worst = std::max(worst, std::abs(state.matrix()[i] - want[i]));
  }
  return {worst < 1e-9, fmt("4 pumps at n_max 4, max entry dev %.2e", worst)};
}

struct StateCase {
  int pump_n, pump_m, n_max;
};

std::vector<StateCase> entangled_cases() {
  std::vector<StateCase> out;
  for (const auto& [n, m] : kPumps) {
    for (int n_max = 2; n_max <= 5; ++n_max) out.push_back({n, m, n_max});
  }
  return out;
}

zq::TwoPhotonState make_state(const StateCase& c) {
  return zq::spdc_zeta(zq::ZernikeExpansion::single(ModeIndex::validate(c.pump_n, c.pump_m)), c.n_max);
}

Outcome entanglement() {
  double herm = 0.0, trace = 0.0, min_eig = 0.0, max_purity = 0.0, csb = 0.0;
  std::size_t parity_leaks = 0, wrong_verdicts = 0;
  for (const auto& c : entangled_cases()) {
    const auto state = make_state(c);
    const auto xi = zq::reduce(state);
    const auto modes = zq::enumerate_up_to(c.n_max);
    const std::size_t d = xi.dim();
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        herm = std::max(herm, std::abs(xi.at(a, b) - std::conj(xi.at(b, a))));
        csb = std::max(csb, std::norm(xi.at(a, b)) - xi.at(a, a).real() * xi.at(b, b).real());
        if ((modes[a].m() - modes[b].m()) % 2 != 0 && xi.at(a, b) != Complex{}) ++parity_leaks;
      }
    }
    trace = std::max(trace, std::abs(xi.trace() - 1.0));
    const auto spectrum = zq::schmidt_spectrum(state);
    for (double l : spectrum.coefficients) min_eig = std::min(min_eig, l);
    const auto report = zq::entanglement_verdict(state, 1e-6);
    max_purity = std::max(max_purity, report.purity);
    if (report.verdict != zq::Verdict::Entangled) ++wrong_verdicts;
  }
  const auto control = zq::entanglement_verdict(make_state({0, 0, 0}), 1e-6);
  const bool control_ok = std::abs(control.purity - 1.0) < 1e-12 && control.verdict == zq::Verdict::Product;
  const bool ok = herm < 1e-12 && trace < 1e-10 && min_eig >= -1e-10 && max_purity < 1.0 - 1e-6 &&
                  wrong_verdicts == 0 && csb <= 1e-10 && parity_leaks == 0 && control_ok;
  return {ok, fmt("%zu states: herm %.1e, trace %.1e, min eig %.1e, max purity %.4f, csb excess %.1e, "
                  "%zu parity leaks, control purity %.15g %s",
                  entangled_cases().size(), herm, trace, min_eig, max_purity, csb, parity_leaks, control.purity,
                  zq::to_string(control.verdict).c_str())};
}

Outcome cross_validation() {
  double purity_dev = 0.0, svd_dev = 0.0;
  for (const auto& c : entangled_cases()) {
    const auto state = make_state(c);
    const auto spectrum = zq::schmidt_spectrum(state);
    double sum_sq = 0.0;
    for (double l : spectrum.coefficients) sum_sq += l * l;
    purity_dev = std::max(purity_dev, std::abs(zq::purity(zq::reduce(state)) - sum_sq));
    const auto sv = oracle::squared_singular_values(state.matrix(), state.dim(), state.dim());
    if (sv.size() != spectrum.coefficients.size()) return {false, "spectrum length mismatch"};
    for (std::size_t i = 0; i < sv.size(); ++i) svd_dev = std::max(svd_dev, std::abs(sv[i] - spectrum.coefficients[i]));
  }
  return {purity_dev < 1e-10 && svd_dev < 1e-9,
          fmt("purity vs sum lambda^2 %.2e, spectrum vs SVD %.2e", purity_dev, svd_dev)};
}

Outcome cli_determinism() {
  cli::Workdir dir;
  const std::string tool = ZQTOOL_PATH;
  const std::string args = "spdc --pump 0,0 --nmax 4 --out " + dir.file("run");
  const std::vector<std::string> files = {"run.state.json", "run.report.json", "run.config.json"};
  auto snapshot = [&] {
    std::string all;
    for (const auto& f : files) all += cli::read(dir.file(f)) + '\0';
    return all;
  };
  const auto first = cli::run(tool, dir, args);
  const std::string a = snapshot();
  const auto second = cli::run(tool, dir, args);
  const std::string b = snapshot();
  const auto verify = cli::run(tool, dir, "verify --nmax 8");
  const bool ok = first.code == 0 && second.code == 0 && a == b && first.out == second.out && verify.code == 0;
  return {ok, fmt("spdc exits %d/%d, outputs %s, verify exit %d", first.code, second.code,
                  a == b ? "byte-identical" : "differ", verify.code)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "pupil orthonormality", 5, gram},
      {2, "mode count", 1, counts},
      {3, "linearization vs projection", 60, linearization},
      {4, "selection rules", 60, selection_rules},
      {5, "Fourier transform", 30, fourier},
      {6, "Fresnel series", 120, fresnel},
      {7, "SPDC coefficients", 60, spdc},
      {8, "entanglement", 30, entanglement},
      {9, "cross-validation", 30, cross_validation},
      {10, "CLI determinism", 30, cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs < c.limit_seconds;
    if (!pass) ++failures;
    std::printf("criterion %2d %-28s %s  %s  [%.2f s, limit %.0f s]\n", c.id, c.name, pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.limit_seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
