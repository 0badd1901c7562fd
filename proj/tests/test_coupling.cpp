#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "oracles.hpp"
#include "zq/coupling.hpp"
#include "zq/parallel.hpp"
#include "zq/quadrature.hpp"

using zq::Complex;
using zq::ModeIndex;

namespace {

ModeIndex mode(int n, int m) { return ModeIndex::validate(n, m); }

// (1/pi) integral Z_a Z_b conj(Z_{n3}^{m3}) over the disc, all with the oracle polynomials.
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

}  // namespace

TEST(Coupling, Examples) {
  const auto t = zq::coupling_coefficients(mode(1, 1), mode(1, -1));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_NEAR(t.entries.at(0), 1.0, 1e-14);
  EXPECT_NEAR(t.entries.at(2), 0.5773502692, 1e-10);
  const auto sq = zq::coupling_coefficients(mode(1, 1), mode(1, 1));
  ASSERT_EQ(sq.size(), 1u);
  EXPECT_NEAR(sq.entries.at(2), 1.1547005384, 1e-10);
  const auto id = zq::coupling_coefficients(mode(5, 3), mode(0, 0));
  ASSERT_EQ(id.size(), 1u);
  EXPECT_NEAR(id.entries.at(5), 1.0, 1e-14);
  EXPECT_EQ(id.m3(), 3);
}

TEST(Coupling, PrintedPrefactorResiduals) {
  // The two prefactor orientations differ only by (n1+1)(n2+1)/(n3+1); the
  // projection oracle singles out one of them.
  const auto a = mode(1, 1);
  const auto b = mode(1, -1);
  const double oracle_value = projected(a, b, 2);
  const double ours = zq::linearization_coefficient(a, b, 2);
  const double inverse = ours * (3.0 / (2.0 * 2.0));
  const double ours_residual = std::abs(ours - oracle_value);
  const double inverse_residual = std::abs(inverse - oracle_value);
  std::printf("prefactor residuals: sqrt((n1+1)(n2+1)/(n3+1)) %.3e, sqrt((n3+1)/((n1+1)(n2+1))) %.3e\n",
              ours_residual, inverse_residual);
  EXPECT_LT(ours_residual, 1e-12);
  EXPECT_GT(inverse_residual, 0.1);
}

TEST(CouplingProperty, MatchesProjectionOracle) {
  for (const auto& a : zq::enumerate_up_to(6)) {
    for (const auto& b : zq::enumerate_up_to(6)) {
      const auto t = zq::coupling_coefficients(a, b);
      const int m3 = a.m() + b.m();
      for (int n3 = std::abs(m3); n3 <= a.n() + b.n(); n3 += 2) {
        const double want = projected(a, b, n3);
        const auto it = t.entries.find(n3);
        const double got = it == t.entries.end() ? 0.0 : it->second;
        ASSERT_NEAR(got, want, 1e-10) << a.to_string() << " x " << b.to_string() << " -> " << n3;
      }
    }
  }
}

TEST(CouplingProperty, SelectionRulesAreExact) {
  for (const auto& a : zq::enumerate_up_to(8)) {
    for (const auto& b : zq::enumerate_up_to(8)) {
      const auto t = zq::coupling_coefficients(a, b);
      EXPECT_LE(t.size(), static_cast<std::size_t>(std::min(a.n(), b.n()) + 1));
      for (const auto& [n3, value] : t.entries) {
        EXPECT_EQ((n3 - t.m3()) % 2, 0);
        EXPECT_GE(n3, std::max(std::abs(t.m3()), std::abs(a.n() - b.n())));
        EXPECT_LE(n3, a.n() + b.n());
        EXPECT_NE(value, 0.0);
      }
      for (int n3 = 0; n3 <= 20; ++n3) {
        const bool admissible = (n3 - t.m3()) % 2 == 0 && n3 >= std::max(std::abs(t.m3()), std::abs(a.n() - b.n())) &&
                                n3 <= a.n() + b.n();
        if (!admissible) {
          EXPECT_EQ(t.entries.count(n3), 0u);
          EXPECT_EQ(zq::linearization_coefficient(a, b, n3), 0.0);
        }
      }
    }
  }
}

TEST(CouplingProperty, SymmetryAndConjugation) {
  for (const auto& a : zq::enumerate_up_to(8)) {
    for (const auto& b : zq::enumerate_up_to(8)) {
      const auto ab = zq::coupling_coefficients(a, b);
      const auto ba = zq::coupling_coefficients(b, a);
      const auto conj = zq::coupling_coefficients(a.conjugate(), b.conjugate());
      ASSERT_EQ(ab.size(), ba.size());
      ASSERT_EQ(ab.size(), conj.size());
      for (const auto& [n3, v] : ab.entries) {
        ASSERT_NEAR(ba.entries.at(n3), v, 1e-12);
        ASSERT_NEAR(conj.entries.at(n3), v, 1e-12);
      }
    }
  }
}

TEST(CouplingProperty, PointwiseProductIdentity) {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [n1, m1] = gen.mode(8);
    const auto [n2, m2] = gen.mode(8);
    const auto t = zq::coupling_coefficients(mode(n1, m1), mode(n2, m2));
    for (int s = 0; s < 20; ++s) {
      const auto [r, th] = gen.disc_point();
      Complex sum{};
      for (const auto& [n3, v] : t.entries) sum += v * oracle::zernike(n3, t.m3(), r, th);
      ASSERT_LE(std::abs(sum - oracle::zernike(n1, m1, r, th) * oracle::zernike(n2, m2, r, th)), 1e-10);
    }
  }
}

TEST(Coupling, CacheIsConsistentUnderConcurrency) {
  const auto modes = zq::enumerate_up_to(7);
  std::vector<zq::CouplingTable> reference;
  for (const auto& a : modes) reference.push_back(zq::compute_coupling_table(a, modes[5]));
  std::vector<std::thread> workers;
  std::atomic<int> mismatches{0};
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (int rep = 0; rep < 20; ++rep) {
        for (std::size_t i = (w + rep) % modes.size(), k = 0; k < modes.size(); ++k, i = (i + 1) % modes.size()) {
          const auto t = zq::coupling_coefficients(modes[i], modes[5]);
          if (t.entries != reference[i].entries) ++mismatches;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  EXPECT_EQ(mismatches.load(), 0);
  EXPECT_LE(zq::coupling_cache_size(), zq::kCouplingCacheCapacity);
  EXPECT_GT(zq::coupling_cache_size(), 0u);
}

TEST(ProductExpansion, Examples) {
  zq::ZernikeExpansion e(4);
  e.set(mode(3, 1), Complex(0.5, -1.0));
  e.set(mode(4, -2), 2.0);
  const auto same = zq::product_expansion(e, zq::ZernikeExpansion::single(mode(0, 0)));
  EXPECT_EQ(same.n_max(), 4);
  for (const auto& [idx, a] : e) EXPECT_LE(std::abs(same.get(idx) - a), 1e-14);

  const auto p = zq::product_expansion(zq::ZernikeExpansion::single(mode(1, 1)), zq::ZernikeExpansion::single(mode(1, -1)));
  EXPECT_EQ(p.n_max(), 2);
  EXPECT_NEAR(std::abs(p.get(mode(0, 0)) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(p.get(mode(2, 0)) - 1.0 / std::sqrt(3.0)), 0.0, 1e-14);
}

TEST(ProductExpansionProperty, MatchesPointwiseProductAndRefit) {
  oracle::Gen gen(43);
  for (int trial = 0; trial < 5; ++trial) {
    zq::ZernikeExpansion e1(3), e2(2);
    for (const auto& idx : zq::enumerate_up_to(3)) e1.set(idx, gen.complex_normal());
    for (const auto& idx : zq::enumerate_up_to(2)) e2.set(idx, gen.complex_normal());
    const auto p = zq::product_expansion(e1, e2);
    EXPECT_EQ(p.n_max(), 5);
    for (int s = 0; s < 200; ++s) {
      const auto [r, t] = gen.disc_point();
      ASSERT_LE(std::abs(zq::reconstruct(p, r, t) - zq::reconstruct(e1, r, t) * zq::reconstruct(e2, r, t)), 1e-10);
    }
    const auto refit = zq::fit([&](double r, double t) { return zq::reconstruct(e1, r, t) * zq::reconstruct(e2, r, t); },
                               5, zq::build_quadrature(10));
    for (const auto& idx : zq::enumerate_up_to(5)) ASSERT_LE(std::abs(refit.get(idx) - p.get(idx)), 1e-10);
  }
}
