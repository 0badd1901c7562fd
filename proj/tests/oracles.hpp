// Independent reference computations for the test suites. Nothing here calls
// into the library's numerics.
#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Big = boost::multiprecision::cpp_bin_float_50;
constexpr double kPi = std::numbers::pi;

inline Big big_factorial(int n) {
  Big f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Direct factorial sum of the radial polynomial in 50-digit arithmetic.
inline double radial_uncached(int n, int m, double rho) {
  m = std::abs(m);
  Big sum = 0;
  const Big r = rho;
  for (int k = 0; k <= (n - m) / 2; ++k) {
    Big term = big_factorial(n - k) / (big_factorial(k) * big_factorial((n + m) / 2 - k) * big_factorial((n - m) / 2 - k));
    term *= boost::multiprecision::pow(r, n - 2 * k);
    sum += (k % 2 ? -term : term);
  }
  return static_cast<double>(sum);
}

// Quadrature rules revisit the same nodes many times.
inline double radial(int n, int m, double rho) {
  thread_local std::map<std::tuple<int, int, double>, double> memo;
  const auto key = std::make_tuple(n, std::abs(m), rho);
  const auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const double v = radial_uncached(n, m, rho);
  if (memo.size() < 500000) memo.emplace(key, v);
  return v;
}

inline Complex zernike(int n, int m, double rho, double theta) {
  return std::sqrt(n + 1.0) * radial(n, m, rho) * std::polar(1.0, m * theta);
}

// Racah's closed form with plain factorials; arguments are doubled.
inline double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj3, int tm3) {
  if (tm1 + tm2 != tm3) return 0.0;
  if (tj3 < std::abs(tj1 - tj2) || tj3 > tj1 + tj2) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  auto f = [](int twice) { return big_factorial(twice / 2); };
  Big pre = Big(tj3 + 1) * f(tj1 + tj2 - tj3) * f(tj1 - tj2 + tj3) * f(-tj1 + tj2 + tj3) / f(tj1 + tj2 + tj3 + 2);
  pre *= f(tj1 + tm1) * f(tj1 - tm1) * f(tj2 + tm2) * f(tj2 - tm2) * f(tj3 + tm3) * f(tj3 - tm3);
  Big sum = 0;
  for (int k = 0; k <= 200; ++k) {
    const int a = (tj1 + tj2 - tj3) / 2 - k;
    const int b = (tj1 - tm1) / 2 - k;
    const int c = (tj2 + tm2) / 2 - k;
    const int d = (tj3 - tj2 + tm1) / 2 + k;
    const int e = (tj3 - tj1 - tm2) / 2 + k;
    if (a < 0 || b < 0 || c < 0) break;
    if (d < 0 || e < 0) continue;
    Big term = 1 / (big_factorial(k) * big_factorial(a) * big_factorial(b) * big_factorial(c) * big_factorial(d) *
                    big_factorial(e));
    sum += (k % 2 ? -term : term);
  }
  return static_cast<double>(boost::multiprecision::sqrt(pre) * sum);
}

// Disc integral of f(rho, theta) rho drho dtheta: Gauss panels in rho,
// trapezoid in theta.
template <class F>
Complex disc_integral(F&& f, int panels = 4, int n_theta = 96) {
  using Rule = boost::math::quadrature::gauss<double, 30>;
  Complex total{};
  const double width = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    auto radial_part = [&](double rho) {
      Complex s{};
      for (int k = 0; k < n_theta; ++k) s += f(rho, 2.0 * kPi * k / n_theta);
      return s * (2.0 * kPi / n_theta) * rho;
    };
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 0.5 * width;
      if (x[i] == 0.0) {
        total += w[i] * h * radial_part(mid);
      } else {
        total += w[i] * h * (radial_part(mid + h * x[i]) + radial_part(mid - h * x[i]));
      }
    }
  }
  return total;
}

// Adaptive Gauss-Kronrod on [a, b] for a complex integrand.
template <class F>
Complex adaptive_integral(F&& f, double a, double b, double tol = 1e-12) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  // A part that is zero up to rounding never meets a relative tolerance;
  // the depth cap keeps that case from bisecting forever.
  const double re = GK::integrate([&](double x) { return f(x).real(); }, a, b, 8, tol);
  const double im = GK::integrate([&](double x) { return f(x).imag(); }, a, b, 8, tol);
  return {re, im};
}

inline Complex i_power(int p) {
  static const Complex t[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return t[((p % 4) + 4) % 4];
}

// Fourier transform of a mode through std::cyl_bessel_j.
inline Complex mode_ft(int n, int m, double q, double phi) {
  const double x = 2.0 * kPi * q;
  const double ratio = x < 1e-8 ? (n == 0 ? 0.5 : 0.0) : std::cyl_bessel_j(n + 1.0, x) / x;
  return 2.0 * kPi * i_power(n) * std::sqrt(n + 1.0) * ratio * std::polar(1.0, m * phi);
}

// Squared singular values of a complex row-major matrix by one-sided
// (Hestenes) Jacobi, descending.
inline std::vector<double> squared_singular_values(std::vector<Complex> a, std::size_t rows, std::size_t cols) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0, beta = 0;
        Complex gamma{};
        for (std::size_t r = 0; r < rows; ++r) {
          alpha += std::norm(a[r * cols + p]);
          beta += std::norm(a[r * cols + q]);
          gamma += std::conj(a[r * cols + p]) * a[r * cols + q];
        }
        const double g = std::abs(gamma);
        if (g <= 1e-15 * std::sqrt(alpha * beta) || g == 0.0) continue;
        rotated = true;
        const Complex phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < rows; ++r) {
          const Complex ap = a[r * cols + p];
          const Complex aq = a[r * cols + q] * std::conj(phase);
          a[r * cols + p] = c * ap - s * aq;
          a[r * cols + q] = s * ap + c * aq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> out(cols);
  for (std::size_t p = 0; p < cols; ++p) {
    for (std::size_t r = 0; r < rows; ++r) out[p] += std::norm(a[r * cols + p]);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Seeded sample generators for property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  // Uniform point on the unit disc.
  std::pair<double, double> disc_point() { return {std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * kPi)}; }
  Complex complex_normal() {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    return {re, g(rng)};
  }
  // Valid (n, m) with n <= n_max.
  std::pair<int, int> mode(int n_max) {
    const int n = integer(0, n_max);
    const int m = -n + 2 * integer(0, n);
    return {n, m};
  }
};

}  // namespace oracle
