#include "zq/special_functions.hpp"

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "zq/error.hpp"

namespace zq {
namespace {

constexpr double kHankelThreshold = 2000.0;
constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleFactor = 1e-250;

void check_bessel_args(int order, double x, const char* what) {
  if (order < 0 || order > kMaxBesselOrder) {
    throw DomainError(std::string(what) + ": order " + std::to_string(order) + " outside [0, 200]");
  }
  if (!std::isfinite(x) || std::abs(x) > kMaxBesselArgument) {
    throw DomainError(std::string(what) + ": argument outside [-1e5, 1e5]");
  }
}

// Ascending series, used only where successive terms shrink by at least 2x.
double bessel_series(int order, double x) {
  const double half = 0.5 * x;
  const double q = half * half;
  double term = 1.0;
  for (int k = 1; k <= order; ++k) term *= half / k;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * (k + order));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// J_0 and J_1 by the Hankel asymptotic expansion, valid for x >= 2000.
std::array<double, 2> bessel_hankel01(double x) {
  std::array<double, 2> out{};
  const double c = std::cos(x);
  const double s = std::sin(x);
  for (int nu = 0; nu < 2; ++nu) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double qsum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 30; ++k) {
      const double odd = 2.0 * k - 1.0;
      term *= (mu - odd * odd) / (k * 8.0 * x);
      if (std::abs(term) < 1e-18) break;
      switch (k % 4) {
        case 1: qsum += term; break;
        case 2: p -= term; break;
        case 3: qsum -= term; break;
        default: p += term; break;
      }
    }
    // chi = x - pi/4 (nu = 0) or x - 3pi/4 (nu = 1), expanded to avoid
    // subtracting a rounded multiple of pi from a large argument.
    double cos_chi, sin_chi;
    if (nu == 0) {
      cos_chi = (c + s) * std::numbers::sqrt2 * 0.5;
      sin_chi = (s - c) * std::numbers::sqrt2 * 0.5;
    } else {
      cos_chi = (s - c) * std::numbers::sqrt2 * 0.5;
      sin_chi = -(c + s) * std::numbers::sqrt2 * 0.5;
    }
    out[nu] = std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - qsum * sin_chi);
  }
  return out;
}

int miller_start(int max_order, double x) {
  const double top = std::max(static_cast<double>(max_order), x);
  int start = static_cast<int>(top + 30.0 + 10.0 * std::cbrt(top));
  return start + (start % 2);
}

// J_0..J_max_order for x > 0.
std::vector<double> bessel_positive(int max_order, double x) {
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x * x <= 2.0) {
    for (int k = 0; k <= max_order; ++k) out[k] = bessel_series(k, x);
    return out;
  }
  if (x >= kHankelThreshold) {
    const auto j01 = bessel_hankel01(x);
    out[0] = j01[0];
    if (max_order >= 1) out[1] = j01[1];
    for (int k = 1; k < max_order; ++k) out[k + 1] = (2.0 * k / x) * out[k] - out[k - 1];
    return out;
  }
  const int start = miller_start(max_order, x);
  double next = 0.0;
  double cur = 1e-30;
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = (2.0 * k / x) * cur - next;
    next = cur;
    cur = prev;
    // cur now holds f_{k-1}, next holds f_k
    if (k <= max_order) out[k] = next;
    if (k % 2 == 0) norm += 2.0 * next;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescaleFactor;
      next *= kRescaleFactor;
      norm *= kRescaleFactor;
      for (int i = k; i <= max_order; ++i) out[i] *= kRescaleFactor;
    }
  }
  out[0] = cur;
  norm += cur;
  for (auto& v : out) v /= norm;
  return out;
}

std::vector<double> spherical_positive(int max_l, double x) {
  std::vector<double> out(static_cast<std::size_t>(max_l) + 1, 0.0);
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j0 = s / x;
  if (x > max_l) {
    out[0] = j0;
    if (max_l >= 1) out[1] = (s / x - c) / x;
    for (int l = 1; l < max_l; ++l) out[l + 1] = ((2.0 * l + 1.0) / x) * out[l] - out[l - 1];
    return out;
  }
  const int start = miller_start(max_l, x);
  double next = 0.0;
  double cur = 1e-30;
  double f1 = 0.0;
  for (int l = start; l >= 1; --l) {
    const double prev = ((2.0 * l + 1.0) / x) * cur - next;
    next = cur;
    cur = prev;
    if (l <= max_l) out[l] = next;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescaleFactor;
      next *= kRescaleFactor;
      for (int i = l; i <= max_l; ++i) out[i] *= kRescaleFactor;
    }
    if (l == 1) f1 = next;
  }
  out[0] = cur;
  // Normalize against whichever closed form is safely away from a zero.
  double scale;
  if (x < 1.0 || std::abs(j0) >= 0.1 / x) {
    scale = j0 / cur;
  } else {
    scale = ((s / x - c) / x) / f1;
  }
  for (auto& v : out) v *= scale;
  return out;
}

const std::array<double, kLogFactorialTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kLogFactorialTableSize> t{};
    for (int n = 0; n < kLogFactorialTableSize; ++n) t[n] = std::lgamma(n + 1.0);
    return t;
  }();
  return table;
}

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace

double bessel_j(int order, double x) {
  check_bessel_args(order, x, "bessel_j");
  return bessel_j_sequence(order, x)[order];
}

std::vector<double> bessel_j_sequence(int max_order, double x) {
  check_bessel_args(max_order, x, "bessel_j_sequence");
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  auto out = bessel_positive(max_order, std::abs(x));
  if (x < 0.0) {
    for (int k = 1; k <= max_order; k += 2) out[k] = -out[k];
  }
  return out;
}

double bessel_j_over_x(int order, double x) {
  if (order < 1) throw DomainError("bessel_j_over_x: order must be >= 1");
  check_bessel_args(order, x, "bessel_j_over_x");
  if (std::abs(x) < 1e-6) {
    // J_n(x)/x = (x/2)^(n-1) / (2 n!) * (1 - (x/2)^2/(n+1) + ...)
    const double half = 0.5 * x;
    double lead = 0.5;
    for (int k = 1; k <= order; ++k) lead /= k;
    for (int k = 1; k < order; ++k) lead *= half;
    return lead * (1.0 - half * half / (order + 1.0));
  }
  return bessel_j(order, x) / x;
}

double spherical_bessel_j(int l, double x) {
  return spherical_bessel_j_sequence(l, x)[l];
}

std::vector<double> spherical_bessel_j_sequence(int max_l, double x) {
  if (max_l < 0 || max_l > kMaxBesselOrder) {
    throw DomainError("spherical_bessel_j: order " + std::to_string(max_l) + " outside [0, 200]");
  }
  if (!std::isfinite(x) || std::abs(x) > kMaxBesselArgument) {
    throw DomainError("spherical_bessel_j: argument outside [-1e5, 1e5]");
  }
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(max_l) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  auto out = spherical_positive(max_l, std::abs(x));
  if (x < 0.0) {
    for (int l = 1; l <= max_l; l += 2) out[l] = -out[l];
  }
  return out;
}

double log_factorial(int n) {
  if (n < 0 || n >= kLogFactorialTableSize) {
    throw DomainError("log_factorial: argument " + std::to_string(n) + " outside table");
  }
  return log_factorial_table()[n];
}

void AngularMomentumTriple::validate() const {
  const std::array<int, 3> js{two_j1, two_j2, two_j3};
  const std::array<int, 3> ms{two_m1, two_m2, two_m3};
  for (int r = 0; r < 3; ++r) {
    if (js[r] < 0 || std::abs(ms[r]) > js[r] || (js[r] - ms[r]) % 2 != 0) {
      throw InvalidTriple("malformed angular momentum pair (2j=" + std::to_string(js[r]) +
                          ", 2m=" + std::to_string(ms[r]) + ")");
    }
  }
  if ((two_j1 + two_j2 + two_j3) % 2 != 0) {
    throw InvalidTriple("j1 + j2 + j3 must be an integer");
  }
}

double clebsch_gordan(const AngularMomentumTriple& t) {
  t.validate();
  if (t.two_m1 + t.two_m2 != t.two_m3) return 0.0;
  if (t.two_j3 < std::abs(t.two_j1 - t.two_j2) || t.two_j3 > t.two_j1 + t.two_j2) return 0.0;

  // All of these are integers given the validated parities.
  const int a = (t.two_j1 + t.two_j2 - t.two_j3) / 2;
  const int b = (t.two_j1 - t.two_j2 + t.two_j3) / 2;
  const int c = (-t.two_j1 + t.two_j2 + t.two_j3) / 2;
  const int d = (t.two_j1 - t.two_m1) / 2;
  const int e = (t.two_j2 + t.two_m2) / 2;
  const int big_j = (t.two_j1 + t.two_j2 + t.two_j3) / 2;
  if (big_j + 1 >= kLogFactorialTableSize) {
    throw DomainError("clebsch_gordan: angular momenta exceed the factorial table");
  }

  const int k_lo = std::max({0, d - b, e - c});
  const int k_hi = std::min({a, d, e});
  BigInt sum = 0;
  for (int k = k_lo; k <= k_hi; ++k) {
    BigInt term = binomial(a, k) * binomial(b, d - k) * binomial(c, e - k);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  if (sum == 0) return 0.0;

  const double sign = sum < 0 ? -1.0 : 1.0;
  const double log_sum = std::log(std::abs(sum.convert_to<double>()));
  const auto lf = [](int n) { return log_factorial(n); };
  const double log_pref =
      0.5 * (std::log(t.two_j3 + 1.0) - lf(big_j + 1) + lf((t.two_j1 + t.two_m1) / 2) +
             lf((t.two_j1 - t.two_m1) / 2) + lf((t.two_j2 + t.two_m2) / 2) + lf((t.two_j2 - t.two_m2) / 2) +
             lf((t.two_j3 + t.two_m3) / 2) + lf((t.two_j3 - t.two_m3) / 2) - lf(a) - lf(b) - lf(c));
  return sign * std::exp(log_pref + log_sum);
}

}  // namespace zq
