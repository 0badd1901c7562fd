#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "zq/mode_index.hpp"
#include "zq/quadrature.hpp"

namespace zq {

using Complex = std::complex<double>;

/// Radial polynomial R_n^{|m|}(rho) on [0, 1].
///
/// Evaluated as rho^|m| P_k^{(0,|m|)}(2 rho^2 - 1), k = (n - |m|)/2, with the
/// Jacobi three-term recurrence; stable through n = 50 where the explicit
/// factorial sum has long lost all digits.
double radial(int n, int m_abs, double rho);

/// Z_n^m(rho, theta) = sqrt(n+1) R_n^{|m|}(rho) e^{i m theta}.
Complex zernike(const ModeIndex& idx, double rho, double theta);

/// Sparse set of complex Zernike coefficients a_{nm} with a fixed order cutoff.
class ZernikeExpansion {
 public:
  using Map = std::map<ModeIndex, Complex>;

  ZernikeExpansion() = default;
  explicit ZernikeExpansion(int n_max);

  int n_max() const noexcept { return n_max_; }

  /// Throws InvalidArgument when idx.n() > n_max().
  void set(const ModeIndex& idx, Complex value);
  void add(const ModeIndex& idx, Complex value);
  Complex get(const ModeIndex& idx) const;
  bool contains(const ModeIndex& idx) const { return coefficients_.contains(idx); }

  const Map& coefficients() const noexcept { return coefficients_; }
  std::size_t size() const noexcept { return coefficients_.size(); }
  bool empty() const noexcept { return coefficients_.empty(); }

  Map::const_iterator begin() const { return coefficients_.begin(); }
  Map::const_iterator end() const { return coefficients_.end(); }

  /// Drops coefficients with |a| <= threshold.
  ZernikeExpansion pruned(double threshold) const;

  /// Single-mode expansion with unit coefficient.
  static ZernikeExpansion single(const ModeIndex& idx, Complex value = 1.0);

 private:
  int n_max_ = 0;
  Map coefficients_;
};

using PupilFunction = std::function<Complex(double rho, double theta)>;

/// Coefficients a_{nm} = (1/pi) sum_q w_q P(q) conj(Z_n^m(q)) for all n <= n_max.
/// Throws CapacityError when quad.degree_capacity < n_max.
ZernikeExpansion fit(const PupilFunction& pupil, int n_max, const DiscQuadrature& quad);

/// sum a_{nm} Z_n^m(rho, theta); zero for an empty expansion.
Complex reconstruct(const ZernikeExpansion& expansion, double rho, double theta);

/// Multiplies every a_{nm} by e^{i m alpha}. The result at theta equals the
/// original at theta + alpha, i.e. the pattern seen from axes rotated by alpha.
ZernikeExpansion rotate_expansion(const ZernikeExpansion& expansion, double alpha);

/// <Z_a, Z_b> = integral conj(Z_a) Z_b over the quadrature for all modes
/// n <= n_max, row-major in single-index order. Equals pi * I exactly.
std::vector<Complex> pupil_gram_matrix(int n_max, const DiscQuadrature& quad);

}  // namespace zq
