#pragma once

#include <cstddef>
#include <map>

#include "zq/mode_index.hpp"
#include "zq/zernike.hpp"

namespace zq {

/// Linearization of Z_a Z_b = sum_{n3} A_{n3} Z_{n3}^{m_a + m_b}.
struct CouplingTable {
  ModeIndex a;
  ModeIndex b;
  std::map<int, double> entries;  // n3 -> A; entries that vanish exactly are absent

  int m3() const noexcept { return a.m() + b.m(); }
  std::size_t size() const noexcept { return entries.size(); }
};

/// A_{n1 n2 n3}^{m1 m2 m3} = sqrt((n1+1)(n2+1)/(n3+1)) |<n1/2 m1/2; n2/2 m2/2 | n3/2 m3/2>|^2.
///
/// Zero outside the parity and triangle windows. This prefactor is the one
/// that makes the pointwise product identity hold; the inverse orientation
/// does not.
double linearization_coefficient(const ModeIndex& a, const ModeIndex& b, int n3);

/// Full table for the pair (a, b). Results are memoized in a bounded,
/// thread-safe LRU cache; the first call runs a product-identity self check
/// on a seed set of pairs and throws std::logic_error if it fails.
CouplingTable coupling_coefficients(const ModeIndex& a, const ModeIndex& b);

/// Uncached variant, used by the self check and by tests.
CouplingTable compute_coupling_table(const ModeIndex& a, const ModeIndex& b);

/// Expansion of the pointwise product; n_max is the sum of the inputs'.
ZernikeExpansion product_expansion(const ZernikeExpansion& e1, const ZernikeExpansion& e2);

/// Current cache population and capacity, for diagnostics.
std::size_t coupling_cache_size();
inline constexpr std::size_t kCouplingCacheCapacity = 100000;

}  // namespace zq
