#include "zq/mode_index.hpp"

#include <cmath>

#include "zq/error.hpp"

namespace zq {

bool ModeIndex::is_valid(int n, int m) noexcept {
  const int am = m < 0 ? -m : m;
  return n >= 0 && am <= n && (n - am) % 2 == 0;
}

ModeIndex ModeIndex::validate(int n, int m) {
  if (n < 0) {
    throw InvalidMode("invalid mode (" + std::to_string(n) + "," + std::to_string(m) +
                      "): radial order must be non-negative");
  }
  if ((m < 0 ? -m : m) > n) {
    throw InvalidMode("invalid mode (" + std::to_string(n) + "," + std::to_string(m) + "): |m| exceeds n");
  }
  if (!is_valid(n, m)) {
    throw InvalidMode("invalid mode (" + std::to_string(n) + "," + std::to_string(m) +
                      "): parity mismatch, n - |m| must be even");
  }
  return ModeIndex(n, m);
}

ModeIndex ModeIndex::from_single_index(std::size_t j) {
  // n is the largest order with n(n+1)/2 <= j.
  int n = static_cast<int>((std::sqrt(8.0 * static_cast<double>(j) + 1.0) - 1.0) / 2.0);
  while (mode_count(n) <= j) ++n;
  while (n > 0 && mode_count(n - 1) > j) --n;
  const auto m = 2 * static_cast<long long>(j) - static_cast<long long>(n) * (n + 2);
  return ModeIndex(n, static_cast<int>(m));
}

std::string ModeIndex::to_string() const {
  return "(" + std::to_string(n_) + "," + std::to_string(m_) + ")";
}

std::vector<ModeIndex> enumerate_up_to(int n_max) {
  if (n_max < 0) throw InvalidArgument("enumerate_up_to: n_max must be non-negative");
  std::vector<ModeIndex> out;
  out.reserve(mode_count(n_max));
  for (int n = 0; n <= n_max; ++n) {
    for (int m = -n; m <= n; m += 2) out.push_back(ModeIndex::validate(n, m));
  }
  return out;
}

}  // namespace zq
