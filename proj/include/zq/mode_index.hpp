#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace zq {

/// Largest radial order the library evaluates.
inline constexpr int kMaxRadialOrder = 50;

/// Zernike quantum numbers (n, m) with |m| <= n and n - |m| even.
///
/// Instances can only be obtained through validate() or the enumeration
/// helpers, so holding a ModeIndex means the invariants hold.
class ModeIndex {
 public:
  /// Throws InvalidMode when (n, m) does not name a Zernike mode.
  static ModeIndex validate(int n, int m);

  /// Non-throwing check.
  static bool is_valid(int n, int m) noexcept;

  /// OSA/ANSI single index j = (n(n+2) + m) / 2.
  static ModeIndex from_single_index(std::size_t j);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int abs_m() const noexcept { return m_ < 0 ? -m_ : m_; }

  std::size_t single_index() const noexcept {
    return static_cast<std::size_t>((n_ * (n_ + 2) + m_) / 2);
  }

  ModeIndex conjugate() const noexcept { return ModeIndex(n_, -m_); }

  std::string to_string() const;

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
  friend std::strong_ordering operator<=>(const ModeIndex& a, const ModeIndex& b) noexcept {
    return a.single_index() <=> b.single_index();
  }

 private:
  constexpr ModeIndex(int n, int m) noexcept : n_(n), m_(m) {}

  int n_;
  int m_;
};

/// Number of modes with radial order <= n_max: (n_max+1)(n_max+2)/2.
constexpr std::size_t mode_count(int n_max) noexcept {
  return n_max < 0 ? 0 : static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 2) / 2;
}

/// All modes with n <= n_max in single-index order.
std::vector<ModeIndex> enumerate_up_to(int n_max);

inline std::size_t to_single_index(const ModeIndex& idx) noexcept { return idx.single_index(); }
inline ModeIndex from_single_index(std::size_t j) { return ModeIndex::from_single_index(j); }

}  // namespace zq

template <>
struct std::hash<zq::ModeIndex> {
  std::size_t operator()(const zq::ModeIndex& idx) const noexcept { return idx.single_index(); }
};
