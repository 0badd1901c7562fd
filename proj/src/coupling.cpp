#include "zq/coupling.hpp"

#include <cmath>
#include <cstdint>
#include <list>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "zq/special_functions.hpp"

namespace zq {
namespace {

class CouplingCache {
 public:
  bool lookup(std::uint64_t key, CouplingTable& out) {
    std::lock_guard lock(mutex_);
    const auto it = index_.find(key);
    if (it == index_.end()) return false;
    order_.splice(order_.begin(), order_, it->second);
    out = it->second->second;
    return true;
  }

  void insert(std::uint64_t key, const CouplingTable& table) {
    std::lock_guard lock(mutex_);
    if (index_.contains(key)) return;
    order_.emplace_front(key, table);
    index_.emplace(key, order_.begin());
    if (index_.size() > kCouplingCacheCapacity) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
  }

  std::size_t size() {
    std::lock_guard lock(mutex_);
    return index_.size();
  }

 private:
  using Entry = std::pair<std::uint64_t, CouplingTable>;
  std::mutex mutex_;
  std::list<Entry> order_;
  std::unordered_map<std::uint64_t, std::list<Entry>::iterator> index_;
};

CouplingCache& cache() {
  static CouplingCache instance;
  return instance;
}

std::uint64_t cache_key(const ModeIndex& a, const ModeIndex& b) {
  return (static_cast<std::uint64_t>(a.single_index()) << 32) | static_cast<std::uint64_t>(b.single_index());
}

void run_self_check() {
  const int seeds[][4] = {{1, 1, 1, -1}, {1, 1, 1, 1}, {2, 0, 2, 0}, {3, -1, 2, 2}, {4, 2, 3, -3}};
  const double samples[][2] = {{0.3, 0.4}, {0.75, 2.1}, {0.95, -1.3}};
  for (const auto& s : seeds) {
    const auto a = ModeIndex::validate(s[0], s[1]);
    const auto b = ModeIndex::validate(s[2], s[3]);
    const auto table = compute_coupling_table(a, b);
    for (const auto& p : samples) {
      const Complex lhs = zernike(a, p[0], p[1]) * zernike(b, p[0], p[1]);
      Complex rhs{};
      for (const auto& [n3, coeff] : table.entries) {
        rhs += coeff * zernike(ModeIndex::validate(n3, table.m3()), p[0], p[1]);
      }
      if (std::abs(lhs - rhs) > 1e-10) {
        throw std::logic_error("coupling self check failed for " + a.to_string() + " x " + b.to_string());
      }
    }
  }
}

}  // namespace

double linearization_coefficient(const ModeIndex& a, const ModeIndex& b, int n3) {
  const int m3 = a.m() + b.m();
  if (!ModeIndex::is_valid(n3, m3)) return 0.0;
  if (n3 < std::abs(a.n() - b.n()) || n3 > a.n() + b.n()) return 0.0;
  AngularMomentumTriple t;
  t.two_j1 = a.n();
  t.two_j2 = b.n();
  t.two_j3 = n3;
  t.two_m1 = a.m();
  t.two_m2 = b.m();
  t.two_m3 = m3;
  const double cg = clebsch_gordan(t);
  if (cg == 0.0) return 0.0;
  return std::sqrt((a.n() + 1.0) * (b.n() + 1.0) / (n3 + 1.0)) * cg * cg;
}

CouplingTable compute_coupling_table(const ModeIndex& a, const ModeIndex& b) {
  CouplingTable table{a, b, {}};
  const int m3 = table.m3();
  const int lo = std::max(std::abs(m3), std::abs(a.n() - b.n()));
  for (int n3 = lo; n3 <= a.n() + b.n(); ++n3) {
    if ((n3 - m3) % 2 != 0) continue;
    const double coeff = linearization_coefficient(a, b, n3);
    if (coeff != 0.0) table.entries.emplace(n3, coeff);
  }
  return table;
}

CouplingTable coupling_coefficients(const ModeIndex& a, const ModeIndex& b) {
  static std::once_flag checked;
  std::call_once(checked, run_self_check);

  const auto key = cache_key(a, b);
  CouplingTable table{a, b, {}};
  if (cache().lookup(key, table)) return table;
  table = compute_coupling_table(a, b);
  cache().insert(key, table);
  return table;
}

ZernikeExpansion product_expansion(const ZernikeExpansion& e1, const ZernikeExpansion& e2) {
  ZernikeExpansion out(e1.n_max() + e2.n_max());
  for (const auto& [ia, ca] : e1) {
    for (const auto& [ib, cb] : e2) {
      const auto table = coupling_coefficients(ia, ib);
      const Complex w = ca * cb;
      for (const auto& [n3, coeff] : table.entries) out.add(ModeIndex::validate(n3, table.m3()), w * coeff);
    }
  }
  return out;
}

std::size_t coupling_cache_size() { return cache().size(); }

}  // namespace zq
