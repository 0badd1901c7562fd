#include "zq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "zq/error.hpp"

namespace zq {

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t dim, const JacobiOptions& opts) {
  if (a.size() != dim * dim) throw InvalidArgument("symmetric_eigenvalues: size mismatch");
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * dim + c]; };
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        if (r != c) s += at(r, c) * at(r, c);
      }
    }
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() >= opts.off_diagonal_tolerance) {
    if (sweep++ >= opts.max_sweeps) {
      throw EigensolverFailure("Jacobi eigensolver did not converge in " + std::to_string(opts.max_sweeps) +
                               " sweeps (dimension " + std::to_string(dim) + ")");
    }
    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < dim; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  std::vector<double> eig(dim);
  for (std::size_t i = 0; i < dim; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& h, std::size_t dim,
                                          const JacobiOptions& opts) {
  if (h.size() != dim * dim) throw InvalidArgument("hermitian_eigenvalues: size mismatch");
  const std::size_t big = 2 * dim;
  std::vector<double> embed(big * big);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const auto v = h[r * dim + c];
      embed[r * big + c] = v.real();
      embed[(r + dim) * big + (c + dim)] = v.real();
      embed[r * big + (c + dim)] = -v.imag();
      embed[(r + dim) * big + c] = v.imag();
    }
  }
  const auto doubled = symmetric_eigenvalues(std::move(embed), big, opts);
  // Each eigenvalue of the Hermitian matrix appears twice in the embedding.
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace zq
