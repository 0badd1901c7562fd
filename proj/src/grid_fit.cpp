#include "zq/grid_fit.hpp"

#include <cmath>

#include "zq/error.hpp"

namespace zq {

GridFit fit_grid(const FieldGrid& grid, int n_max) {
  if (n_max < 0 || n_max > kMaxRadialOrder) throw InvalidArgument("fit_grid: n_max out of range");
  const auto& spec = grid.spec();
  if (spec.extent_x < 1.0 || spec.extent_y < 1.0) {
    throw CoverageError("fit_grid: grid extent does not cover the unit disc");
  }
  const auto modes = enumerate_up_to(n_max);
  const std::size_t dim = modes.size();

  std::vector<Complex> normal(dim * dim);
  std::vector<Complex> rhs(dim);
  std::vector<Complex> basis(dim);
  std::size_t used = 0;
  for (int iy = 0; iy < spec.height; ++iy) {
    for (int ix = 0; ix < spec.width; ++ix) {
      const double x = spec.x(ix);
      const double y = spec.y(iy);
      const double r = std::hypot(x, y);
      if (r > 1.0) continue;
      ++used;
      const double theta = std::atan2(y, x);
      for (std::size_t j = 0; j < dim; ++j) basis[j] = zernike(modes[j], r, theta);
      const Complex value = grid.at(ix, iy);
      for (std::size_t a = 0; a < dim; ++a) {
        const Complex ca = std::conj(basis[a]);
        rhs[a] += ca * value;
        for (std::size_t b = a; b < dim; ++b) normal[a * dim + b] += ca * basis[b];
      }
    }
  }
  if (used < dim) throw DegenerateInput("fit_grid: fewer in-disc samples than modes");

  // Cholesky of the Hermitian normal matrix (upper triangle), L L^H.
  std::vector<Complex> chol(dim * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    double diag = normal[j * dim + j].real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(chol[j * dim + k]);
    if (!(diag > 1e-12 * static_cast<double>(used))) throw DegenerateInput("fit_grid: modes are not resolved by the grid");
    const double ljj = std::sqrt(diag);
    chol[j * dim + j] = ljj;
    for (std::size_t i = j + 1; i < dim; ++i) {
      Complex s = std::conj(normal[j * dim + i]);
      for (std::size_t k = 0; k < j; ++k) s -= chol[i * dim + k] * std::conj(chol[j * dim + k]);
      chol[i * dim + j] = s / ljj;
    }
  }
  std::vector<Complex> y(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Complex s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= chol[i * dim + k] * y[k];
    y[i] = s / chol[i * dim + i];
  }
  std::vector<Complex> coeff(dim);
  for (std::size_t i = dim; i-- > 0;) {
    Complex s = y[i];
    for (std::size_t k = i + 1; k < dim; ++k) s -= std::conj(chol[k * dim + i]) * coeff[k];
    coeff[i] = s / chol[i * dim + i];
  }

  GridFit out{ZernikeExpansion(n_max), 0.0, used};
  for (std::size_t j = 0; j < dim; ++j) out.expansion.set(modes[j], coeff[j]);

  double sum_sq = 0.0;
  for (int iy = 0; iy < spec.height; ++iy) {
    for (int ix = 0; ix < spec.width; ++ix) {
      const double x = spec.x(ix);
      const double y0 = spec.y(iy);
      const double r = std::hypot(x, y0);
      if (r > 1.0) continue;
      sum_sq += std::norm(grid.at(ix, iy) - reconstruct(out.expansion, r, std::atan2(y0, x)));
    }
  }
  out.residual_rms = std::sqrt(sum_sq / static_cast<double>(used));
  return out;
}

}  // namespace zq
