#pragma once

#include "zq/propagation.hpp"
#include "zq/zernike.hpp"

namespace zq {

struct GridFit {
  ZernikeExpansion expansion;
  double residual_rms = 0.0;  // over samples inside the unit disc
  std::size_t samples_used = 0;
};

/// Least-squares fit of all modes n <= n_max to the grid samples that lie in
/// the unit disc. Throws CoverageError when the grid does not span the disc
/// and DegenerateInput when the in-disc samples cannot resolve every mode.
GridFit fit_grid(const FieldGrid& grid, int n_max);

}  // namespace zq
