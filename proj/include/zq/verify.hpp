#pragma once

#include <string>
#include <vector>

#include "zq/zernike.hpp"

namespace zq {

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return deviation <= tolerance; }
};

/// max |<Z_a, Z_b> - pi delta_ab| over the disc quadrature, all n <= n_max.
double pupil_gram_deviation(int n_max);

/// Image-plane Gram matrix of the Fourier-transformed modes integrated over
/// |q| <= q_cutoff, with the leading 1/q_cutoff tail added back.
std::vector<Complex> image_gram_matrix(int n_max, double q_cutoff);
double image_gram_deviation(int n_max, double q_cutoff);

/// Pupil-plane suite: Gram matrix, mode count, radial endpoint, index
/// round trip, product identity, fit/reconstruct round trip.
std::vector<CheckResult> verify_pupil(int n_max);

/// Image-plane suite: Gram matrix with cutoff 200 and the on-axis value of
/// the piston transform.
std::vector<CheckResult> verify_image(int n_max);

}  // namespace zq
