#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace zq {

struct JacobiOptions {
  double off_diagonal_tolerance = 1e-13;
  int max_sweeps = 100;
};

/// Eigenvalues of a real symmetric matrix (row-major, dim x dim) by cyclic
/// Jacobi rotations, ascending. Throws EigensolverFailure when the
/// off-diagonal Frobenius norm is still above tolerance after max_sweeps.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t dim, const JacobiOptions& opts = {});

/// Eigenvalues of a complex Hermitian matrix via its real symmetric
/// embedding [[Re, -Im], [Im, Re]], descending.
std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& h, std::size_t dim,
                                          const JacobiOptions& opts = {});

}  // namespace zq
