#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zq/linalg.hpp"
#include "zq/propagation.hpp"
#include "zq/zernike.hpp"

namespace zq {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// ---------------------------------------------------------------------------
// Single photon

/// Photon in the image-plane Zernike basis: zeta_j for every mode j with
/// n <= n_max (single-index order), normalized to unit norm.
struct SinglePhotonState {
  int n_max = 0;
  std::vector<Complex> zeta;
  /// sum |zeta_raw|^2 / integral |C|^2 over the integration disc; how much of
  /// the spectrum the truncated basis captures.
  double captured_fraction = 1.0;

  Complex at(const ModeIndex& idx) const { return zeta.at(idx.single_index()); }
};

/// Builds a normalized single photon state from explicit coefficients.
SinglePhotonState make_single_photon(int n_max, std::vector<Complex> zeta);

struct ProjectionOptions {
  double q_max = 20.0;       // radial cutoff of the spectrum integral
  double panel_width = 0.5;  // radial Gauss-Legendre panel length in q
  int panel_order = 12;
  int azimuthal_count = 0;   // 0 picks 4 n_max + 64
};

/// zeta_j = (1/sqrt(pi)) integral C(q) conj(Ztilde_j(q)) d^2q over |q| <= q_max,
/// then normalized. Throws DegenerateInput if the captured fraction is below 1e-6.
SinglePhotonState project_single_photon(const std::function<Complex(double qx, double qy)>& spectrum, int n_max,
                                        const ProjectionOptions& opts = {});

/// |sum zeta_j Ztilde_j(r)|^2 at one image-plane point.
double g1_at(const SinglePhotonState& state, Vec2 r);

/// First-order correlation on a grid (real values in the real part).
FieldGrid g1_fraunhofer(const SinglePhotonState& state, const GridSpec& spec);

// ---------------------------------------------------------------------------
// Two photons

/// Down-conversion amplitude sqrt(2L/(pi^2 K)) v(q1 + q2) sinc(L |q1 - q2|^2 / 4K)
/// with v the angular spectrum of the pump expansion.
Complex spdc_amplitude(Vec2 q1, Vec2 q2, const ZernikeExpansion& pump, double crystal_length, double pump_wavenumber);

/// Dense zeta_{j1 j2} over all signal/idler modes with n <= n_max.
class TwoPhotonState {
 public:
  /// Takes zeta row-major (signal index first). When normalize is set the
  /// matrix is scaled to unit Frobenius norm; raw_norm keeps the original.
  /// Throws EmptyState for an all-zero matrix.
  TwoPhotonState(int n_max, std::vector<Complex> zeta, bool normalize = true);

  int n_max() const noexcept { return n_max_; }
  std::size_t dim() const noexcept { return dim_; }
  double raw_norm() const noexcept { return raw_norm_; }
  bool normalized() const noexcept { return normalized_; }

  const Complex& at(std::size_t j1, std::size_t j2) const { return zeta_[j1 * dim_ + j2]; }
  const std::vector<Complex>& matrix() const noexcept { return zeta_; }

  bool is_symmetric(double tol = 0.0) const;

  /// u (x) u for a single-photon coefficient vector u.
  static TwoPhotonState product(int n_max, const std::vector<Complex>& u);

 private:
  int n_max_;
  std::size_t dim_;
  double raw_norm_;
  bool normalized_;
  std::vector<Complex> zeta_;
};

/// Thin-crystal coefficients zeta_{n1 n2}^{m1 m2} = sum_{nm} a_{nm} A_{n1 n2 n}^{m1 m2 m},
/// truncated at n_max and renormalized; entries with m1 + m2 outside the
/// pump's azimuthal spectrum are exactly zero.
TwoPhotonState spdc_zeta(const ZernikeExpansion& pump, int n_max);

/// Signal-photon reduced density matrix Xi = zeta zeta^dagger.
class ReducedDensityMatrix {
 public:
  ReducedDensityMatrix(int n_max, std::vector<Complex> xi);

  int n_max() const noexcept { return n_max_; }
  std::size_t dim() const noexcept { return dim_; }
  const Complex& at(std::size_t a, std::size_t b) const { return xi_[a * dim_ + b]; }
  const std::vector<Complex>& matrix() const noexcept { return xi_; }
  double trace() const;

 private:
  int n_max_;
  std::size_t dim_;
  std::vector<Complex> xi_;
};

/// Throws std::logic_error if the result breaks Hermiticity (1e-12), unit
/// trace (1e-10) or diagonal non-negativity (-1e-12).
ReducedDensityMatrix reduce(const TwoPhotonState& state);

/// Tr Xi^2 = sum |Xi_ab|^2.
double purity(const ReducedDensityMatrix& rho);

struct SchmidtSpectrum {
  std::vector<double> coefficients;  // eigenvalues of Xi, descending
  double schmidt_number = 1.0;       // 1 / sum lambda^2
};

/// Eigenvalues of the reduced density matrix. Xi is split into connected
/// blocks of its sparsity pattern first; each block goes through the Jacobi
/// solver.
SchmidtSpectrum schmidt_spectrum(const TwoPhotonState& state, const JacobiOptions& opts = {});

enum class Verdict { Entangled, Product, Inconclusive };
std::string to_string(Verdict v);

/// One term |Xi_ab|^2 - Xi_aa Xi_bb of the Cauchy-Schwarz bound, a < b.
struct CsbWitness {
  std::size_t a = 0;
  std::size_t b = 0;
  double defect = 0.0;
};

struct EntanglementReport {
  int n_max = 0;
  double raw_norm = 0.0;
  double epsilon = 0.0;
  double purity = 1.0;
  SchmidtSpectrum spectrum;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<CsbWitness> witnesses;  // most negative first, at most 10
};

inline constexpr double kDefaultEntanglementEpsilon = 1e-6;

/// Entangled iff purity < 1 - epsilon; product iff purity > 1 - epsilon and
/// every CSB defect is above -epsilon; otherwise inconclusive.
EntanglementReport entanglement_verdict(const TwoPhotonState& state, double epsilon = kDefaultEntanglementEpsilon);

/// All CSB defects for a < b, most negative first (ties by (a, b)).
std::vector<CsbWitness> csb_defects(const ReducedDensityMatrix& rho);

/// 4 |sum zeta_{j1 j2} Ztilde_{j1}(r1) Ztilde_{j2}(r2)|^2.
double g2_fraunhofer(const TwoPhotonState& state, Vec2 r1, Vec2 r2);

}  // namespace zq
