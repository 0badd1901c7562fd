#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zq/zernike.hpp"

namespace zq {

enum class PlaneKind { Pupil, Image, Fresnel };

/// Pixel-centred sampling of [-extent_x, extent_x] x [-extent_y, extent_y].
/// Sample (ix, iy) sits at x = -extent_x + (ix + 0.5) * 2 extent_x / width.
struct GridSpec {
  int width = 0;
  int height = 0;
  double extent_x = 1.0;
  double extent_y = 1.0;

  void validate() const;
  double x(int ix) const { return -extent_x + (ix + 0.5) * 2.0 * extent_x / width; }
  double y(int iy) const { return -extent_y + (iy + 0.5) * 2.0 * extent_y / height; }
  std::size_t sample_count() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
};

/// Row-major complex samples (x fastest) on a GridSpec.
class FieldGrid {
 public:
  FieldGrid(GridSpec spec, PlaneKind plane, double z = 0.0);
  FieldGrid(GridSpec spec, PlaneKind plane, double z, std::vector<Complex> samples);

  const GridSpec& spec() const noexcept { return spec_; }
  PlaneKind plane() const noexcept { return plane_; }
  double z() const noexcept { return z_; }
  int width() const noexcept { return spec_.width; }
  int height() const noexcept { return spec_.height; }

  Complex& at(int ix, int iy) { return samples_[index(ix, iy)]; }
  const Complex& at(int ix, int iy) const { return samples_[index(ix, iy)]; }
  const std::vector<Complex>& samples() const noexcept { return samples_; }
  std::vector<Complex>& samples() noexcept { return samples_; }

  /// "pupil", "image" or "fresnel(<z>)".
  std::string plane_tag() const;

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(spec_.width) + static_cast<std::size_t>(ix);
  }

  GridSpec spec_;
  PlaneKind plane_;
  double z_;
  std::vector<Complex> samples_;
};

/// Pupil-plane sampling of an expansion; zero outside the unit disc.
FieldGrid sample_pupil(const ZernikeExpansion& expansion, const GridSpec& spec);

/// Fourier transform of Z_n^m with kernel e^{2 pi i rho q cos(theta - phi)}:
/// 2 pi i^n sqrt(n+1) J_{n+1}(2 pi q) / (2 pi q) e^{i m phi}.
Complex zernike_ft(const ModeIndex& idx, double q, double phi);

/// sum a_{nm} zernike_ft(n, m, q, phi).
Complex expansion_ft(const ZernikeExpansion& expansion, double q, double phi);

/// Image-plane field sampled on the grid, coordinates in units of q.
FieldGrid fraunhofer_field(const ZernikeExpansion& expansion, const GridSpec& spec);

/// Propagation distance and wavenumber; only k/z and the quadratic output
/// phase depend on them individually.
struct FresnelParams {
  double z = 1.0;
  double k = 1.0;

  void validate() const;
  /// k / (4 z), the argument of the spherical Bessel factors.
  double defocus() const { return k / (4.0 * z); }
};

/// Series truncation. Unset orders are chosen from the decay of the Bessel
/// factors: h up to ceil(pi e rho_max) + margin, l up to ceil(e k / (8z)) + margin.
struct TruncationRule {
  std::optional<int> h_max;
  std::optional<int> l_max;
  int margin = 40;
  double tolerance = 1e-12;
};

/// Fresnel radial coefficient V_n^m(rho; z) for one mode, prepared once for all
/// rho <= rho_max. rho is in diffraction units, so the Bessel kernel of the
/// defining integral is J_m(-2 pi rho rho') and the pupil chirp is
/// exp(i k rho'^2 / 2z).
class FresnelSeries {
 public:
  FresnelSeries(const ModeIndex& idx, const FresnelParams& params, double rho_max, const TruncationRule& rule = {});

  /// Throws ConvergenceError if the tail estimate exceeds the rule's tolerance.
  Complex operator()(double rho) const;

  int h_max() const noexcept { return h_max_; }
  int l_max() const noexcept { return l_max_; }

 private:
  int n_;
  int m_abs_;
  double rho_max_;
  int h_max_;
  int l_max_;
  double tolerance_;
  double l_tail_;
  Complex global_phase_;
  std::vector<Complex> h_coefficients_;  // indexed by h
};

Complex fresnel_v(const ModeIndex& idx, double rho, const FresnelParams& params, const TruncationRule& rule = {});

/// -(i k / z) e^{i k z + i k r^2 / 2z} sum a_{nm} e^{i m theta} V_n^m(rho; z), with
/// the physical radius r = 2 pi z rho / k of a diffraction-unit sample rho.
FieldGrid fresnel_field(const ZernikeExpansion& expansion, const FresnelParams& params, const GridSpec& spec,
                        const TruncationRule& rule = {});

}  // namespace zq
