#pragma once

#include <string>
#include <string_view>

#include "zq/coupling.hpp"
#include "zq/propagation.hpp"
#include "zq/spdc.hpp"
#include "zq/zernike.hpp"

namespace zq {

/// %.17g; throws DomainError for NaN or infinity.
std::string format_double(double v);

/// {"n_max": N, "coefficients": [{"n":..,"m":..,"re":..,"im":..}, ...]} in
/// single-index order.
std::string expansion_to_json(const ZernikeExpansion& expansion);
/// Throws ParseError on malformed input, InvalidMode on a bad index and
/// InvalidArgument when a mode exceeds n_max.
ZernikeExpansion expansion_from_json(std::string_view text);

/// [{"n1","m1","n2","m2","n3","m3","A"}, ...] ordered by n3.
std::string coupling_to_json(const CouplingTable& table);

/// {"n_max", "raw_norm", "entries": [{"n1","m1","n2","m2","re","im"}]};
/// exact zeros are left out.
std::string two_photon_to_json(const TwoPhotonState& state);

/// Purity, leading Schmidt coefficients, verdict and witnesses.
std::string report_to_json(const EntanglementReport& report, std::size_t spectrum_limit = 20);

/// Two comment lines, then one "ix,iy,re,im" row per sample:
///   # width,height,extent_x,extent_y,plane
///   # 256,256,1,1,pupil
std::string grid_to_csv(const FieldGrid& grid);
/// Every sample must appear exactly once. Throws ParseError otherwise.
FieldGrid grid_from_csv(std::string_view text);

/// Binary 16-bit PGM of |field|^2, min-max scaled; the first row written is
/// the largest y.
std::string grid_to_pgm(const FieldGrid& grid);

}  // namespace zq
