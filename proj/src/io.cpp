#include "zq/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "zq/error.hpp"

namespace zq {
namespace {

using Json = nlohmann::json;

std::string mode_fields(const char* n_key, const char* m_key, const ModeIndex& idx) {
  return std::string("\"") + n_key + "\": " + std::to_string(idx.n()) + ", \"" + m_key + "\": " + std::to_string(idx.m());
}

int json_int(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    throw ParseError(std::string("expected integer field \"") + key + "\"");
  }
  return it->get<int>();
}

double json_number(const Json& obj, const char* key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ParseError(std::string("expected numeric field \"") + key + "\"");
  return it->get<double>();
}

PlaneKind parse_plane(const std::string& tag, double& z) {
  z = 0.0;
  if (tag == "pupil") return PlaneKind::Pupil;
  if (tag == "image") return PlaneKind::Image;
  if (tag.size() > 9 && tag.rfind("fresnel(", 0) == 0 && tag.back() == ')') {
    const std::string inner = tag.substr(8, tag.size() - 9);
    char* end = nullptr;
    z = std::strtod(inner.c_str(), &end);
    if (end == inner.c_str() || *end != '\0') throw ParseError("bad plane tag: " + tag);
    return PlaneKind::Fresnel;
  }
  throw ParseError("unknown plane tag: " + tag);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end == s.c_str() || *end != '\0') throw ParseError("bad number: \"" + s + "\"");
  return v;
}

long parse_long(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end == s.c_str() || *end != '\0') throw ParseError("bad integer: \"" + s + "\"");
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) throw DomainError("cannot serialize a non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string expansion_to_json(const ZernikeExpansion& expansion) {
  std::string out = "{\n  \"n_max\": " + std::to_string(expansion.n_max()) + ",\n  \"coefficients\": [";
  bool first = true;
  for (const auto& [idx, a] : expansion) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {" + mode_fields("n", "m", idx) + ", \"re\": " + format_double(a.real()) +
           ", \"im\": " + format_double(a.imag()) + "}";
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

ZernikeExpansion expansion_from_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("expansion JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("expansion JSON: top level must be an object");
  const auto list = doc.find("coefficients");
  if (list == doc.end() || !list->is_array()) throw ParseError("expansion JSON: missing \"coefficients\" array");

  int n_max = 0;
  if (doc.contains("n_max")) {
    n_max = json_int(doc, "n_max");
  } else {
    for (const auto& c : *list) {
      if (c.is_object() && c.contains("n") && c["n"].is_number_integer()) n_max = std::max(n_max, c["n"].get<int>());
    }
  }
  if (n_max < 0) throw InvalidArgument("expansion JSON: n_max must be non-negative");

  ZernikeExpansion out(n_max);
  for (const auto& c : *list) {
    if (!c.is_object()) throw ParseError("expansion JSON: coefficient entries must be objects");
    const int n = json_int(c, "n");
    const int m = json_int(c, "m");
    const auto idx = ModeIndex::validate(n, m);
    if (out.contains(idx)) throw ParseError("expansion JSON: duplicate mode " + idx.to_string());
    out.set(idx, Complex(json_number(c, "re", 0.0), json_number(c, "im", 0.0)));
  }
  return out;
}

std::string coupling_to_json(const CouplingTable& table) {
  std::string out = "[";
  bool first = true;
  for (const auto& [n3, value] : table.entries) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "  {" + mode_fields("n1", "m1", table.a) + ", " + mode_fields("n2", "m2", table.b) +
           ", \"n3\": " + std::to_string(n3) + ", \"m3\": " + std::to_string(table.m3()) +
           ", \"A\": " + format_double(value) + "}";
  }
  out += first ? "]\n" : "\n]\n";
  return out;
}

std::string two_photon_to_json(const TwoPhotonState& state) {
  const auto modes = enumerate_up_to(state.n_max());
  std::string out = "{\n  \"n_max\": " + std::to_string(state.n_max()) +
                    ",\n  \"raw_norm\": " + format_double(state.raw_norm()) + ",\n  \"entries\": [";
  bool first = true;
  for (std::size_t a = 0; a < state.dim(); ++a) {
    for (std::size_t b = 0; b < state.dim(); ++b) {
      const Complex v = state.at(a, b);
      if (v == Complex{}) continue;
      out += first ? "\n" : ",\n";
      first = false;
      out += "    {" + mode_fields("n1", "m1", modes[a]) + ", " + mode_fields("n2", "m2", modes[b]) +
             ", \"re\": " + format_double(v.real()) + ", \"im\": " + format_double(v.imag()) + "}";
    }
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string report_to_json(const EntanglementReport& report, std::size_t spectrum_limit) {
  const auto modes = enumerate_up_to(report.n_max);
  std::string out = "{\n  \"n_max\": " + std::to_string(report.n_max) +
                    ",\n  \"raw_norm\": " + format_double(report.raw_norm) +
                    ",\n  \"epsilon\": " + format_double(report.epsilon) +
                    ",\n  \"purity\": " + format_double(report.purity) +
                    ",\n  \"schmidt_number\": " + format_double(report.spectrum.schmidt_number) +
                    ",\n  \"verdict\": \"" + to_string(report.verdict) + "\",\n  \"schmidt_spectrum\": [";
  const std::size_t count = std::min(spectrum_limit, report.spectrum.coefficients.size());
  for (std::size_t i = 0; i < count; ++i) {
    if (i) out += ", ";
    out += format_double(report.spectrum.coefficients[i]);
  }
  out += "],\n  \"witnesses\": [";
  bool first = true;
  for (const auto& w : report.witnesses) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {" + mode_fields("n_a", "m_a", modes[w.a]) + ", " + mode_fields("n_b", "m_b", modes[w.b]) +
           ", \"defect\": " + format_double(w.defect) + "}";
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string grid_to_csv(const FieldGrid& grid) {
  const auto& spec = grid.spec();
  std::string out = "# width,height,extent_x,extent_y,plane\n# " + std::to_string(spec.width) + "," +
                    std::to_string(spec.height) + "," + format_double(spec.extent_x) + "," +
                    format_double(spec.extent_y) + "," + grid.plane_tag() + "\n";
  out.reserve(out.size() + spec.sample_count() * 48);
  for (int iy = 0; iy < spec.height; ++iy) {
    for (int ix = 0; ix < spec.width; ++ix) {
      const Complex v = grid.at(ix, iy);
      out += std::to_string(ix);
      out += ',';
      out += std::to_string(iy);
      out += ',';
      out += format_double(v.real());
      out += ',';
      out += format_double(v.imag());
      out += '\n';
    }
  }
  return out;
}

FieldGrid grid_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("# width,height,extent_x,extent_y,plane", 0) != 0) {
    throw ParseError("grid CSV: missing header line");
  }
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw ParseError("grid CSV: missing dimensions line");
  const auto dims = split(line.substr(2), ',');
  if (dims.size() != 5) throw ParseError("grid CSV: dimensions line needs five fields");
  GridSpec spec;
  spec.width = static_cast<int>(parse_long(dims[0]));
  spec.height = static_cast<int>(parse_long(dims[1]));
  spec.extent_x = parse_double(dims[2]);
  spec.extent_y = parse_double(dims[3]);
  try {
    spec.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("grid CSV: ") + e.what());
  }
  double z = 0.0;
  const PlaneKind plane = parse_plane(dims[4], z);

  FieldGrid grid(spec, plane, z);
  std::vector<char> seen(spec.sample_count(), 0);
  std::size_t count = 0;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw ParseError("grid CSV: line " + std::to_string(line_no) + " needs four fields");
    const long ix = parse_long(f[0]);
    const long iy = parse_long(f[1]);
    if (ix < 0 || iy < 0 || ix >= spec.width || iy >= spec.height) {
      throw ParseError("grid CSV: line " + std::to_string(line_no) + " index out of range");
    }
    const std::size_t k = static_cast<std::size_t>(iy) * spec.width + static_cast<std::size_t>(ix);
    if (seen[k]) throw ParseError("grid CSV: line " + std::to_string(line_no) + " repeats a sample");
    seen[k] = 1;
    ++count;
    grid.at(static_cast<int>(ix), static_cast<int>(iy)) = Complex(parse_double(f[2]), parse_double(f[3]));
  }
  if (count != spec.sample_count()) throw ParseError("grid CSV: missing samples");
  return grid;
}

std::string grid_to_pgm(const FieldGrid& grid) {
  const auto& spec = grid.spec();
  std::vector<double> intensity(spec.sample_count());
  for (std::size_t i = 0; i < intensity.size(); ++i) intensity[i] = std::norm(grid.samples()[i]);
  const auto [lo, hi] = std::minmax_element(intensity.begin(), intensity.end());
  const double min = *lo;
  const double range = *hi - *lo;

  std::string out = "P5\n" + std::to_string(spec.width) + " " + std::to_string(spec.height) + "\n65535\n";
  out.reserve(out.size() + 2 * intensity.size());
  for (int iy = spec.height - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < spec.width; ++ix) {
      const double v = intensity[static_cast<std::size_t>(iy) * spec.width + ix];
      const auto level =
          range > 0.0 ? static_cast<std::uint16_t>(std::lround((v - min) / range * 65535.0)) : std::uint16_t{0};
      out += static_cast<char>(level >> 8);
      out += static_cast<char>(level & 0xff);
    }
  }
  return out;
}

}  // namespace zq
