// Command-line front end over the zq C interface.
#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zq/zq.h"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kBadFlags = 2, kIoFailure = 3, kCoverage = 4, kConvergence = 5, kEmpty = 6 };

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(zq_status s) {
  switch (s) {
    case ZQ_OK: return kOk;
    case ZQ_ERR_INVALID_MODE:
    case ZQ_ERR_INVALID_TRIPLE:
    case ZQ_ERR_INVALID_ARGUMENT:
    case ZQ_ERR_DOMAIN:
    case ZQ_ERR_CAPACITY: return kBadFlags;
    case ZQ_ERR_PARSE:
    case ZQ_ERR_IO: return kIoFailure;
    case ZQ_ERR_COVERAGE:
    case ZQ_ERR_DEGENERATE_INPUT: return kCoverage;
    case ZQ_ERR_CONVERGENCE: return kConvergence;
    case ZQ_ERR_EMPTY_STATE: return kEmpty;
    default: return kVerifyFailed;
  }
}

void check(zq_status s) {
  if (s != ZQ_OK) throw Failure{exit_code_for(s), zq_last_error()};
}

void bad_flag(const std::string& message) { throw Failure{kBadFlags, message}; }

// Owning wrappers over the C handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};
using Expansion = Handle<zq_expansion, zq_expansion_free>;
using Grid = Handle<zq_grid, zq_grid_free>;
using Coupling = Handle<zq_coupling, zq_coupling_free>;
using TwoPhoton = Handle<zq_two_photon, zq_two_photon_free>;
using Report = Handle<zq_report, zq_report_free>;

std::string take(char* s) {
  std::string out(s);
  zq_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kIoFailure, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
      continue;
    }
    out += c;
  }
  return out;
}

// Run configuration: flags in canonical order, plus the files to produce.
struct Run {
  std::string command;
  std::map<std::string, std::string> flags;
  std::vector<std::pair<std::string, std::string>> files;

  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
      }
      h ^= 0xff;
      h *= 1099511628211ULL;
    };
    mix(command);
    for (const auto& [k, v] : flags) {
      mix(k);
      mix(v);
    }
    return h;
  }

  std::string config_echo() const {
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof hash_hex, "%016" PRIx64, hash());
    std::string out = "{\n  \"command\": \"" + json_escape(command) + "\",\n  \"flags\": {";
    bool first = true;
    for (const auto& [k, v] : flags) {
      out += first ? "\n" : ",\n";
      first = false;
      out += "    \"" + json_escape(k) + "\": \"" + json_escape(v) + "\"";
    }
    out += first ? "},\n" : "\n  },\n";
    out += "  \"outputs\": [";
    for (std::size_t i = 0; i < files.size(); ++i) {
      out += (i ? ", \"" : "\"") + json_escape(std::filesystem::path(files[i].first).filename().string()) + "\"";
    }
    out += "],\n  \"provenance\": \"zq " + std::string(zq_version()) + " config " + hash_hex + "\"\n}\n";
    return out;
  }

  // Everything goes to temporaries first; nothing is renamed into place unless
  // every write succeeded.
  void commit(const std::string& prefix) {
    files.emplace_back(prefix + ".config.json", "");
    files.back().second = config_echo();
    std::vector<std::string> temps;
    auto cleanup = [&] {
      std::error_code ec;
      for (const auto& t : temps) std::filesystem::remove(t, ec);
    };
    for (const auto& [path, data] : files) {
      const std::string tmp = path + ".tmp";
      temps.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(data.data(), static_cast<std::streamsize>(data.size()));
      out.close();
      if (!out) {
        cleanup();
        throw Failure{kIoFailure, "cannot write " + path};
      }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      std::error_code ec;
      std::filesystem::rename(temps[i], files[i].first, ec);
      if (ec) {
        cleanup();
        throw Failure{kIoFailure, "cannot move " + temps[i] + " to " + files[i].first + ": " + ec.message()};
      }
    }
  }
};

std::pair<int, int> parse_mode(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) bad_flag(std::string(flag) + " expects n,m");
  try {
    std::size_t used_n = 0, used_m = 0;
    const int n = std::stoi(text.substr(0, comma), &used_n);
    const std::string rest = text.substr(comma + 1);
    const int m = std::stoi(rest, &used_m);
    if (used_n != comma || used_m != rest.size()) throw std::invalid_argument(text);
    return {n, m};
  } catch (const std::exception&) {
    bad_flag(std::string(flag) + " expects n,m; got \"" + text + "\"");
  }
  return {0, 0};
}

void validate_mode(int n, int m) {
  const zq_status s = zq_mode_validate(n, m);
  if (s != ZQ_OK) bad_flag(zq_last_error());
}

struct GridFlags {
  int size = 256;
  double extent = 1.0;
  std::string format = "csv";

  zq_grid_spec spec() const {
    if (size <= 0) bad_flag("--size must be positive");
    if (!(extent > 0.0)) bad_flag("--extent must be positive");
    return {size, size, extent, extent};
  }
  void record(Run& run) const {
    run.flags["size"] = std::to_string(size);
    run.flags["extent"] = fmt(extent);
    run.flags["format"] = format;
  }
};

void add_grid_outputs(Run& run, const Grid& grid, const std::string& prefix, const std::string& format) {
  if (format == "csv" || format == "both") {
    char* text = nullptr;
    check(zq_grid_to_csv(grid.get(), &text));
    run.files.emplace_back(prefix + ".csv", take(text));
  }
  if (format == "pgm" || format == "both") {
    unsigned char* data = nullptr;
    std::size_t size = 0;
    check(zq_grid_to_pgm(grid.get(), &data, &size));
    run.files.emplace_back(prefix + ".pgm", std::string(reinterpret_cast<char*>(data), size));
    zq_buffer_free(data);
  }
}

struct ExpansionSource {
  std::string file;
  int n = -1;
  int m = 0;
  bool have_mode = false;

  void record(Run& run) const {
    if (!file.empty()) run.flags["in"] = file;
    if (have_mode) {
      run.flags["n"] = std::to_string(n);
      run.flags["m"] = std::to_string(m);
    }
  }

  void check_flags() const {
    if (file.empty() == !have_mode) bad_flag("give either --in <expansion.json> or --n/--m");
    if (have_mode) validate_mode(n, m);
  }

  void load(Expansion& e) const {
    if (!file.empty()) {
      check(zq_expansion_from_json(read_file(file).c_str(), e.out()));
      return;
    }
    check(zq_expansion_create(n, e.out()));
    check(zq_expansion_set(e.get(), n, m, 1.0, 0.0));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zernike-mode optics toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = all cores)")->check(CLI::NonNegativeNumber);

  std::string out_prefix;
  GridFlags grid_flags;
  ExpansionSource source;
  const std::vector<std::string> formats{"csv", "pgm", "both"};

  auto* eval = app.add_subcommand("eval", "sample one mode on the pupil plane");
  eval->add_option("--n", source.n, "radial order")->required();
  eval->add_option("--m", source.m, "azimuthal index")->required();
  eval->add_option("--size", grid_flags.size, "grid width and height");
  eval->add_option("--extent", grid_flags.extent, "half-width of the sampled square");
  eval->add_option("--format", grid_flags.format)->check(CLI::IsMember(formats));
  eval->add_option("--out", out_prefix, "output file prefix");

  std::string fit_input;
  int fit_n_max = 6;
  double prune = 0.0;
  auto* fitcmd = app.add_subcommand("fit", "fit a pupil grid CSV to an expansion");
  fitcmd->add_option("--in", fit_input, "grid CSV")->required();
  fitcmd->add_option("--nmax", fit_n_max, "largest radial order");
  fitcmd->add_option("--prune", prune, "drop coefficients with magnitude at or below this");
  fitcmd->add_option("--out", out_prefix);

  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("--in", source.file, "expansion JSON");
    cmd->add_option("--n", source.n, "single-mode input: radial order");
    cmd->add_option("--m", source.m, "single-mode input: azimuthal index");
    cmd->add_option("--size", grid_flags.size);
    cmd->add_option("--extent", grid_flags.extent);
    cmd->add_option("--format", grid_flags.format)->check(CLI::IsMember(formats));
    cmd->add_option("--out", out_prefix);
  };
  auto* ft = app.add_subcommand("ft", "image-plane field of an expansion");
  add_source(ft);
  double z = 0.0;
  double k = 0.0;
  auto* propagate = app.add_subcommand("propagate", "Fresnel-plane field of an expansion");
  add_source(propagate);
  propagate->add_option("--z", z, "propagation distance")->required();
  propagate->add_option("--k", k, "wavenumber")->required();

  std::string mode_a, mode_b;
  auto* product = app.add_subcommand("product", "linearization table of two modes");
  product->add_option("--a", mode_a, "first mode n,m")->required();
  product->add_option("--b", mode_b, "second mode n,m")->required();
  product->add_option("--out", out_prefix);

  std::string pump_mode, pump_file;
  int spdc_n_max = -1;
  double epsilon = 1e-6;
  auto* spdc = app.add_subcommand("spdc", "two-photon state and entanglement report");
  auto* pump_opt = spdc->add_option("--pump", pump_mode, "pump mode n,m");
  spdc->add_option("--pump-file", pump_file, "pump expansion JSON")->excludes(pump_opt);
  spdc->add_option("--nmax", spdc_n_max, "largest signal/idler radial order")->required();
  spdc->add_option("--epsilon", epsilon, "purity and witness threshold");
  spdc->add_option("--out", out_prefix);

  int verify_n_max = 0;
  std::string plane = "pupil";
  auto* verify = app.add_subcommand("verify", "run the orthonormality and invariant suites");
  verify->add_option("--nmax", verify_n_max)->required();
  verify->add_option("--plane", plane)->check(CLI::IsMember({"pupil", "image"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadFlags;
  }

  try {
    check(zq_set_max_threads(threads));
    Run run;
    auto prefix = [&](const char* fallback) { return out_prefix.empty() ? std::string(fallback) : out_prefix; };

    if (*eval) {
      run.command = "eval";
      validate_mode(source.n, source.m);
      const auto spec = grid_flags.spec();
      source.have_mode = true;
      source.record(run);
      grid_flags.record(run);
      const std::string base = prefix("eval");
      run.flags["out"] = base;
      Expansion e;
      source.load(e);
      Grid g;
      check(zq_grid_pupil(e.get(), &spec, g.out()));
      add_grid_outputs(run, g, base, grid_flags.format);
      run.commit(base);
      return kOk;
    }

    if (*fitcmd) {
      run.command = "fit";
      if (fit_n_max < 0) bad_flag("--nmax must be non-negative");
      if (!(prune >= 0.0)) bad_flag("--prune must be non-negative");
      const std::string base = prefix("fit");
      run.flags = {{"in", fit_input}, {"nmax", std::to_string(fit_n_max)}, {"prune", fmt(prune)}, {"out", base}};
      Grid g;
      check(zq_grid_from_csv(read_file(fit_input).c_str(), g.out()));
      Expansion e;
      double residual = 0.0;
      check(zq_grid_fit(g.get(), fit_n_max, e.out(), &residual));
      if (prune > 0.0) check(zq_expansion_prune(e.get(), prune));
      char* json = nullptr;
      check(zq_expansion_to_json(e.get(), &json));
      run.files.emplace_back(base + ".json", take(json));
      run.commit(base);
      std::printf("residual_rms %s\n", fmt(residual).c_str());
      return kOk;
    }

    if (*ft || *propagate) {
      const bool fresnel = static_cast<bool>(*propagate);
      run.command = fresnel ? "propagate" : "ft";
      source.have_mode = (fresnel ? propagate : ft)->count("--n") > 0 || (fresnel ? propagate : ft)->count("--m") > 0;
      source.check_flags();
      const auto spec = grid_flags.spec();
      if (fresnel && !(z > 0.0)) bad_flag("--z must be positive");
      if (fresnel && !(k > 0.0)) bad_flag("--k must be positive");
      source.record(run);
      grid_flags.record(run);
      const std::string base = prefix(fresnel ? "propagate" : "ft");
      run.flags["out"] = base;
      if (fresnel) {
        run.flags["z"] = fmt(z);
        run.flags["k"] = fmt(k);
      }
      Expansion e;
      source.load(e);
      Grid g;
      if (fresnel) {
        check(zq_grid_fresnel(e.get(), z, k, &spec, g.out()));
      } else {
        check(zq_grid_fraunhofer(e.get(), &spec, g.out()));
      }
      add_grid_outputs(run, g, base, grid_flags.format);
      run.commit(base);
      return kOk;
    }

    if (*product) {
      run.command = "product";
      const auto [n1, m1] = parse_mode(mode_a, "--a");
      const auto [n2, m2] = parse_mode(mode_b, "--b");
      validate_mode(n1, m1);
      validate_mode(n2, m2);
      const std::string base = prefix("product");
      run.flags = {{"a", mode_a}, {"b", mode_b}, {"out", base}};
      Coupling c;
      check(zq_coupling_create(n1, m1, n2, m2, c.out()));
      char* json = nullptr;
      check(zq_coupling_to_json(c.get(), &json));
      const std::string text = take(json);
      run.files.emplace_back(base + ".json", text);
      run.commit(base);
      std::fputs(text.c_str(), stdout);
      return kOk;
    }

    if (*spdc) {
      run.command = "spdc";
      if (pump_mode.empty() == pump_file.empty()) bad_flag("give either --pump n,m or --pump-file");
      if (spdc_n_max < 0) bad_flag("--nmax must be non-negative");
      if (!(epsilon > 0.0)) bad_flag("--epsilon must be positive");
      const std::string base = prefix("spdc");
      run.flags = {{"nmax", std::to_string(spdc_n_max)}, {"epsilon", fmt(epsilon)}, {"out", base}};
      Expansion pump;
      if (!pump_mode.empty()) {
        const auto [n, m] = parse_mode(pump_mode, "--pump");
        validate_mode(n, m);
        run.flags["pump"] = pump_mode;
        check(zq_expansion_create(n, pump.out()));
        check(zq_expansion_set(pump.get(), n, m, 1.0, 0.0));
      } else {
        run.flags["pump-file"] = pump_file;
        check(zq_expansion_from_json(read_file(pump_file).c_str(), pump.out()));
      }
      TwoPhoton state;
      check(zq_spdc_zeta(pump.get(), spdc_n_max, state.out()));
      Report report;
      check(zq_report_create(state.get(), epsilon, report.out()));
      char* state_json = nullptr;
      check(zq_two_photon_to_json(state.get(), &state_json));
      run.files.emplace_back(base + ".state.json", take(state_json));
      char* report_json = nullptr;
      check(zq_report_to_json(report.get(), &report_json));
      run.files.emplace_back(base + ".report.json", take(report_json));
      run.commit(base);
      double purity = 0.0;
      const char* verdict = nullptr;
      check(zq_report_purity(report.get(), &purity));
      check(zq_report_verdict(report.get(), &verdict));
      std::printf("purity %s\nverdict %s\n", fmt(purity).c_str(), verdict);
      return kOk;
    }

    if (*verify) {
      if (verify_n_max < 0) bad_flag("--nmax must be non-negative");
      char* text = nullptr;
      int passed = 0;
      check(zq_verify(verify_n_max, plane == "image" ? ZQ_PLANE_IMAGE : ZQ_PLANE_PUPIL, &text, &passed));
      std::fputs(take(text).c_str(), stdout);
      return passed ? kOk : kVerifyFailed;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  }
  return kBadFlags;
}
