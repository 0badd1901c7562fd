#include "zq/zq.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "zq/coupling.hpp"
#include "zq/error.hpp"
#include "zq/grid_fit.hpp"
#include "zq/io.hpp"
#include "zq/parallel.hpp"
#include "zq/propagation.hpp"
#include "zq/spdc.hpp"
#include "zq/verify.hpp"

struct zq_expansion {
  zq::ZernikeExpansion value;
};
struct zq_grid {
  zq::FieldGrid value;
};
struct zq_coupling {
  zq::CouplingTable value;
};
struct zq_two_photon {
  zq::TwoPhotonState value;
};
struct zq_report {
  zq::EntanglementReport value;
};

namespace {

thread_local std::string last_error;

zq_status status_of(zq::ErrorCode code) {
  using zq::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidMode: return ZQ_ERR_INVALID_MODE;
    case ErrorCode::InvalidTriple: return ZQ_ERR_INVALID_TRIPLE;
    case ErrorCode::Domain: return ZQ_ERR_DOMAIN;
    case ErrorCode::Capacity: return ZQ_ERR_CAPACITY;
    case ErrorCode::Convergence: return ZQ_ERR_CONVERGENCE;
    case ErrorCode::EmptyState: return ZQ_ERR_EMPTY_STATE;
    case ErrorCode::DegenerateInput: return ZQ_ERR_DEGENERATE_INPUT;
    case ErrorCode::EigensolverFailure: return ZQ_ERR_EIGENSOLVER;
    case ErrorCode::InvalidArgument: return ZQ_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return ZQ_ERR_PARSE;
    case ErrorCode::Coverage: return ZQ_ERR_COVERAGE;
    case ErrorCode::Io: return ZQ_ERR_IO;
  }
  return ZQ_ERR_INTERNAL;
}

template <class F>
zq_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return ZQ_OK;
  } catch (const zq::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return ZQ_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw zq::InvalidArgument(std::string("null ") + what);
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

zq::GridSpec to_spec(const zq_grid_spec* spec) {
  require(spec, "grid spec");
  zq::GridSpec out{spec->width, spec->height, spec->extent_x, spec->extent_y};
  out.validate();
  return out;
}

template <class Handle, class T>
void emit(Handle** out, T&& value) {
  require(out, "output handle");
  *out = new Handle{std::forward<T>(value)};
}

}  // namespace

extern "C" {

const char* zq_last_error(void) { return last_error.c_str(); }
const char* zq_version(void) { return "1.0.0"; }
void zq_string_free(char* s) { std::free(s); }
void zq_buffer_free(unsigned char* data) { std::free(data); }

zq_status zq_set_max_threads(int count) {
  return guard([&] {
    if (count < 0) throw zq::InvalidArgument("thread count must be non-negative");
    zq::set_max_threads(count);
  });
}

zq_status zq_mode_validate(int n, int m) {
  return guard([&] { zq::ModeIndex::validate(n, m); });
}

zq_status zq_mode_to_index(int n, int m, long* index) {
  return guard([&] {
    require(index, "index");
    *index = static_cast<long>(zq::ModeIndex::validate(n, m).single_index());
  });
}

zq_status zq_mode_from_index(long index, int* n, int* m) {
  return guard([&] {
    require(n, "n");
    require(m, "m");
    if (index < 0) throw zq::InvalidArgument("single index must be non-negative");
    const auto idx = zq::ModeIndex::from_single_index(static_cast<std::size_t>(index));
    *n = idx.n();
    *m = idx.m();
  });
}

zq_status zq_mode_count(int n_max, long* count) {
  return guard([&] {
    require(count, "count");
    if (n_max < 0) throw zq::InvalidArgument("n_max must be non-negative");
    *count = static_cast<long>(zq::mode_count(n_max));
  });
}

zq_status zq_radial(int n, int m, double rho, double* value) {
  return guard([&] {
    require(value, "value");
    *value = zq::radial(n, m, rho);
  });
}

zq_status zq_expansion_create(int n_max, zq_expansion** out) {
  return guard([&] {
    if (n_max < 0) throw zq::InvalidArgument("n_max must be non-negative");
    emit(out, zq::ZernikeExpansion(n_max));
  });
}

zq_status zq_expansion_from_json(const char* json, zq_expansion** out) {
  return guard([&] {
    require(json, "json");
    emit(out, zq::expansion_from_json(json));
  });
}

zq_status zq_expansion_to_json(const zq_expansion* e, char** json) {
  return guard([&] {
    require(e, "expansion");
    require(json, "json");
    *json = copy_string(zq::expansion_to_json(e->value));
  });
}

void zq_expansion_free(zq_expansion* e) { delete e; }

zq_status zq_expansion_n_max(const zq_expansion* e, int* n_max) {
  return guard([&] {
    require(e, "expansion");
    require(n_max, "n_max");
    *n_max = e->value.n_max();
  });
}

zq_status zq_expansion_size(const zq_expansion* e, size_t* size) {
  return guard([&] {
    require(e, "expansion");
    require(size, "size");
    *size = e->value.size();
  });
}

zq_status zq_expansion_set(zq_expansion* e, int n, int m, double re, double im) {
  return guard([&] {
    require(e, "expansion");
    e->value.set(zq::ModeIndex::validate(n, m), {re, im});
  });
}

zq_status zq_expansion_get(const zq_expansion* e, int n, int m, double* re, double* im) {
  return guard([&] {
    require(e, "expansion");
    require(re, "re");
    require(im, "im");
    const auto v = e->value.get(zq::ModeIndex::validate(n, m));
    *re = v.real();
    *im = v.imag();
  });
}

zq_status zq_expansion_entry(const zq_expansion* e, size_t i, int* n, int* m, double* re, double* im) {
  return guard([&] {
    require(e, "expansion");
    if (i >= e->value.size()) throw zq::InvalidArgument("entry index out of range");
    auto it = e->value.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(i));
    if (n) *n = it->first.n();
    if (m) *m = it->first.m();
    if (re) *re = it->second.real();
    if (im) *im = it->second.imag();
  });
}

zq_status zq_expansion_prune(zq_expansion* e, double threshold) {
  return guard([&] {
    require(e, "expansion");
    if (!(threshold >= 0.0)) throw zq::InvalidArgument("prune threshold must be non-negative");
    e->value = e->value.pruned(threshold);
  });
}

zq_status zq_expansion_rotate(const zq_expansion* e, double alpha, zq_expansion** out) {
  return guard([&] {
    require(e, "expansion");
    emit(out, zq::rotate_expansion(e->value, alpha));
  });
}

zq_status zq_expansion_product(const zq_expansion* a, const zq_expansion* b, zq_expansion** out) {
  return guard([&] {
    require(a, "expansion");
    require(b, "expansion");
    emit(out, zq::product_expansion(a->value, b->value));
  });
}

zq_status zq_expansion_reconstruct(const zq_expansion* e, double rho, double theta, double* re, double* im) {
  return guard([&] {
    require(e, "expansion");
    require(re, "re");
    require(im, "im");
    const auto v = zq::reconstruct(e->value, rho, theta);
    *re = v.real();
    *im = v.imag();
  });
}

zq_status zq_expansion_ft(const zq_expansion* e, double q, double phi, double* re, double* im) {
  return guard([&] {
    require(e, "expansion");
    require(re, "re");
    require(im, "im");
    const auto v = zq::expansion_ft(e->value, q, phi);
    *re = v.real();
    *im = v.imag();
  });
}

zq_status zq_grid_pupil(const zq_expansion* e, const zq_grid_spec* spec, zq_grid** out) {
  return guard([&] {
    require(e, "expansion");
    emit(out, zq::sample_pupil(e->value, to_spec(spec)));
  });
}

zq_status zq_grid_fraunhofer(const zq_expansion* e, const zq_grid_spec* spec, zq_grid** out) {
  return guard([&] {
    require(e, "expansion");
    emit(out, zq::fraunhofer_field(e->value, to_spec(spec)));
  });
}

zq_status zq_grid_fresnel(const zq_expansion* e, double z, double k, const zq_grid_spec* spec, zq_grid** out) {
  return guard([&] {
    require(e, "expansion");
    const zq::FresnelParams params{z, k};
    params.validate();
    emit(out, zq::fresnel_field(e->value, params, to_spec(spec)));
  });
}

zq_status zq_grid_from_csv(const char* text, zq_grid** out) {
  return guard([&] {
    require(text, "text");
    emit(out, zq::grid_from_csv(text));
  });
}

zq_status zq_grid_to_csv(const zq_grid* g, char** text) {
  return guard([&] {
    require(g, "grid");
    require(text, "text");
    *text = copy_string(zq::grid_to_csv(g->value));
  });
}

zq_status zq_grid_to_pgm(const zq_grid* g, unsigned char** data, size_t* size) {
  return guard([&] {
    require(g, "grid");
    require(data, "data");
    require(size, "size");
    const auto bytes = zq::grid_to_pgm(g->value);
    auto* buf = static_cast<unsigned char*>(std::malloc(bytes.size()));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, bytes.data(), bytes.size());
    *data = buf;
    *size = bytes.size();
  });
}

zq_status zq_grid_get_spec(const zq_grid* g, zq_grid_spec* spec, zq_plane* plane) {
  return guard([&] {
    require(g, "grid");
    const auto& s = g->value.spec();
    if (spec) *spec = zq_grid_spec{s.width, s.height, s.extent_x, s.extent_y};
    if (plane) *plane = static_cast<zq_plane>(g->value.plane());
  });
}

zq_status zq_grid_sample(const zq_grid* g, int ix, int iy, double* re, double* im) {
  return guard([&] {
    require(g, "grid");
    require(re, "re");
    require(im, "im");
    if (ix < 0 || iy < 0 || ix >= g->value.width() || iy >= g->value.height()) {
      throw zq::InvalidArgument("sample index out of range");
    }
    const auto v = g->value.at(ix, iy);
    *re = v.real();
    *im = v.imag();
  });
}

zq_status zq_grid_fit(const zq_grid* g, int n_max, zq_expansion** out, double* residual_rms) {
  return guard([&] {
    require(g, "grid");
    auto result = zq::fit_grid(g->value, n_max);
    if (residual_rms) *residual_rms = result.residual_rms;
    emit(out, std::move(result.expansion));
  });
}

void zq_grid_free(zq_grid* g) { delete g; }

zq_status zq_coupling_create(int n1, int m1, int n2, int m2, zq_coupling** out) {
  return guard([&] {
    emit(out, zq::coupling_coefficients(zq::ModeIndex::validate(n1, m1), zq::ModeIndex::validate(n2, m2)));
  });
}

zq_status zq_coupling_size(const zq_coupling* c, size_t* size) {
  return guard([&] {
    require(c, "coupling");
    require(size, "size");
    *size = c->value.size();
  });
}

zq_status zq_coupling_entry(const zq_coupling* c, size_t i, int* n3, int* m3, double* value) {
  return guard([&] {
    require(c, "coupling");
    if (i >= c->value.size()) throw zq::InvalidArgument("entry index out of range");
    auto it = c->value.entries.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(i));
    if (n3) *n3 = it->first;
    if (m3) *m3 = c->value.m3();
    if (value) *value = it->second;
  });
}

zq_status zq_coupling_to_json(const zq_coupling* c, char** json) {
  return guard([&] {
    require(c, "coupling");
    require(json, "json");
    *json = copy_string(zq::coupling_to_json(c->value));
  });
}

void zq_coupling_free(zq_coupling* c) { delete c; }

zq_status zq_spdc_zeta(const zq_expansion* pump, int n_max, zq_two_photon** out) {
  return guard([&] {
    require(pump, "pump");
    emit(out, zq::spdc_zeta(pump->value, n_max));
  });
}

zq_status zq_two_photon_dim(const zq_two_photon* s, size_t* dim) {
  return guard([&] {
    require(s, "state");
    require(dim, "dim");
    *dim = s->value.dim();
  });
}

zq_status zq_two_photon_raw_norm(const zq_two_photon* s, double* raw_norm) {
  return guard([&] {
    require(s, "state");
    require(raw_norm, "raw_norm");
    *raw_norm = s->value.raw_norm();
  });
}

zq_status zq_two_photon_entry(const zq_two_photon* s, size_t j1, size_t j2, double* re, double* im) {
  return guard([&] {
    require(s, "state");
    require(re, "re");
    require(im, "im");
    if (j1 >= s->value.dim() || j2 >= s->value.dim()) throw zq::InvalidArgument("entry index out of range");
    const auto v = s->value.at(j1, j2);
    *re = v.real();
    *im = v.imag();
  });
}

zq_status zq_two_photon_to_json(const zq_two_photon* s, char** json) {
  return guard([&] {
    require(s, "state");
    require(json, "json");
    *json = copy_string(zq::two_photon_to_json(s->value));
  });
}

void zq_two_photon_free(zq_two_photon* s) { delete s; }

zq_status zq_report_create(const zq_two_photon* s, double epsilon, zq_report** out) {
  return guard([&] {
    require(s, "state");
    emit(out, zq::entanglement_verdict(s->value, epsilon));
  });
}

zq_status zq_report_purity(const zq_report* r, double* purity) {
  return guard([&] {
    require(r, "report");
    require(purity, "purity");
    *purity = r->value.purity;
  });
}

zq_status zq_report_schmidt_number(const zq_report* r, double* k) {
  return guard([&] {
    require(r, "report");
    require(k, "k");
    *k = r->value.spectrum.schmidt_number;
  });
}

zq_status zq_report_verdict(const zq_report* r, const char** verdict) {
  return guard([&] {
    require(r, "report");
    require(verdict, "verdict");
    switch (r->value.verdict) {
      case zq::Verdict::Entangled: *verdict = "entangled"; break;
      case zq::Verdict::Product: *verdict = "product"; break;
      case zq::Verdict::Inconclusive: *verdict = "inconclusive"; break;
    }
  });
}

zq_status zq_report_to_json(const zq_report* r, char** json) {
  return guard([&] {
    require(r, "report");
    require(json, "json");
    *json = copy_string(zq::report_to_json(r->value));
  });
}

void zq_report_free(zq_report* r) { delete r; }

zq_status zq_verify(int n_max, zq_plane plane, char** text, int* passed) {
  return guard([&] {
    require(text, "text");
    require(passed, "passed");
    if (plane == ZQ_PLANE_FRESNEL) throw zq::InvalidArgument("verify supports the pupil and image planes");
    const auto checks = plane == ZQ_PLANE_IMAGE ? zq::verify_image(n_max) : zq::verify_pupil(n_max);
    std::string out;
    bool ok = true;
    for (const auto& c : checks) {
      char line[160];
      std::snprintf(line, sizeof line, "%-18s %.3e %.1e %s\n", c.name.c_str(), c.deviation, c.tolerance,
                    c.passed() ? "PASS" : "FAIL");
      out += line;
      ok = ok && c.passed();
    }
    *passed = ok ? 1 : 0;
    *text = copy_string(out);
  });
}

}  // extern "C"
