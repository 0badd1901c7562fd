/* C interface to the zq library. All handles are opaque; every function
 * returns a zq_status and leaves a message for zq_last_error() on failure.
 * Strings and buffers handed out by the library are released with
 * zq_string_free / zq_buffer_free. */
#ifndef ZQ_ZQ_H
#define ZQ_ZQ_H

#include <stddef.h>

#if defined(_WIN32)
#define ZQ_API __declspec(dllexport)
#else
#define ZQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zq_status {
  ZQ_OK = 0,
  ZQ_ERR_INVALID_MODE = 1,
  ZQ_ERR_INVALID_TRIPLE = 2,
  ZQ_ERR_DOMAIN = 3,
  ZQ_ERR_CAPACITY = 4,
  ZQ_ERR_CONVERGENCE = 5,
  ZQ_ERR_EMPTY_STATE = 6,
  ZQ_ERR_DEGENERATE_INPUT = 7,
  ZQ_ERR_EIGENSOLVER = 8,
  ZQ_ERR_INVALID_ARGUMENT = 9,
  ZQ_ERR_PARSE = 10,
  ZQ_ERR_COVERAGE = 11,
  ZQ_ERR_IO = 12,
  ZQ_ERR_INTERNAL = 13
} zq_status;

typedef struct zq_expansion zq_expansion;
typedef struct zq_grid zq_grid;
typedef struct zq_coupling zq_coupling;
typedef struct zq_two_photon zq_two_photon;
typedef struct zq_report zq_report;

typedef struct zq_grid_spec {
  int width;
  int height;
  double extent_x;
  double extent_y;
} zq_grid_spec;

typedef enum zq_plane { ZQ_PLANE_PUPIL = 0, ZQ_PLANE_IMAGE = 1, ZQ_PLANE_FRESNEL = 2 } zq_plane;

/* Message of the last failure on the calling thread ("" if none). */
ZQ_API const char* zq_last_error(void);
ZQ_API const char* zq_version(void);
ZQ_API void zq_string_free(char* s);
ZQ_API void zq_buffer_free(unsigned char* data);
/* 0 selects the hardware concurrency. */
ZQ_API zq_status zq_set_max_threads(int count);

/* Mode indices */
ZQ_API zq_status zq_mode_validate(int n, int m);
ZQ_API zq_status zq_mode_to_index(int n, int m, long* index);
ZQ_API zq_status zq_mode_from_index(long index, int* n, int* m);
ZQ_API zq_status zq_mode_count(int n_max, long* count);
ZQ_API zq_status zq_radial(int n, int m, double rho, double* value);

/* Expansions */
ZQ_API zq_status zq_expansion_create(int n_max, zq_expansion** out);
ZQ_API zq_status zq_expansion_from_json(const char* json, zq_expansion** out);
ZQ_API zq_status zq_expansion_to_json(const zq_expansion* e, char** json);
ZQ_API void zq_expansion_free(zq_expansion* e);
ZQ_API zq_status zq_expansion_n_max(const zq_expansion* e, int* n_max);
ZQ_API zq_status zq_expansion_size(const zq_expansion* e, size_t* size);
ZQ_API zq_status zq_expansion_set(zq_expansion* e, int n, int m, double re, double im);
ZQ_API zq_status zq_expansion_get(const zq_expansion* e, int n, int m, double* re, double* im);
/* i-th stored coefficient in single-index order. */
ZQ_API zq_status zq_expansion_entry(const zq_expansion* e, size_t i, int* n, int* m, double* re, double* im);
ZQ_API zq_status zq_expansion_prune(zq_expansion* e, double threshold);
ZQ_API zq_status zq_expansion_rotate(const zq_expansion* e, double alpha, zq_expansion** out);
ZQ_API zq_status zq_expansion_product(const zq_expansion* a, const zq_expansion* b, zq_expansion** out);
ZQ_API zq_status zq_expansion_reconstruct(const zq_expansion* e, double rho, double theta, double* re, double* im);
ZQ_API zq_status zq_expansion_ft(const zq_expansion* e, double q, double phi, double* re, double* im);

/* Field grids */
ZQ_API zq_status zq_grid_pupil(const zq_expansion* e, const zq_grid_spec* spec, zq_grid** out);
ZQ_API zq_status zq_grid_fraunhofer(const zq_expansion* e, const zq_grid_spec* spec, zq_grid** out);
/* Samples in diffraction units rho = k r / (2 pi z). */
ZQ_API zq_status zq_grid_fresnel(const zq_expansion* e, double z, double k, const zq_grid_spec* spec, zq_grid** out);
ZQ_API zq_status zq_grid_from_csv(const char* text, zq_grid** out);
ZQ_API zq_status zq_grid_to_csv(const zq_grid* g, char** text);
ZQ_API zq_status zq_grid_to_pgm(const zq_grid* g, unsigned char** data, size_t* size);
ZQ_API zq_status zq_grid_get_spec(const zq_grid* g, zq_grid_spec* spec, zq_plane* plane);
ZQ_API zq_status zq_grid_sample(const zq_grid* g, int ix, int iy, double* re, double* im);
/* Least-squares fit over the in-disc samples. */
ZQ_API zq_status zq_grid_fit(const zq_grid* g, int n_max, zq_expansion** out, double* residual_rms);
ZQ_API void zq_grid_free(zq_grid* g);

/* Linearization tables */
ZQ_API zq_status zq_coupling_create(int n1, int m1, int n2, int m2, zq_coupling** out);
ZQ_API zq_status zq_coupling_size(const zq_coupling* c, size_t* size);
ZQ_API zq_status zq_coupling_entry(const zq_coupling* c, size_t i, int* n3, int* m3, double* value);
ZQ_API zq_status zq_coupling_to_json(const zq_coupling* c, char** json);
ZQ_API void zq_coupling_free(zq_coupling* c);

/* Two-photon states */
ZQ_API zq_status zq_spdc_zeta(const zq_expansion* pump, int n_max, zq_two_photon** out);
ZQ_API zq_status zq_two_photon_dim(const zq_two_photon* s, size_t* dim);
ZQ_API zq_status zq_two_photon_raw_norm(const zq_two_photon* s, double* raw_norm);
ZQ_API zq_status zq_two_photon_entry(const zq_two_photon* s, size_t j1, size_t j2, double* re, double* im);
ZQ_API zq_status zq_two_photon_to_json(const zq_two_photon* s, char** json);
ZQ_API void zq_two_photon_free(zq_two_photon* s);

/* Entanglement reports */
ZQ_API zq_status zq_report_create(const zq_two_photon* s, double epsilon, zq_report** out);
ZQ_API zq_status zq_report_purity(const zq_report* r, double* purity);
ZQ_API zq_status zq_report_schmidt_number(const zq_report* r, double* k);
/* "entangled", "product" or "inconclusive"; static storage. */
ZQ_API zq_status zq_report_verdict(const zq_report* r, const char** verdict);
ZQ_API zq_status zq_report_to_json(const zq_report* r, char** json);
ZQ_API void zq_report_free(zq_report* r);

/* Self-check suites. text receives one "name deviation tolerance PASS|FAIL"
 * line per check; passed is 1 iff every check is within tolerance. */
ZQ_API zq_status zq_verify(int n_max, zq_plane plane, char** text, int* passed);

#ifdef __cplusplus
}
#endif

#endif
