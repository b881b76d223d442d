/*
 * C interface to the ttnn tensor completion library.
 *
 * Objects are opaque handles created by ttnn_*_create / ttnn_*_load style
 * calls and released with the matching ttnn_*_destroy. Every fallible call
 * returns a ttnn_status; on failure ttnn_last_error() describes the problem
 * until the next failing call on the same thread. Output handles are only
 * written on success.
 */
#ifndef TTNN_TTNN_H
#define TTNN_TTNN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TTNN_API __declspec(dllexport)
#else
#define TTNN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ttnn_status {
  TTNN_OK = 0,
  TTNN_ERR_ARGUMENT = 1, /* bad shape, index, parameter or configuration */
  TTNN_ERR_IO = 2,       /* file missing, unreadable, malformed or unwritable */
  TTNN_ERR_SOLVER = 3,   /* numerical failure (SVD, non-finite iterate, ...) */
  TTNN_ERR_INTERNAL = 4
} ttnn_status;

typedef enum ttnn_method { TTNN_METHOD_TTNN = 0, TTNN_METHOD_TUBAL = 1 } ttnn_method;

typedef enum ttnn_loss_mode {
  TTNN_LOSS_ELEMENT = 0,
  TTNN_LOSS_PIXEL = 1
} ttnn_loss_mode;

typedef struct ttnn_tensor ttnn_tensor;
typedef struct ttnn_mask ttnn_mask;
typedef struct ttnn_report ttnn_report;

typedef struct ttnn_solver_config {
  size_t r;
  double mu;
  double outer_eps;
  size_t outer_max;
  double inner_eps;
  size_t inner_max;
} ttnn_solver_config;

typedef struct ttnn_report_summary {
  size_t outer_iterations;
  size_t total_inner_iterations;
  int converged;
} ttnn_report_summary;

typedef struct ttnn_score {
  double mse;
  double psnr; /* +inf for a perfect recovery */
  size_t missing_count;
} ttnn_score;

typedef struct ttnn_sweep_row {
  size_t r;
  double mse;
  double psnr;
  size_t outer_iterations;
  size_t total_inner_iterations;
} ttnn_sweep_row;

TTNN_API const char* ttnn_last_error(void);
TTNN_API const char* ttnn_version(void);

/* Tensors. Data is n1*n2*n3 doubles, first index fastest. */
TTNN_API ttnn_status ttnn_tensor_create(size_t n1, size_t n2, size_t n3,
                                        const double* data, ttnn_tensor** out);
TTNN_API void ttnn_tensor_destroy(ttnn_tensor* t);
TTNN_API ttnn_status ttnn_tensor_dims(const ttnn_tensor* t, size_t dims[3]);
TTNN_API ttnn_status ttnn_tensor_read(const ttnn_tensor* t, double* out, size_t len);
TTNN_API ttnn_status ttnn_tensor_load(const char* path, ttnn_tensor** out);
TTNN_API ttnn_status ttnn_tensor_save(const ttnn_tensor* t, const char* path);
TTNN_API ttnn_status ttnn_image_load(const char* path, ttnn_tensor** out);
TTNN_API ttnn_status ttnn_image_save(const ttnn_tensor* t, const char* path);
TTNN_API ttnn_status ttnn_frames_load(const char* dir, ttnn_tensor** out);
TTNN_API ttnn_status ttnn_synth_low_rank(size_t n1, size_t n2, size_t n3, size_t rank,
                                         uint64_t seed, ttnn_tensor** out);

/* t-algebra queries. tol is relative to the largest spectral singular value;
 * tol <= 0 selects the library default (1e-12). */
TTNN_API ttnn_status ttnn_tubal_rank(const ttnn_tensor* t, double tol, size_t* out);
TTNN_API ttnn_status ttnn_nuclear_norm(const ttnn_tensor* t, double* out);
TTNN_API ttnn_status ttnn_truncated_norm(const ttnn_tensor* t, size_t r, double* out);

/* Masks. */
TTNN_API ttnn_status ttnn_mask_random(size_t n1, size_t n2, size_t n3, double loss,
                                      ttnn_loss_mode mode, uint64_t seed,
                                      ttnn_mask** out);
TTNN_API ttnn_status ttnn_mask_load(const char* path, ttnn_mask** out);
TTNN_API ttnn_status ttnn_mask_save(const ttnn_mask* m, const char* path);
TTNN_API void ttnn_mask_destroy(ttnn_mask* m);
TTNN_API ttnn_status ttnn_mask_dims(const ttnn_mask* m, size_t dims[3]);
TTNN_API ttnn_status ttnn_mask_counts(const ttnn_mask* m, size_t* observed,
                                      size_t* missing);

/* Solving and scoring. */
TTNN_API void ttnn_solver_config_default(ttnn_solver_config* cfg);
TTNN_API ttnn_status ttnn_complete(const ttnn_tensor* data, const ttnn_mask* mask,
                                   ttnn_method method, const ttnn_solver_config* cfg,
                                   ttnn_report** out);
TTNN_API void ttnn_report_destroy(ttnn_report* r);
TTNN_API ttnn_status ttnn_report_summary_get(const ttnn_report* r,
                                             ttnn_report_summary* out);
/* New handle holding a copy of the recovered tensor. */
TTNN_API ttnn_status ttnn_report_recovered(const ttnn_report* r, ttnn_tensor** out);
/* Writes the key/value report and its sibling history CSV. score may be NULL
 * when nothing was missing. */
TTNN_API ttnn_status ttnn_report_save(const ttnn_report* r, const ttnn_score* score,
                                      uint64_t seed, const char* path);

TTNN_API ttnn_status ttnn_score_compute(const ttnn_tensor* recovered,
                                        const ttnn_tensor* truth, const ttnn_mask* mask,
                                        ttnn_score* out);

/* T-TNN for every r in [r_min, r_max]. rows must hold r_max - r_min + 1
 * entries. */
TTNN_API ttnn_status ttnn_sweep(const ttnn_tensor* data, const ttnn_mask* mask,
                                const ttnn_tensor* truth, const ttnn_solver_config* cfg,
                                size_t r_min, size_t r_max, ttnn_sweep_row* rows,
                                size_t rows_len, size_t* best_r);

#ifdef __cplusplus
}
#endif

#endif /* TTNN_TTNN_H */
