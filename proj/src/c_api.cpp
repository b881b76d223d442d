#include "ttnn/ttnn.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>

#include "ttnn/errors.hpp"
#include "ttnn/io.hpp"
#include "ttnn/metrics.hpp"
#include "ttnn/solver.hpp"
#include "ttnn/talgebra.hpp"

struct ttnn_tensor {
  ttnn::Tensor3 value;
};

struct ttnn_mask {
  ttnn::ObservationMask value;
};

struct ttnn_report {
  ttnn::SolverReport value;
};

namespace {

thread_local std::string last_error;

ttnn_status fail(ttnn_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs body, mapping the library's exception hierarchy onto status codes.
template <typename Body>
ttnn_status guarded(Body&& body) {
  try {
    body();
    return TTNN_OK;
  } catch (const ttnn::InvalidArgument& e) {
    return fail(TTNN_ERR_ARGUMENT, e.what());
  } catch (const ttnn::IoError& e) {
    return fail(TTNN_ERR_IO, e.what());
  } catch (const ttnn::SolverError& e) {
    return fail(TTNN_ERR_SOLVER, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(TTNN_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TTNN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TTNN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TTNN_ERR_INTERNAL, "unknown error");
  }
}

#define TTNN_REQUIRE(ptr)                                                   \
  do {                                                                      \
    if ((ptr) == nullptr) return fail(TTNN_ERR_ARGUMENT, #ptr " is NULL"); \
  } while (0)

ttnn::SolverConfig to_config(const ttnn_solver_config& c) {
  return {c.r, c.mu, c.outer_eps, c.outer_max, c.inner_eps, c.inner_max};
}

ttnn::Method to_method(ttnn_method m) {
  switch (m) {
    case TTNN_METHOD_TTNN:
      return ttnn::Method::ttnn;
    case TTNN_METHOD_TUBAL:
      return ttnn::Method::tubal;
  }
  throw ttnn::InvalidArgument("unknown method");
}

void put_dims(const ttnn::Dims& d, size_t dims[3]) {
  dims[0] = d.n1;
  dims[1] = d.n2;
  dims[2] = d.n3;
}

ttnn_tensor* wrap(ttnn::Tensor3 t) { return new ttnn_tensor{std::move(t)}; }

}  // namespace

extern "C" {

const char* ttnn_last_error(void) { return last_error.c_str(); }

const char* ttnn_version(void) { return "1.0.0"; }

ttnn_status ttnn_tensor_create(size_t n1, size_t n2, size_t n3, const double* data,
                               ttnn_tensor** out) {
  TTNN_REQUIRE(data);
  TTNN_REQUIRE(out);
  return guarded([&] {
    const ttnn::Dims d{n1, n2, n3};
    ttnn::check_dims(d);
    *out = wrap(ttnn::Tensor3(d, std::vector<double>(data, data + d.count())));
  });
}

void ttnn_tensor_destroy(ttnn_tensor* t) { delete t; }

ttnn_status ttnn_tensor_dims(const ttnn_tensor* t, size_t dims[3]) {
  TTNN_REQUIRE(t);
  TTNN_REQUIRE(dims);
  put_dims(t->value.dims(), dims);
  return TTNN_OK;
}

ttnn_status ttnn_tensor_read(const ttnn_tensor* t, double* out, size_t len) {
  TTNN_REQUIRE(t);
  TTNN_REQUIRE(out);
  if (len != t->value.size()) {
    return fail(TTNN_ERR_ARGUMENT, "output buffer length does not match tensor size");
  }
  std::copy(t->value.data().begin(), t->value.data().end(), out);
  return TTNN_OK;
}

ttnn_status ttnn_tensor_load(const char* path, ttnn_tensor** out) {
  TTNN_REQUIRE(path);
  TTNN_REQUIRE(out);
  return guarded([&] { *out = wrap(ttnn::read_tensor(path)); });
}

ttnn_status ttnn_tensor_save(const ttnn_tensor* t, const char* path) {
  TTNN_REQUIRE(t);
  TTNN_REQUIRE(path);
  return guarded([&] { ttnn::write_tensor(t->value, path); });
}

ttnn_status ttnn_image_load(const char* path, ttnn_tensor** out) {
  TTNN_REQUIRE(path);
  TTNN_REQUIRE(out);
  return guarded([&] { *out = wrap(ttnn::load_image(path)); });
}

ttnn_status ttnn_image_save(const ttnn_tensor* t, const char* path) {
  TTNN_REQUIRE(t);
  TTNN_REQUIRE(path);
  return guarded([&] { ttnn::save_image(t->value, path); });
}

ttnn_status ttnn_frames_load(const char* dir, ttnn_tensor** out) {
  TTNN_REQUIRE(dir);
  TTNN_REQUIRE(out);
  return guarded([&] { *out = wrap(ttnn::load_frames(dir)); });
}

ttnn_status ttnn_synth_low_rank(size_t n1, size_t n2, size_t n3, size_t rank,
                                uint64_t seed, ttnn_tensor** out) {
  TTNN_REQUIRE(out);
  return guarded([&] { *out = wrap(ttnn::synth_low_rank({n1, n2, n3}, rank, seed)); });
}

ttnn_status ttnn_tubal_rank(const ttnn_tensor* t, double tol, size_t* out) {
  TTNN_REQUIRE(t);
  TTNN_REQUIRE(out);
  return guarded([&] {
    if (std::isnan(tol)) throw ttnn::InvalidArgument("tolerance is NaN");
    *out = ttnn::tubal_rank(ttnn::t_svd(t->value), tol > 0.0 ? tol : ttnn::kRankTolerance);
  });
}

ttnn_status ttnn_nuclear_norm(const ttnn_tensor* t, double* out) {
  TTNN_REQUIRE(t);
  TTNN_REQUIRE(out);
  return guarded([&] { *out = ttnn::tensor_nuclear_norm(t->value); });
}

ttnn_status ttnn_truncated_norm(const ttnn_tensor* t, size_t r, double* out) {
  TTNN_REQUIRE(t);
  TTNN_REQUIRE(out);
  return guarded([&] { *out = ttnn::truncated_norm(t->value, r); });
}

ttnn_status ttnn_mask_random(size_t n1, size_t n2, size_t n3, double loss,
                             ttnn_loss_mode mode, uint64_t seed, ttnn_mask** out) {
  TTNN_REQUIRE(out);
  if (mode != TTNN_LOSS_ELEMENT && mode != TTNN_LOSS_PIXEL) {
    return fail(TTNN_ERR_ARGUMENT, "unknown loss mode");
  }
  return guarded([&] {
    const auto m =
        mode == TTNN_LOSS_PIXEL ? ttnn::LossMode::pixel : ttnn::LossMode::element;
    *out = new ttnn_mask{ttnn::random_mask({n1, n2, n3}, loss, m, seed)};
  });
}

ttnn_status ttnn_mask_load(const char* path, ttnn_mask** out) {
  TTNN_REQUIRE(path);
  TTNN_REQUIRE(out);
  return guarded([&] { *out = new ttnn_mask{ttnn::read_mask(path)}; });
}

ttnn_status ttnn_mask_save(const ttnn_mask* m, const char* path) {
  TTNN_REQUIRE(m);
  TTNN_REQUIRE(path);
  return guarded([&] { ttnn::write_mask(m->value, path); });
}

void ttnn_mask_destroy(ttnn_mask* m) { delete m; }

ttnn_status ttnn_mask_dims(const ttnn_mask* m, size_t dims[3]) {
  TTNN_REQUIRE(m);
  TTNN_REQUIRE(dims);
  put_dims(m->value.dims(), dims);
  return TTNN_OK;
}

ttnn_status ttnn_mask_counts(const ttnn_mask* m, size_t* observed, size_t* missing) {
  TTNN_REQUIRE(m);
  if (observed) *observed = m->value.observed_count();
  if (missing) *missing = m->value.missing_count();
  return TTNN_OK;
}

void ttnn_solver_config_default(ttnn_solver_config* cfg) {
  if (cfg == nullptr) return;
  const ttnn::SolverConfig d;
  *cfg = {d.r, d.mu, d.outer_eps, d.outer_max, d.inner_eps, d.inner_max};
}

ttnn_status ttnn_complete(const ttnn_tensor* data, const ttnn_mask* mask,
                          ttnn_method method, const ttnn_solver_config* cfg,
                          ttnn_report** out) {
  TTNN_REQUIRE(data);
  TTNN_REQUIRE(mask);
  TTNN_REQUIRE(cfg);
  TTNN_REQUIRE(out);
  return guarded([&] {
    *out = new ttnn_report{
        ttnn::complete(data->value, mask->value, to_method(method), to_config(*cfg))};
  });
}

void ttnn_report_destroy(ttnn_report* r) { delete r; }

ttnn_status ttnn_report_summary_get(const ttnn_report* r, ttnn_report_summary* out) {
  TTNN_REQUIRE(r);
  TTNN_REQUIRE(out);
  out->outer_iterations = r->value.outer_iterations;
  out->total_inner_iterations = r->value.total_inner_iterations;
  out->converged = r->value.converged ? 1 : 0;
  return TTNN_OK;
}

ttnn_status ttnn_report_recovered(const ttnn_report* r, ttnn_tensor** out) {
  TTNN_REQUIRE(r);
  TTNN_REQUIRE(out);
  return guarded([&] { *out = wrap(r->value.recovered); });
}

ttnn_status ttnn_report_save(const ttnn_report* r, const ttnn_score* score,
                             uint64_t seed, const char* path) {
  TTNN_REQUIRE(r);
  TTNN_REQUIRE(path);
  return guarded([&] {
    std::optional<ttnn::RecoveryScore> s;
    if (score) s = ttnn::RecoveryScore{score->mse, score->psnr, score->missing_count};
    ttnn::save_report(r->value, s, seed, path);
  });
}

ttnn_status ttnn_score_compute(const ttnn_tensor* recovered, const ttnn_tensor* truth,
                               const ttnn_mask* mask, ttnn_score* out) {
  TTNN_REQUIRE(recovered);
  TTNN_REQUIRE(truth);
  TTNN_REQUIRE(mask);
  TTNN_REQUIRE(out);
  return guarded([&] {
    const auto s = ttnn::score(recovered->value, truth->value, mask->value);
    *out = {s.mse, s.psnr, s.missing_count};
  });
}

ttnn_status ttnn_sweep(const ttnn_tensor* data, const ttnn_mask* mask,
                       const ttnn_tensor* truth, const ttnn_solver_config* cfg,
                       size_t r_min, size_t r_max, ttnn_sweep_row* rows,
                       size_t rows_len, size_t* best_r) {
  TTNN_REQUIRE(data);
  TTNN_REQUIRE(mask);
  TTNN_REQUIRE(truth);
  TTNN_REQUIRE(cfg);
  TTNN_REQUIRE(rows);
  TTNN_REQUIRE(best_r);
  if (r_min > r_max || rows_len != r_max - r_min + 1) {
    return fail(TTNN_ERR_ARGUMENT, "rows_len must equal r_max - r_min + 1");
  }
  return guarded([&] {
    const auto result = ttnn::sweep_rank(data->value, mask->value, truth->value,
                                         to_config(*cfg), r_min, r_max);
    for (size_t n = 0; n < result.rows.size(); ++n) {
      const auto& row = result.rows[n];
      rows[n] = {row.r, row.score.mse, row.score.psnr, row.outer_iterations,
                 row.total_inner_iterations};
    }
    *best_r = result.best_r;
  });
}

}  // extern "C"
