#include "ttnn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <thread>

#include "ttnn/errors.hpp"

namespace ttnn {

namespace {

void check_problem(const Tensor3& m, const ObservationMask& mask) {
  if (m.dims() != mask.dims()) {
    throw InvalidArgument("mask dimensions do not match the data tensor");
  }
}

// Sum of nuclear norms of every spectral slice: the baseline's objective.
double spectral_nuclear_sum(const Tensor3& x) {
  const SpectralTensor fx = dft_mode3(x);
  double total = 0.0;
  for (const auto& slice : fx.slices) {
    total += Eigen::BDCSVD<ComplexMatrix>(slice).singularValues().sum();
  }
  return total;
}

void require_orthonormal_rows(const Tensor3& f, const char* name) {
  const Tensor3 gram = t_product(f, conj_transpose(f));
  const double deviation = fro_norm(gram - identity_tensor(f.n1(), f.n3()));
  const double tol = 1e-8 * std::sqrt(static_cast<double>(f.n1()));
  if (!(deviation <= tol)) {
    throw SolverError(std::string("truncation factor ") + name +
                      " lost orthogonality: deviation " + std::to_string(deviation));
  }
}

SolverReport run(const Tensor3& m, const ObservationMask& mask, Method method,
                 const SolverConfig& cfg) {
  check_problem(m, mask);
  validate(cfg, m.dims(), method);

  const Tensor3 observed = restrict_to_observed(m, mask);
  const Tensor3 zero(m.dims());
  Tensor3 x = observed;

  SolverReport report{method, cfg, 0, 0, {}, {}, {}, {}, false, x};
  for (std::size_t outer = 1; outer <= cfg.outer_max; ++outer) {
    InnerResult inner = [&] {
      try {
        if (method == Method::tubal) return admm_inner(m, mask, zero, x, cfg);
        const TruncationFactors factors = truncation_factors(t_svd(x), cfg.r);
        require_orthonormal_rows(factors.A, "A");
        require_orthonormal_rows(factors.B, "B");
        return admm_inner(m, mask, factors, x, cfg);
      } catch (const SolverError& e) {
        throw SolverError("outer iteration " + std::to_string(outer) + ": " +
                          e.what());
      }
    }();

    const double step = fro_norm(inner.x - x);
    x = std::move(inner.x);
    report.outer_iterations = outer;
    report.total_inner_iterations += inner.iterations;
    report.inner_iterations.push_back(inner.iterations);
    report.inner_residuals.insert(report.inner_residuals.end(),
                                  inner.residuals.begin(), inner.residuals.end());
    report.outer_residuals.push_back(step);
    report.objective_history.push_back(method == Method::ttnn
                                           ? truncated_norm(x, cfg.r)
                                           : spectral_nuclear_sum(x));
    if (step <= cfg.outer_eps) {
      report.converged = true;
      break;
    }
  }
  report.recovered = std::move(x);
  return report;
}

}  // namespace

std::string_view method_name(Method m) {
  return m == Method::ttnn ? "ttnn" : "tubal";
}

Method parse_method(std::string_view name) {
  if (name == "ttnn") return Method::ttnn;
  if (name == "tubal") return Method::tubal;
  throw InvalidArgument("unknown method '" + std::string(name) +
                        "' (expected ttnn or tubal)");
}

void validate(const SolverConfig& cfg, const Dims& dims, Method method) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(cfg.mu)) throw InvalidArgument("mu must be positive");
  if (!positive(cfg.outer_eps)) throw InvalidArgument("outer_eps must be positive");
  if (!positive(cfg.inner_eps)) throw InvalidArgument("inner_eps must be positive");
  if (cfg.outer_max == 0) throw InvalidArgument("outer_max must be positive");
  if (cfg.inner_max == 0) throw InvalidArgument("inner_max must be positive");
  if (method == Method::ttnn &&
      (cfg.r < 1 || cfg.r > std::min(dims.n1, dims.n2))) {
    throw InvalidArgument("r = " + std::to_string(cfg.r) + " outside 1.." +
                          std::to_string(std::min(dims.n1, dims.n2)));
  }
}

InnerResult admm_inner(const Tensor3& m, const ObservationMask& mask,
                       const Tensor3& coupling, const Tensor3& x0,
                       const SolverConfig& cfg) {
  check_problem(m, mask);
  if (coupling.dims() != m.dims() || x0.dims() != m.dims()) {
    throw InvalidArgument("admm_inner: coupling and start must match the data shape");
  }
  const std::size_t count = m.size();
  const double inv_mu = 1.0 / cfg.mu;
  // Only observed entries of m enter the stopping scale.
  const double tolerance =
      cfg.inner_eps * std::max(1.0, fro_norm(restrict_to_observed(m, mask)));

  const auto md = m.data();
  const auto cd = coupling.data();
  std::vector<double> w(x0.data().begin(), x0.data().end());
  std::vector<double> y = w;
  std::vector<double> shifted(count);

  InnerResult result{x0, 0, {}, false};
  for (std::size_t k = 1; k <= cfg.inner_max; ++k) {
    for (std::size_t n = 0; n < count; ++n) shifted[n] = w[n] - y[n] * inv_mu;
    Tensor3 x = [&] {
      try {
        return t_svt(Tensor3(m.dims(), shifted), inv_mu);
      } catch (const Error& e) {
        throw SolverError("inner iteration " + std::to_string(k) + ": " + e.what());
      }
    }();

    const auto xd = x.data();
    double sq = 0.0;
    bool finite = true;
    for (std::size_t n = 0; n < count; ++n) {
      w[n] = mask.observed(n) ? md[n] : xd[n] + (cd[n] + y[n]) * inv_mu;
      const double gap = xd[n] - w[n];
      y[n] += cfg.mu * gap;
      sq += gap * gap;
      finite = finite && std::isfinite(w[n]) && std::isfinite(y[n]);
    }
    const double residual = std::sqrt(sq);
    if (!finite || !std::isfinite(residual)) {
      throw SolverError("inner iteration " + std::to_string(k) +
                        ": non-finite W or Y update");
    }
    result.residuals.push_back(residual);
    result.iterations = k;
    if (residual <= tolerance) {
      result.converged = true;
      break;
    }
  }
  result.x = Tensor3(m.dims(), std::move(w));
  return result;
}

InnerResult admm_inner(const Tensor3& m, const ObservationMask& mask,
                       const TruncationFactors& factors, const Tensor3& x0,
                       const SolverConfig& cfg) {
  return admm_inner(m, mask, t_product(conj_transpose(factors.A), factors.B), x0,
                    cfg);
}

SolverReport ttnn_complete(const Tensor3& m, const ObservationMask& mask,
                           const SolverConfig& cfg) {
  return run(m, mask, Method::ttnn, cfg);
}

SolverReport tubal_nn_complete(const Tensor3& m, const ObservationMask& mask,
                               const SolverConfig& cfg) {
  return run(m, mask, Method::tubal, cfg);
}

SolverReport complete(const Tensor3& m, const ObservationMask& mask,
                      Method method, const SolverConfig& cfg) {
  return run(m, mask, method, cfg);
}

SweepResult sweep_rank(const Tensor3& m, const ObservationMask& mask,
                       const Tensor3& truth, const SolverConfig& cfg,
                       std::size_t r_min, std::size_t r_max) {
  if (r_min < 1 || r_min > r_max) {
    throw InvalidArgument("sweep range must satisfy 1 <= r_min <= r_max");
  }
  SolverConfig probe = cfg;
  probe.r = r_max;
  validate(probe, m.dims(), Method::ttnn);
  if (truth.dims() != m.dims()) {
    throw InvalidArgument("sweep: truth shape differs from data");
  }

  auto solve_one = [&](std::size_t r) {
    SolverConfig c = cfg;
    c.r = r;
    const SolverReport rep = ttnn_complete(m, mask, c);
    return SweepRow{r, score(rep.recovered, truth, mask), rep.outer_iterations,
                    rep.total_inner_iterations};
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  SweepResult result;
  for (std::size_t start = r_min; start <= r_max; start += workers) {
    const std::size_t stop = std::min(r_max, start + workers - 1);
    if (stop == start) {
      result.rows.push_back(solve_one(start));
      continue;
    }
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t r = start; r <= stop; ++r) {
      batch.push_back(std::async(std::launch::async, solve_one, r));
    }
    for (auto& f : batch) result.rows.push_back(f.get());
  }

  const SweepRow* best = &result.rows.front();
  for (const auto& row : result.rows) {
    if (row.score.psnr > best->score.psnr) best = &row;
  }
  result.best_r = best->r;
  return result;
}

}  // namespace ttnn
