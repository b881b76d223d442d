#pragma once

// Low-rank tensor completion.
//
// ttnn_complete alternates two steps. Step 1 takes the t-SVD of the current
// estimate X_l and keeps the leading r lateral slices of U and V as the
// truncation factors A, B. Step 2 minimizes
//
//     ||X||_* - tr(A * X * B^T)   s.t.  X = M on the observed entries
//
// with a three-step ADMM over the split X = W:
//
//     X <- t_svt(W - Y/mu, 1/mu)
//     W <- X + (A^T * B + Y)/mu,  then W = M on the observed entries
//     Y <- Y + mu (X - W)
//
// tubal_nn_complete runs the same loops with A^T * B replaced by zero.

#include <cstddef>
#include <string_view>
#include <vector>

#include "ttnn/mask.hpp"
#include "ttnn/metrics.hpp"
#include "ttnn/talgebra.hpp"
#include "ttnn/tensor.hpp"

namespace ttnn {

enum class Method { ttnn, tubal };

std::string_view method_name(Method m);
/// Parses "ttnn" or "tubal"; throws InvalidArgument otherwise.
Method parse_method(std::string_view name);

struct SolverConfig {
  std::size_t r = 1;          // truncation count
  double mu = 5e-4;           // ADMM penalty
  double outer_eps = 1e-3;    // on ||X_{l+1} - X_l||_F
  std::size_t outer_max = 50;
  double inner_eps = 1e-4;    // on ||X_k - W_k||_F / max(1, ||M_obs||_F)
  std::size_t inner_max = 200;
};

/// Throws InvalidArgument unless every tolerance and cap is positive and,
/// for T-TNN, 1 <= r <= min(n1, n2).
void validate(const SolverConfig& cfg, const Dims& dims, Method method);

struct SolverReport {
  Method method = Method::ttnn;
  SolverConfig config;
  std::size_t outer_iterations = 0;
  std::size_t total_inner_iterations = 0;
  std::vector<std::size_t> inner_iterations;  // per outer iteration
  std::vector<double> inner_residuals;        // ||X_k - W_k||_F, every inner step
  std::vector<double> outer_residuals;        // ||X_{l+1} - X_l||_F
  std::vector<double> objective_history;      // per outer iteration
  bool converged = false;  // false when the outer cap ended the run
  Tensor3 recovered;
};

struct InnerResult {
  Tensor3 x;  // the last W iterate: equals M on every observed entry
  std::size_t iterations = 0;
  std::vector<double> residuals;
  bool converged = false;
};

/// ADMM for step 2 with a precomputed coupling term A^T * B (n1 x n2 x n3;
/// zero for the baseline). X, W and Y all start at x0.
InnerResult admm_inner(const Tensor3& m, const ObservationMask& mask,
                       const Tensor3& coupling, const Tensor3& x0,
                       const SolverConfig& cfg);

/// Same, forming the coupling term from the truncation factors.
InnerResult admm_inner(const Tensor3& m, const ObservationMask& mask,
                       const TruncationFactors& factors, const Tensor3& x0,
                       const SolverConfig& cfg);

/// Only the observed entries of m are read.
SolverReport ttnn_complete(const Tensor3& m, const ObservationMask& mask,
                           const SolverConfig& cfg);

/// Baseline minimizing the sum of nuclear norms of all spectral slices.
/// cfg.r is ignored.
SolverReport tubal_nn_complete(const Tensor3& m, const ObservationMask& mask,
                               const SolverConfig& cfg);

SolverReport complete(const Tensor3& m, const ObservationMask& mask,
                      Method method, const SolverConfig& cfg);

struct SweepRow {
  std::size_t r = 0;
  RecoveryScore score;
  std::size_t outer_iterations = 0;
  std::size_t total_inner_iterations = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ascending r
  std::size_t best_r = 0;      // argmax psnr, ties to the smaller r
};

/// Runs T-TNN for every r in [r_min, r_max] and scores each against truth.
/// Independent solves may run concurrently; the result does not depend on
/// scheduling.
SweepResult sweep_rank(const Tensor3& m, const ObservationMask& mask,
                       const Tensor3& truth, const SolverConfig& cfg,
                       std::size_t r_min, std::size_t r_max);

}  // namespace ttnn
