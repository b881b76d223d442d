// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
//   acceptance [--r-max N]
//
// --r-max bounds the rank sweep used for the image comparison (default 5).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "ttnn/io.hpp"
#include "ttnn/metrics.hpp"
#include "ttnn/solver.hpp"
#include "ttnn/spectral.hpp"
#include "ttnn/talgebra.hpp"

using namespace ttnn;
using namespace ttnn::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

char buf[512];

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Dims dims_up_to(std::mt19937_64& rng, std::size_t a, std::size_t b, std::size_t c) {
  return random_dims(rng, a, b, c);
}

Outcome tproduct_conformance() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Dims da = dims_up_to(rng, 6, 5, 4);
    std::uniform_int_distribution<std::size_t> cols(1, 5);
    const Tensor3 a = random_tensor(da, rng);
    const Tensor3 b = random_tensor({da.n2, cols(rng), da.n3}, rng);
    worst = std::max(worst, rel_err(t_product(a, b), bcirc_product(a, b)));
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-8 && elapsed < 10.0,
          fmt("max rel err %.2e (<= 1e-8), %.2f s (< 10 s)", worst, elapsed)};
}

Outcome tsvd_suite() {
  std::mt19937_64 rng(202);
  double recon = 0.0, orth = 0.0, offdiag = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Tensor3 a = random_tensor(dims_up_to(rng, 6, 6, 5), rng);
    const TSvdFactors f = t_svd(a);
    const Tensor3 back = t_product(t_product(f.U, f.S), conj_transpose(f.V));
    recon = std::max(recon, fro_norm(back - a) / fro_norm(a));

    for (const Tensor3* q : {&f.U, &f.V}) {
      const Tensor3 id = identity_tensor(q->n1(), q->n3());
      const double scale = std::sqrt(static_cast<double>(q->n1()));
      orth = std::max(orth, fro_norm(t_product(conj_transpose(*q), *q) - id) / scale);
      orth = std::max(orth, fro_norm(t_product(*q, conj_transpose(*q)) - id) / scale);
    }

    double off = 0.0;
    for (std::size_t k = 1; k <= f.S.n3(); ++k)
      for (std::size_t j = 1; j <= f.S.n2(); ++j)
        for (std::size_t i = 1; i <= f.S.n1(); ++i)
          if (i != j) off += f.S(i, j, k) * f.S(i, j, k);
    const double s_norm = fro_norm(f.S);
    offdiag = std::max(offdiag, s_norm > 0.0 ? std::sqrt(off) / s_norm : std::sqrt(off));
  }
  return {recon <= 1e-8 && orth <= 1e-8 && offdiag <= 1e-10,
          fmt("reconstruction %.2e (<= 1e-8), orthogonality %.2e (<= 1e-8 sqrt n), "
              "off-diagonal %.2e (<= 1e-10)",
              recon, orth, offdiag)};
}

Outcome trace_identity() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Dims da = dims_up_to(rng, 6, 6, 5);
    const Tensor3 a = random_tensor(da, rng);
    const Tensor3 b = random_tensor({da.n2, da.n1, da.n3}, rng);
    const double lhs = trace(bcirc_product(a, b));
    const Complex rhs = (dft_mode3(a).slices[0] * dft_mode3(b).slices[0]).trace();
    const double err = std::abs(Complex(lhs, 0.0) - rhs) / std::max(1.0, std::abs(lhs));
    worst = std::max(worst, err);
  }
  return {worst <= 1e-8, fmt("max rel err %.2e (<= 1e-8) over 100 pairs", worst)};
}

Outcome norm_identities() {
  std::mt19937_64 rng(404);
  double trace_err = 0.0, matrix_err = 0.0, zero_err = 0.0;
  bool monotone = true;
  for (int n = 0; n < 50; ++n) {
    // The tensor trace needs square slices.
    const Dims ds = dims_up_to(rng, 6, 6, 5);
    const Tensor3 sq = random_tensor({ds.n1, ds.n1, ds.n3}, rng);
    const double nuclear = jacobi_nuclear_norm(slice_sum(sq));
    trace_err = std::max(trace_err,
                         std::abs(trace(t_svd(sq).S) - nuclear) / std::max(1.0, nuclear));

    const Tensor3 x = random_tensor(dims_up_to(rng, 6, 6, 5), rng);

    const double tnn = tensor_nuclear_norm(x);
    zero_err = std::max(zero_err, std::abs(truncated_norm(x, 0) - tnn));
    double last = truncated_norm(x, 0);
    for (std::size_t r = 1; r <= std::min(x.n1(), x.n2()); ++r) {
      const double now = truncated_norm(x, r);
      monotone = monotone && now <= last;
      last = now;
    }

    const Tensor3 flat = random_tensor(dims_up_to(rng, 6, 6, 1), rng);
    const double want = jacobi_nuclear_norm(frontal_slice(flat, 1));
    matrix_err = std::max(matrix_err, std::abs(tensor_nuclear_norm(flat) - want) /
                                          std::max(1.0, want));
  }
  return {trace_err <= 1e-8 && matrix_err <= 1e-10 && zero_err == 0.0 && monotone,
          fmt("tr(S) vs ||sum of slices||_* %.2e (<= 1e-8), n3 = 1 vs matrix %.2e "
              "(<= 1e-10), truncated_norm(., 0) gap %.1e, nonincreasing in r: %s",
              trace_err, matrix_err, zero_err, monotone ? "yes" : "no")};
}

Outcome diagonalization() {
  std::mt19937_64 rng(505);
  double worst = 0.0;
  for (int n = 0; n < 40; ++n) {
    const Dims d = dims_up_to(rng, 3, 3, 4);
    const Tensor3 a = random_tensor(d, rng);
    const ComplexMatrix f = unitary_dft_matrix(d.n3);
    const auto i1 = ComplexMatrix::Identity(static_cast<Eigen::Index>(d.n1),
                                            static_cast<Eigen::Index>(d.n1));
    const auto i2 = ComplexMatrix::Identity(static_cast<Eigen::Index>(d.n2),
                                            static_cast<Eigen::Index>(d.n2));
    const ComplexMatrix lhs =
        kron(f, i1) * bcirc(a).cast<Complex>() * kron(f.adjoint(), i2);
    worst = std::max(worst, rel_err(lhs, bdiag(dft_mode3(a))));
  }
  return {worst <= 1e-8, fmt("max rel err %.2e (<= 1e-8), dims up to 3x3x4", worst)};
}

bool exact_on_observed(const Tensor3& rec, const Tensor3& m, const ObservationMask& mask) {
  for (std::size_t n = 0; n < rec.size(); ++n) {
    if (mask.observed(n) &&
        std::memcmp(&rec.data()[n], &m.data()[n], sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

Outcome synthetic_recovery() {
  const auto t0 = Clock::now();
  const Tensor3 truth = synth_low_rank({30, 30, 5}, 2, 1);
  const ObservationMask mask = random_mask(truth.dims(), 0.3, LossMode::element, 1);
  SolverConfig cfg;
  cfg.r = 2;
  const SolverReport rep = ttnn_complete(truth, mask, cfg);
  const double err = rel_err(rep.recovered, truth);
  const double elapsed = seconds_since(t0);
  return {err <= 1e-2 && rep.outer_iterations <= 50 && elapsed < 60.0,
          fmt("rel err %.2e (<= 1e-2), %zu outer / %zu inner iterations, %.2f s (< 60 s)",
              err, rep.outer_iterations, rep.total_inner_iterations, elapsed)};
}

Outcome baseline_ordering(std::size_t r_max) {
  const auto t0 = Clock::now();
  const Tensor3 image = load_image(std::string(TTNN_TEST_DATA) + "/test_image_64.png");
  const ObservationMask mask = random_mask(image.dims(), 0.5, LossMode::pixel, 7);
  const SolverConfig cfg;

  const SweepResult sweep = sweep_rank(image, mask, image, cfg, 1, r_max);
  const double p_ttnn = sweep.rows[sweep.best_r - 1].score.psnr;
  const SolverReport tubal = tubal_nn_complete(image, mask, cfg);
  const double p_tubal = score(tubal.recovered, image, mask).psnr;

  std::string rows;
  for (const auto& row : sweep.rows) rows += fmt(" r%zu=%.2f", row.r, row.score.psnr);
  return {p_ttnn >= p_tubal - 0.2,
          fmt("T-TNN %.3f dB (r = %zu from 1..%zu) vs Tubal-NN %.3f dB, margin %+.3f dB "
              "(>= -0.2); sweep:%s; %.0f s",
              p_ttnn, sweep.best_r, r_max, p_tubal, p_ttnn - p_tubal, rows.c_str(),
              seconds_since(t0))};
}

Outcome fidelity_and_determinism() {
  ScratchDir dir("accept");
  const Tensor3 truth = synth_low_rank({20, 18, 4}, 2, 9);
  const ObservationMask mask = random_mask(truth.dims(), 0.4, LossMode::element, 9);
  // Unobserved entries carry junk so only the mask decides what is known.
  std::vector<double> noisy(truth.data().begin(), truth.data().end());
  for (std::size_t n = 0; n < noisy.size(); ++n)
    if (!mask.observed(n)) noisy[n] = 1e3 + static_cast<double>(n);
  const Tensor3 m(truth.dims(), noisy);

  bool exact = true, same = true;
  for (Method method : {Method::ttnn, Method::tubal}) {
    SolverConfig cfg;
    cfg.r = 2;
    std::vector<std::string> reports, tensors;
    for (int run = 0; run < 2; ++run) {
      const SolverReport rep = complete(m, mask, method, cfg);
      exact = exact && exact_on_observed(rep.recovered, m, mask);
      const auto path = dir / ("run" + std::to_string(run) + ".txt");
      save_report(rep, score(rep.recovered, truth, mask), 9, path);
      reports.push_back(slurp(path) + slurp(history_path(path)));
      const auto bytes = encode_tensor(rep.recovered);
      tensors.emplace_back(bytes.begin(), bytes.end());
    }
    same = same && reports[0] == reports[1] && tensors[0] == tensors[1];
  }
  return {exact && same, fmt("observed entries bitwise equal: %s; repeated runs "
                             "byte-identical (report, history, tensor): %s",
                             exact ? "yes" : "no", same ? "yes" : "no")};
}

Outcome metrics_oracle() {
  std::mt19937_64 rng(909);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const Dims d = dims_up_to(rng, 8, 8, 4);
    if (d.count() < 2) continue;
    const Tensor3 a = random_tensor(d, rng);
    const Tensor3 b = random_tensor(d, rng);
    const ObservationMask mask = random_mask(d, 0.5, LossMode::element, rng());
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 1; k <= d.n3; ++k)
      for (std::size_t j = 1; j <= d.n2; ++j)
        for (std::size_t i = 1; i <= d.n1; ++i) {
          if (mask.observed(i, j, k)) continue;
          const double diff = a(i, j, k) - b(i, j, k);
          sum += diff * diff;
          ++count;
        }
    const double mse = sum / static_cast<double>(count);
    const RecoveryScore s = score(a, b, mask);
    worst = std::max(worst, std::abs(s.mse - mse) / std::max(1.0, mse));
    const double psnr = 10.0 * std::log10(255.0 * 255.0 / mse);
    worst = std::max(worst, std::abs(s.psnr - psnr) / std::max(1.0, std::abs(psnr)));
  }
  const Dims d{4, 4, 3};
  const Tensor3 zero(d);
  const Tensor3 off(d, std::vector<double>(d.count(), 255.0));
  const double analytic = score(off, zero, random_mask(d, 0.5, LossMode::pixel, 1)).psnr;
  return {worst <= 1e-12 && analytic == 0.0,
          fmt("max rel err vs elementwise oracle %.2e (<= 1e-12); 255-offset case %.17g dB",
              worst, analytic)};
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t r_max = 5;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--r-max") == 0 && a + 1 < argc) {
      r_max = std::strtoul(argv[++a], nullptr, 10);
    } else {
      std::fprintf(stderr, "usage: %s [--r-max N]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"t-algebra conformance", tproduct_conformance},
      {"t-SVD suite", tsvd_suite},
      {"trace identity", trace_identity},
      {"norm identities", norm_identities},
      {"diagonalization identity", diagonalization},
      {"synthetic exact recovery", synthetic_recovery},
      {"baseline ordering", [r_max] { return baseline_ordering(r_max); }},
      {"fidelity and determinism", fidelity_and_determinism},
      {"metrics", metrics_oracle},
  };

  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", n + 1, criteria[n].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
