#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "support.hpp"
#include "ttnn/errors.hpp"
#include "ttnn/metrics.hpp"

using namespace ttnn;
using ttnn::test::random_tensor;

namespace {

ObservationMask checkerboard(const Dims& d) {
  std::vector<std::uint8_t> flags(d.count());
  for (std::size_t e = 0; e < flags.size(); ++e) flags[e] = e % 2 == 0;
  return ObservationMask(d, flags);
}

// Straight from the definition, one entry at a time.
double brute_mse(const Tensor3& a, const Tensor3& b, const ObservationMask& m) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 1; k <= a.n3(); ++k)
    for (std::size_t j = 1; j <= a.n2(); ++j)
      for (std::size_t i = 1; i <= a.n1(); ++i) {
        if (m.observed(i, j, k)) continue;
        const double diff = a(i, j, k) - b(i, j, k);
        sum += diff * diff;
        ++n;
      }
  return sum / static_cast<double>(n);
}

}  // namespace

TEST_CASE("perfect recovery scores infinite PSNR") {
  std::mt19937_64 rng(1);
  const Tensor3 t = random_tensor({4, 4, 3}, rng);
  const RecoveryScore s = score(t, t, checkerboard(t.dims()));
  CHECK(s.mse == 0.0);
  CHECK(std::isinf(s.psnr));
  CHECK(s.psnr > 0.0);
  CHECK(s.missing_count == 24);
}

TEST_CASE("an error of 255 on every missing entry is exactly 0 dB") {
  const Dims d{3, 5, 2};
  const Tensor3 truth(d);
  const Tensor3 off(d, std::vector<double>(d.count(), 255.0));
  const RecoveryScore s = score(off, truth, checkerboard(d));
  CHECK(s.mse == 255.0 * 255.0);
  CHECK(s.psnr == 0.0);
}

TEST_CASE("mse matches the elementwise oracle") {
  std::mt19937_64 rng(2);
  std::bernoulli_distribution coin(0.6);
  for (int trial = 0; trial < 40; ++trial) {
    const Dims d = ttnn::test::random_dims(rng, 7, 7, 5);
    if (d.count() == 1) continue;
    const Tensor3 a = random_tensor(d, rng);
    const Tensor3 b = random_tensor(d, rng);
    std::vector<std::uint8_t> flags(d.count());
    for (auto& f : flags) f = coin(rng);
    flags[0] = 1;
    flags[1] = 0;
    const ObservationMask m(d, flags);
    const double want = brute_mse(a, b, m);
    const RecoveryScore s = score(a, b, m);
    CHECK(std::abs(s.mse - want) <= 1e-12 * std::max(1.0, want));
    const double psnr = 10.0 * std::log10(255.0 * 255.0 / want);
    CHECK(std::abs(s.psnr - psnr) <= 1e-12 * std::max(1.0, std::abs(psnr)));
    CHECK(s.missing_count == m.missing_count());
  }
}

TEST_CASE("observed entries do not affect the score") {
  std::mt19937_64 rng(3);
  const Dims d{4, 3, 2};
  const Tensor3 truth = random_tensor(d, rng);
  const ObservationMask m = checkerboard(d);
  const Tensor3 rec = random_tensor(d, rng);
  std::vector<double> v(rec.data().begin(), rec.data().end());
  for (std::size_t e = 0; e < v.size(); ++e)
    if (m.observed(e)) v[e] += 1000.0;
  CHECK(score(Tensor3(d, v), truth, m).mse == score(rec, truth, m).mse);
}

TEST_CASE("psnr decreases as mse grows") {
  double last = std::numeric_limits<double>::infinity();
  for (double mse : {1e-6, 1e-3, 0.5, 1.0, 10.0, 255.0 * 255.0, 1e6}) {
    const double p = psnr_from_mse(mse);
    CHECK(p < last);
    last = p;
  }
  CHECK(std::isinf(psnr_from_mse(0.0)));
  CHECK(psnr_from_mse(255.0 * 255.0) == 0.0);
}

TEST_CASE("scoring errors") {
  const Dims d{2, 2, 1};
  const Tensor3 t(d);
  CHECK_THROWS_AS(score(t, t, ObservationMask::full(d)), InvalidArgument);
  CHECK_THROWS_AS(score(Tensor3(Dims{2, 2, 2}), t, checkerboard(d)), InvalidArgument);
}
