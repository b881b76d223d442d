#include "ttnn/metrics.hpp"

#include <cmath>
#include <limits>

#include "ttnn/errors.hpp"

namespace ttnn {

double psnr_from_mse(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

RecoveryScore score(const Tensor3& recovered, const Tensor3& truth,
                    const ObservationMask& mask) {
  if (recovered.dims() != truth.dims() || truth.dims() != mask.dims()) {
    throw InvalidArgument("score: recovered, truth and mask shapes differ");
  }
  const std::size_t missing = mask.missing_count();
  if (missing == 0) throw InvalidArgument("score: mask has no missing entries");

  double sq = 0.0;
  for (std::size_t n = 0; n < truth.size(); ++n) {
    if (mask.observed(n)) continue;
    const double d = recovered.data()[n] - truth.data()[n];
    sq += d * d;
  }
  const double mse = sq / static_cast<double>(missing);
  return {mse, psnr_from_mse(mse), missing};
}

}  // namespace ttnn
