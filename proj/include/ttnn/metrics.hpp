#pragma once

#include <cstddef>

#include "ttnn/mask.hpp"
#include "ttnn/tensor.hpp"

namespace ttnn {

/// Peak pixel value assumed by psnr, whatever the data range.
inline constexpr double kPeak = 255.0;

struct RecoveryScore {
  double mse = 0.0;
  double psnr = 0.0;  // +inf when mse == 0
  std::size_t missing_count = 0;
};

/// 10 log10(255^2 / mse); +inf for mse == 0.
double psnr_from_mse(double mse);

/// Error over the missing entries only. Throws InvalidArgument when the mask
/// has no missing entries or the shapes disagree.
RecoveryScore score(const Tensor3& recovered, const Tensor3& truth,
                    const ObservationMask& mask);

}  // namespace ttnn
