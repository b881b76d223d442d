#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ttnn/tensor.hpp"

namespace ttnn {

/// The set of observed entries of a tensor, stored as one flag per entry in
/// tensor storage order (1 = observed).
class ObservationMask {
 public:
  /// Requires one flag per entry and at least one observed entry.
  ObservationMask(const Dims& dims, std::vector<std::uint8_t> observed);

  /// Every entry observed.
  static ObservationMask full(const Dims& dims);

  const Dims& dims() const { return dims_; }
  std::span<const std::uint8_t> flags() const { return observed_; }

  bool observed(std::size_t offset) const { return observed_[offset] != 0; }
  /// 1-based, bounds checked.
  bool observed(std::size_t i, std::size_t j, std::size_t k) const;

  std::size_t observed_count() const { return observed_count_; }
  std::size_t missing_count() const { return observed_.size() - observed_count_; }

  friend bool operator==(const ObservationMask& a, const ObservationMask& b) {
    return a.dims_ == b.dims_ && a.observed_ == b.observed_;
  }

 private:
  Dims dims_;
  std::vector<std::uint8_t> observed_;
  std::size_t observed_count_ = 0;
};

/// Keeps t on the observed entries and zeroes the rest.
Tensor3 restrict_to_observed(const Tensor3& t, const ObservationMask& mask);

}  // namespace ttnn
