#include "ttnn/mask.hpp"

#include <string>

#include "ttnn/errors.hpp"

namespace ttnn {

ObservationMask::ObservationMask(const Dims& dims, std::vector<std::uint8_t> observed)
    : dims_(dims), observed_(std::move(observed)) {
  check_dims(dims);
  if (observed_.size() != dims.count()) {
    throw InvalidArgument("mask needs " + std::to_string(dims.count()) +
                          " flags, got " + std::to_string(observed_.size()));
  }
  for (auto& flag : observed_) {
    flag = flag != 0 ? 1 : 0;
    observed_count_ += flag;
  }
  if (observed_count_ == 0) throw InvalidArgument("mask observes no entries");
}

ObservationMask ObservationMask::full(const Dims& dims) {
  check_dims(dims);
  return ObservationMask(dims, std::vector<std::uint8_t>(dims.count(), 1));
}

bool ObservationMask::observed(std::size_t i, std::size_t j, std::size_t k) const {
  if (i < 1 || i > dims_.n1 || j < 1 || j > dims_.n2 || k < 1 || k > dims_.n3) {
    throw InvalidArgument("mask index out of range");
  }
  return observed(linear_index(dims_, i, j, k));
}

Tensor3 restrict_to_observed(const Tensor3& t, const ObservationMask& mask) {
  if (t.dims() != mask.dims()) {
    throw InvalidArgument("mask dimensions do not match tensor");
  }
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t n = 0; n < out.size(); ++n) {
    if (mask.observed(n)) out[n] = t.data()[n];
  }
  return Tensor3(t.dims(), std::move(out));
}

}  // namespace ttnn
