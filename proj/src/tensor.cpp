#include "ttnn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ttnn/errors.hpp"

namespace ttnn {

namespace {

std::string dims_str(const Dims& d) {
  return std::to_string(d.n1) + "x" + std::to_string(d.n2) + "x" +
         std::to_string(d.n3);
}

void require_same_dims(const Tensor3& a, const Tensor3& b, const char* op) {
  if (a.dims() != b.dims()) {
    throw InvalidArgument(std::string(op) + ": dimension mismatch " +
                          dims_str(a.dims()) + " vs " + dims_str(b.dims()));
  }
}

}  // namespace

void check_dims(const Dims& dims) {
  if (dims.n1 == 0 || dims.n2 == 0 || dims.n3 == 0) {
    throw InvalidArgument("tensor dimensions must be positive, got " +
                          dims_str(dims));
  }
}

Tensor3::Tensor3(const Dims& dims) : dims_(dims) {
  check_dims(dims);
  data_.assign(dims.count(), 0.0);
}

Tensor3::Tensor3(const Dims& dims, std::vector<double> data)
    : dims_(dims), data_(std::move(data)) {
  check_dims(dims);
  if (data_.size() != dims.count()) {
    throw InvalidArgument("tensor " + dims_str(dims) + " needs " +
                          std::to_string(dims.count()) + " entries, got " +
                          std::to_string(data_.size()));
  }
  for (std::size_t n = 0; n < data_.size(); ++n) {
    if (!std::isfinite(data_[n])) {
      throw InvalidArgument("non-finite tensor entry at offset " +
                            std::to_string(n));
    }
  }
}

double Tensor3::operator()(std::size_t i, std::size_t j, std::size_t k) const {
  if (i < 1 || i > dims_.n1 || j < 1 || j > dims_.n2 || k < 1 ||
      k > dims_.n3) {
    throw InvalidArgument("tensor index out of range");
  }
  return data_[linear_index(dims_, i, j, k)];
}

Tensor3 operator+(const Tensor3& a, const Tensor3& b) {
  require_same_dims(a, b, "add");
  std::vector<double> out(a.size());
  std::ranges::transform(a.data(), b.data(), out.begin(), std::plus<>{});
  return Tensor3(a.dims(), std::move(out));
}

Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
  require_same_dims(a, b, "subtract");
  std::vector<double> out(a.size());
  std::ranges::transform(a.data(), b.data(), out.begin(), std::minus<>{});
  return Tensor3(a.dims(), std::move(out));
}

Tensor3 operator*(double s, const Tensor3& a) {
  std::vector<double> out(a.data().begin(), a.data().end());
  for (double& v : out) v *= s;
  return Tensor3(a.dims(), std::move(out));
}

Matrix frontal_slice(const Tensor3& t, std::size_t i) {
  if (i < 1 || i > t.n3()) {
    throw InvalidArgument("frontal slice " + std::to_string(i) +
                          " out of range 1.." + std::to_string(t.n3()));
  }
  const auto n = t.dims().slice_size();
  return Eigen::Map<const Matrix>(t.data().data() + (i - 1) * n,
                                  static_cast<Eigen::Index>(t.n1()),
                                  static_cast<Eigen::Index>(t.n2()));
}

Tensor3 from_slices(std::span<const Matrix> slices) {
  if (slices.empty()) throw InvalidArgument("from_slices: no slices");
  const Dims d{static_cast<std::size_t>(slices[0].rows()),
               static_cast<std::size_t>(slices[0].cols()), slices.size()};
  check_dims(d);
  std::vector<double> data(d.count());
  for (std::size_t k = 0; k < slices.size(); ++k) {
    if (slices[k].rows() != slices[0].rows() ||
        slices[k].cols() != slices[0].cols()) {
      throw InvalidArgument("from_slices: slices differ in shape");
    }
    Eigen::Map<Matrix>(data.data() + k * d.slice_size(), slices[0].rows(),
                       slices[0].cols()) = slices[k];
  }
  return Tensor3(d, std::move(data));
}

Matrix unfold(const Tensor3& t) {
  const auto n1 = static_cast<Eigen::Index>(t.n1());
  const auto n2 = static_cast<Eigen::Index>(t.n2());
  Matrix m(n1 * static_cast<Eigen::Index>(t.n3()), n2);
  for (std::size_t k = 1; k <= t.n3(); ++k) {
    m.middleRows(n1 * static_cast<Eigen::Index>(k - 1), n1) =
        frontal_slice(t, k);
  }
  return m;
}

Tensor3 fold(const Matrix& m, const Dims& dims) {
  check_dims(dims);
  if (static_cast<std::size_t>(m.rows()) != dims.n1 * dims.n3 ||
      static_cast<std::size_t>(m.cols()) != dims.n2) {
    throw InvalidArgument("fold: matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected " +
                          std::to_string(dims.n1 * dims.n3) + "x" +
                          std::to_string(dims.n2));
  }
  const auto n1 = static_cast<Eigen::Index>(dims.n1);
  std::vector<Matrix> slices;
  slices.reserve(dims.n3);
  for (std::size_t k = 0; k < dims.n3; ++k) {
    slices.emplace_back(m.middleRows(n1 * static_cast<Eigen::Index>(k), n1));
  }
  return from_slices(slices);
}

Matrix bcirc(const Tensor3& t) {
  const auto n1 = static_cast<Eigen::Index>(t.n1());
  const auto n2 = static_cast<Eigen::Index>(t.n2());
  const std::size_t n3 = t.n3();
  Matrix m(n1 * static_cast<Eigen::Index>(n3),
           n2 * static_cast<Eigen::Index>(n3));
  for (std::size_t p = 0; p < n3; ++p) {
    for (std::size_t q = 0; q < n3; ++q) {
      const std::size_t slice = (p + n3 - q) % n3 + 1;
      m.block(n1 * static_cast<Eigen::Index>(p),
              n2 * static_cast<Eigen::Index>(q), n1, n2) =
          frontal_slice(t, slice);
    }
  }
  return m;
}

double inner(const Tensor3& a, const Tensor3& b) {
  require_same_dims(a, b, "inner");
  double sum = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) sum += a.data()[n] * b.data()[n];
  return sum;
}

double trace(const Tensor3& t) {
  if (t.n1() != t.n2()) {
    throw InvalidArgument("trace: frontal slices are not square");
  }
  double sum = 0.0;
  for (std::size_t k = 1; k <= t.n3(); ++k) {
    for (std::size_t i = 1; i <= t.n1(); ++i) {
      sum += t.data()[linear_index(t.dims(), i, i, k)];
    }
  }
  return sum;
}

Norms norms(const Tensor3& t) {
  Norms out;
  double sq = 0.0;
  for (double v : t.data()) {
    out.l1 += std::abs(v);
    out.linf = std::max(out.linf, std::abs(v));
    sq += v * v;
  }
  out.fro = std::sqrt(sq);
  return out;
}

double fro_norm(const Tensor3& t) {
  double sq = 0.0;
  for (double v : t.data()) sq += v * v;
  return std::sqrt(sq);
}

}  // namespace ttnn
