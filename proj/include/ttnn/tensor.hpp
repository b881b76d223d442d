#pragma once

// Dense real third-order tensors.
//
// Storage order: entry (i, j, k) of an n1 x n2 x n3 tensor lives at linear
// offset (i-1) + n1*(j-1) + n1*n2*(k-1), i.e. first index fastest, third
// slowest. Each frontal slice is therefore a contiguous column-major n1 x n2
// block. All indices in this API are 1-based.

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace ttnn {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

struct Dims {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n3 = 0;

  std::size_t count() const { return n1 * n2 * n3; }
  std::size_t slice_size() const { return n1 * n2; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Validates that every extent is positive; throws InvalidArgument otherwise.
void check_dims(const Dims& dims);

/// Offset of the 1-based entry (i, j, k) in the storage order.
inline std::size_t linear_index(const Dims& d, std::size_t i, std::size_t j,
                                std::size_t k) {
  return (i - 1) + d.n1 * ((j - 1) + d.n2 * (k - 1));
}

/// Immutable dense tensor. Construction checks the entry count and that
/// every entry is finite.
class Tensor3 {
 public:
  /// Zero tensor.
  explicit Tensor3(const Dims& dims);
  Tensor3(const Dims& dims, std::vector<double> data);

  const Dims& dims() const { return dims_; }
  std::size_t n1() const { return dims_.n1; }
  std::size_t n2() const { return dims_.n2; }
  std::size_t n3() const { return dims_.n3; }
  std::size_t size() const { return data_.size(); }

  std::span<const double> data() const { return data_; }

  /// Entry (i, j, k), 1-based, bounds checked.
  double operator()(std::size_t i, std::size_t j, std::size_t k) const;

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  Dims dims_;
  std::vector<double> data_;
};

Tensor3 operator+(const Tensor3& a, const Tensor3& b);
Tensor3 operator-(const Tensor3& a, const Tensor3& b);
Tensor3 operator*(double s, const Tensor3& a);

/// Frontal slice A^(i) as an n1 x n2 copy; 1 <= i <= n3.
Matrix frontal_slice(const Tensor3& t, std::size_t i);

/// Stacks n3 equally sized matrices as frontal slices.
Tensor3 from_slices(std::span<const Matrix> slices);

/// (n1*n3) x n2 vertical stack of the frontal slices in order.
Matrix unfold(const Tensor3& t);

/// Inverse of unfold; m must be (n1*n3) x n2.
Tensor3 fold(const Matrix& m, const Dims& dims);

/// (n1*n3) x (n2*n3) block circulant matrix: block (p, q) holds slice
/// ((p - q) mod n3) + 1.
Matrix bcirc(const Tensor3& t);

/// Sum over all entries of a_ijk * b_ijk.
double inner(const Tensor3& a, const Tensor3& b);

/// Sum of the traces of the frontal slices; slices must be square.
double trace(const Tensor3& t);

struct Norms {
  double l1 = 0.0;
  double linf = 0.0;
  double fro = 0.0;
};

Norms norms(const Tensor3& t);
double fro_norm(const Tensor3& t);

}  // namespace ttnn
