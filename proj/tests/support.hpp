#pragma once

// Test-only helpers: seeded generators and brute-force oracles that do not
// go through the library's Fourier-domain code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <numbers>
#include <random>
#include <vector>

#include "ttnn/spectral.hpp"
#include "ttnn/tensor.hpp"

namespace ttnn::test {

inline Tensor3 random_tensor(const Dims& d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(d.count());
  for (double& x : v) x = normal(rng);
  return Tensor3(d, std::move(v));
}

inline Dims random_dims(std::mt19937_64& rng, std::size_t max1, std::size_t max2,
                        std::size_t max3) {
  auto pick = [&](std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(1, hi)(rng);
  };
  return {pick(max1), pick(max2), pick(max3)};
}

inline double rel_err(const Tensor3& got, const Tensor3& want) {
  return fro_norm(got - want) / std::max(fro_norm(want), 1e-300);
}

template <typename A, typename B>
double rel_err(const A& got, const B& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

/// Direct O(n^2) DFT with kernel exp(-2 pi i / n), unnormalized.
inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * t) % n) /
                           static_cast<double>(n);
      sum += x[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = sum;
  }
  return out;
}

/// Unitary DFT matrix F with F_jk = exp(-2 pi i jk / n) / sqrt(n).
inline ComplexMatrix unitary_dft_matrix(std::size_t n) {
  ComplexMatrix f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                           static_cast<double>(n);
      f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          std::complex<double>(std::cos(angle), std::sin(angle)) /
          std::sqrt(static_cast<double>(n));
    }
  }
  return f;
}

/// Kronecker product of two dense matrices.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// t-product straight from its definition: fold(bcirc(a) * unfold(b)).
inline Tensor3 bcirc_product(const Tensor3& a, const Tensor3& b) {
  return fold(bcirc(a) * unfold(b), {a.n1(), b.n2(), a.n3()});
}

/// Sum of the frontal slices, i.e. the first spectral slice computed by
/// direct summation.
inline Matrix slice_sum(const Tensor3& t) {
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(t.n1()),
                            static_cast<Eigen::Index>(t.n2()));
  for (std::size_t k = 1; k <= t.n3(); ++k) sum += frontal_slice(t, k);
  return sum;
}

/// Nuclear norm by one-sided Jacobi, independent of the library's SVD path.
template <typename M>
double jacobi_nuclear_norm(const M& m) {
  return Eigen::JacobiSVD<M>(m).singularValues().sum();
}

/// Fresh directory under the system temp dir, removed on scope exit.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ttnn-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace ttnn::test
