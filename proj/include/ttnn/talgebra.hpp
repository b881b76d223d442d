#pragma once

// The t-product algebra over real third-order tensors: products, transposes,
// the t-SVD, tubal rank, the first-slice tensor nuclear norm, its truncated
// variant, and singular value thresholding.
//
// Everything here runs in the Fourier domain slice by slice. Only slices
// 0..n3/2 (0-based) are factored; the rest are filled in as conjugates, which
// also keeps every inverse transform real.

#include <cstddef>
#include <vector>

#include "ttnn/spectral.hpp"
#include "ttnn/tensor.hpp"

namespace ttnn {

/// A * B for A n1 x n2 x n3 and B n2 x n4 x n3.
Tensor3 t_product(const Tensor3& a, const Tensor3& b);

/// Transposes every frontal slice and reverses the order of slices 2..n3.
Tensor3 conj_transpose(const Tensor3& a);

/// First frontal slice I_n, the rest zero.
Tensor3 identity_tensor(std::size_t n, std::size_t n3);

/// True when both Q^T * Q and Q * Q^T are within `tol` (Frobenius) of the
/// identity tensor. Slices must be square.
bool is_orthogonal(const Tensor3& q, double tol);

/// A = U * S * V^T with U (n1 x n1 x n3) and V (n2 x n2 x n3) orthogonal and
/// S f-diagonal. `singular_values[k]` holds the descending singular values of
/// spectral slice k (0-based), i.e. the diagonal of the spectrum of S.
struct TSvdFactors {
  Tensor3 U;
  Tensor3 S;
  Tensor3 V;
  std::vector<Eigen::VectorXd> singular_values;
};

TSvdFactors t_svd(const Tensor3& a);

/// Default relative cutoff for counting singular values as nonzero.
inline constexpr double kRankTolerance = 1e-12;

/// Largest per-slice count of spectral singular values above
/// tol * (largest singular value over all slices).
std::size_t tubal_rank(const TSvdFactors& f, double tol = kRankTolerance);

/// Descending singular values of the first spectral slice (the sum of the
/// frontal slices).
Eigen::VectorXd first_slice_singular_values(const Tensor3& a);

/// tr(S) of the t-SVD, evaluated as the nuclear norm of the first spectral
/// slice. This is only a seminorm: it vanishes whenever the frontal slices
/// sum to zero.
double tensor_nuclear_norm(const Tensor3& a);

/// Sum of the first-slice singular values beyond the r largest;
/// 0 <= r <= min(n1, n2).
double truncated_norm(const Tensor3& a, std::size_t r);

/// A = U(:, 1:r, :)^T and B = V(:, 1:r, :)^T.
struct TruncationFactors {
  Tensor3 A;  // r x n1 x n3
  Tensor3 B;  // r x n2 x n3
};

TruncationFactors truncation_factors(const TSvdFactors& f, std::size_t r);

/// Shrinks the singular values of every spectral slice by tau (>= 0) and
/// transforms back.
Tensor3 t_svt(const Tensor3& x, double tau);

}  // namespace ttnn
