#include "ttnn/talgebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "ttnn/errors.hpp"

namespace ttnn {

namespace {

struct SliceSvd {
  ComplexMatrix u;
  Eigen::VectorXd sigma;
  ComplexMatrix v;
};

[[noreturn]] void svd_failure(std::size_t slice) {
  throw SolverError("SVD failed on spectral slice " + std::to_string(slice + 1));
}

// LAPACK's divide and conquer driver is several times faster than Eigen's at
// the slice sizes we see; Eigen is kept as a fallback when gesdd gives up.
template <typename Scalar>
bool gesdd(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a, bool full,
           SliceSvd& out) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  const lapack_int p = std::min(m, n);
  const char jobz = full ? 'A' : 'S';
  Mat u(m, full ? m : p);
  Mat vt(full ? n : p, n);
  Eigen::VectorXd sigma(p);
  const lapack_int ldvt = std::max<lapack_int>(1, static_cast<lapack_int>(vt.rows()));
  lapack_int info;
  if constexpr (std::is_same_v<Scalar, double>) {
    info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, jobz, m, n, a.data(), std::max(1, m),
                          sigma.data(), u.data(), std::max(1, m), vt.data(), ldvt);
  } else {
    info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, jobz, m, n,
                          reinterpret_cast<lapack_complex_double*>(a.data()),
                          std::max(1, m), sigma.data(),
                          reinterpret_cast<lapack_complex_double*>(u.data()),
                          std::max(1, m),
                          reinterpret_cast<lapack_complex_double*>(vt.data()), ldvt);
  }
  if (info != 0 || !sigma.allFinite()) return false;
  out.u = u.template cast<Complex>();
  out.sigma = std::move(sigma);
  out.v = vt.adjoint().template cast<Complex>();
  return true;
}

template <typename Scalar>
SliceSvd eigen_svd(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                   bool full, std::size_t slice) {
  const unsigned int options = full ? Eigen::ComputeFullU | Eigen::ComputeFullV
                                    : Eigen::ComputeThinU | Eigen::ComputeThinV;
  Eigen::BDCSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(a, options);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    svd_failure(slice);
  }
  return {svd.matrixU().template cast<Complex>(), svd.singularValues(),
          svd.matrixV().template cast<Complex>()};
}

// Self-conjugate slices of a real tensor's spectrum are real; factoring them
// with a real SVD keeps their factors real so the inverse transform stays real.
SliceSvd slice_svd(const ComplexMatrix& m, std::size_t k, std::size_t n3, bool full) {
  if (!m.allFinite()) svd_failure(k);
  SliceSvd out;
  if (self_conjugate(k, n3)) {
    const Matrix re = m.real();
    if (!gesdd<double>(re, full, out)) out = eigen_svd<double>(re, full, k);
    return out;
  }
  if (!gesdd<Complex>(m, full, out)) out = eigen_svd<Complex>(m, full, k);
  return out;
}

ComplexMatrix diag_block(const Eigen::VectorXd& sigma, Eigen::Index rows,
                         Eigen::Index cols) {
  ComplexMatrix s = ComplexMatrix::Zero(rows, cols);
  for (Eigen::Index t = 0; t < sigma.size(); ++t) s(t, t) = sigma(t);
  return s;
}

Tensor3 leading_lateral_slices(const Tensor3& t, std::size_t r) {
  std::vector<Matrix> slices;
  slices.reserve(t.n3());
  for (std::size_t k = 1; k <= t.n3(); ++k) {
    slices.emplace_back(frontal_slice(t, k).leftCols(static_cast<Eigen::Index>(r)));
  }
  return from_slices(slices);
}

std::size_t min_side(const Dims& d) { return std::min(d.n1, d.n2); }

}  // namespace

Tensor3 t_product(const Tensor3& a, const Tensor3& b) {
  if (a.n2() != b.n1() || a.n3() != b.n3()) {
    throw InvalidArgument("t_product: incompatible shapes " +
                          std::to_string(a.n1()) + "x" + std::to_string(a.n2()) +
                          "x" + std::to_string(a.n3()) + " * " +
                          std::to_string(b.n1()) + "x" + std::to_string(b.n2()) +
                          "x" + std::to_string(b.n3()));
  }
  const SpectralTensor fa = dft_mode3(a);
  const SpectralTensor fb = dft_mode3(b);
  const std::size_t n3 = a.n3();
  SpectralTensor out{{a.n1(), b.n2(), n3}, std::vector<ComplexMatrix>(n3)};
  for (std::size_t k = 0; k < independent_slices(n3); ++k) {
    out.slices[k].noalias() = fa.slices[k] * fb.slices[k];
  }
  mirror_conjugates(out.slices);
  return idft_mode3(out);
}

Tensor3 conj_transpose(const Tensor3& a) {
  const std::size_t n3 = a.n3();
  std::vector<Matrix> slices;
  slices.reserve(n3);
  slices.emplace_back(frontal_slice(a, 1).transpose());
  for (std::size_t i = 2; i <= n3; ++i) {
    slices.emplace_back(frontal_slice(a, n3 + 2 - i).transpose());
  }
  return from_slices(slices);
}

Tensor3 identity_tensor(std::size_t n, std::size_t n3) {
  const Dims d{n, n, n3};
  check_dims(d);
  std::vector<double> data(d.count(), 0.0);
  for (std::size_t i = 1; i <= n; ++i) data[linear_index(d, i, i, 1)] = 1.0;
  return Tensor3(d, std::move(data));
}

bool is_orthogonal(const Tensor3& q, double tol) {
  if (q.n1() != q.n2()) {
    throw InvalidArgument("is_orthogonal: frontal slices are not square");
  }
  const Tensor3 qt = conj_transpose(q);
  const Tensor3 id = identity_tensor(q.n1(), q.n3());
  return fro_norm(t_product(qt, q) - id) <= tol &&
         fro_norm(t_product(q, qt) - id) <= tol;
}

TSvdFactors t_svd(const Tensor3& a) {
  const Dims d = a.dims();
  const auto n1 = static_cast<Eigen::Index>(d.n1);
  const auto n2 = static_cast<Eigen::Index>(d.n2);
  const SpectralTensor fa = dft_mode3(a);

  SpectralTensor fu{{d.n1, d.n1, d.n3}, std::vector<ComplexMatrix>(d.n3)};
  SpectralTensor fs{d, std::vector<ComplexMatrix>(d.n3)};
  SpectralTensor fv{{d.n2, d.n2, d.n3}, std::vector<ComplexMatrix>(d.n3)};
  std::vector<Eigen::VectorXd> sigma(d.n3);

  for (std::size_t k = 0; k < independent_slices(d.n3); ++k) {
    SliceSvd svd = slice_svd(fa.slices[k], k, d.n3, true);
    fu.slices[k] = std::move(svd.u);
    fs.slices[k] = diag_block(svd.sigma, n1, n2);
    fv.slices[k] = std::move(svd.v);
    sigma[k] = std::move(svd.sigma);
  }
  mirror_conjugates(fu.slices);
  mirror_conjugates(fs.slices);
  mirror_conjugates(fv.slices);
  for (std::size_t k = independent_slices(d.n3); k < d.n3; ++k) {
    sigma[k] = sigma[d.n3 - k];
  }
  return {idft_mode3(fu), idft_mode3(fs), idft_mode3(fv), std::move(sigma)};
}

std::size_t tubal_rank(const TSvdFactors& f, double tol) {
  double largest = 0.0;
  for (const auto& s : f.singular_values) {
    if (s.size() > 0) largest = std::max(largest, s.maxCoeff());
  }
  if (largest == 0.0) return 0;
  const double cutoff = tol * largest;
  std::size_t rank = 0;
  for (const auto& s : f.singular_values) {
    rank = std::max(rank, static_cast<std::size_t>((s.array() > cutoff).count()));
  }
  return rank;
}

Eigen::VectorXd first_slice_singular_values(const Tensor3& a) {
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(a.n1()),
                            static_cast<Eigen::Index>(a.n2()));
  for (std::size_t k = 1; k <= a.n3(); ++k) sum += frontal_slice(a, k);
  // The sum of frontal slices is the real DC slice of the spectrum.
  return slice_svd(sum.cast<Complex>(), 0, a.n3(), false).sigma;
}

double tensor_nuclear_norm(const Tensor3& a) {
  return first_slice_singular_values(a).sum();
}

double truncated_norm(const Tensor3& a, std::size_t r) {
  if (r > min_side(a.dims())) {
    throw InvalidArgument("truncated_norm: r = " + std::to_string(r) +
                          " exceeds min(n1, n2) = " +
                          std::to_string(min_side(a.dims())));
  }
  const Eigen::VectorXd sigma = first_slice_singular_values(a);
  return sigma.tail(sigma.size() - static_cast<Eigen::Index>(r)).sum();
}

TruncationFactors truncation_factors(const TSvdFactors& f, std::size_t r) {
  const std::size_t limit = std::min(f.U.n1(), f.V.n1());
  if (r < 1 || r > limit) {
    throw InvalidArgument("truncation_factors: r = " + std::to_string(r) +
                          " outside 1.." + std::to_string(limit));
  }
  return {conj_transpose(leading_lateral_slices(f.U, r)),
          conj_transpose(leading_lateral_slices(f.V, r))};
}

Tensor3 t_svt(const Tensor3& x, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument("t_svt: threshold must be finite and nonnegative");
  }
  SpectralTensor fx = dft_mode3(x);
  const std::size_t n3 = x.n3();
  for (std::size_t k = 0; k < independent_slices(n3); ++k) {
    const SliceSvd svd = slice_svd(fx.slices[k], k, n3, false);
    const Eigen::VectorXd shrunk = (svd.sigma.array() - tau).cwiseMax(0.0);
    const Eigen::Index keep = (shrunk.array() > 0.0).count();
    fx.slices[k].noalias() =
        svd.u.leftCols(keep) * shrunk.head(keep).cast<Complex>().asDiagonal() *
        svd.v.leftCols(keep).adjoint();
  }
  mirror_conjugates(fx.slices);
  return idft_mode3(fx);
}

}  // namespace ttnn
