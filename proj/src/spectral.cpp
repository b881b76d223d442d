#include "ttnn/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ttnn/errors.hpp"

namespace ttnn {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

std::size_t transform_grid(std::size_t n) {
  if (n == 0) throw InvalidArgument("DFT length must be positive");
  return is_pow2(n) ? n : next_pow2(2 * n - 1);
}

}  // namespace

Dft::Radix2::Radix2(std::size_t len) : n(len), bitrev(len) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (k & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bitrev[k] = r;
  }
  twiddle.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }
}

void Dft::Radix2::forward(std::span<Complex> x) const {
  for (std::size_t k = 0; k < n; ++k) {
    if (k < bitrev[k]) std::swap(x[k], x[bitrev[k]]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex t = twiddle[k * step] * x[start + k + half];
        x[start + k + half] = x[start + k] - t;
        x[start + k] += t;
      }
    }
  }
}

Dft::Dft(std::size_t n) : n_(n), pow2_(is_pow2(n)), radix2_(transform_grid(n)) {
  if (pow2_) return;
  if (n <= kDirectMax) {
    roots_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(n);
      roots_[k] = {std::cos(angle), std::sin(angle)};
    }
    return;
  }

  // Bluestein: X_k = w_k * sum_t (x_t w_t) conj(w_{k-t}), w_k = exp(-i pi k^2/n).
  // k^2 is reduced mod 2n before scaling so the angle stays small.
  const std::size_t m = radix2_.n;
  chirp_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = (k * k) % (2 * n);
    const double angle =
        -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    chirp_[k] = {std::cos(angle), std::sin(angle)};
  }
  chirp_kernel_.assign(m, Complex{});
  chirp_kernel_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    chirp_kernel_[k] = std::conj(chirp_[k]);
    chirp_kernel_[m - k] = std::conj(chirp_[k]);
  }
  radix2_.forward(chirp_kernel_);
}

void Dft::forward(std::span<Complex> x) const {
  if (x.size() != n_) throw InvalidArgument("DFT input length mismatch");
  if (n_ == 1) return;
  if (pow2_) {
    radix2_.forward(x);
    return;
  }
  if (!roots_.empty()) {
    std::array<Complex, kDirectMax> out;
    for (std::size_t k = 0; k < n_; ++k) {
      Complex acc = x[0];
      std::size_t idx = 0;
      for (std::size_t t = 1; t < n_; ++t) {
        idx += k;
        if (idx >= n_) idx -= n_;
        acc += x[t] * roots_[idx];
      }
      out[k] = acc;
    }
    std::copy_n(out.begin(), n_, x.begin());
    return;
  }
  const std::size_t m = radix2_.n;
  // Per-thread scratch; the plan itself stays immutable and shareable.
  thread_local std::vector<Complex> work;
  work.assign(m, Complex{});
  for (std::size_t k = 0; k < n_; ++k) work[k] = x[k] * chirp_[k];
  radix2_.forward(work);
  for (std::size_t k = 0; k < m; ++k) work[k] = std::conj(work[k] * chirp_kernel_[k]);
  // Inverse via conjugation: ifft(y) = conj(fft(conj(y))) / m.
  radix2_.forward(work);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n_; ++k) {
    x[k] = chirp_[k] * std::conj(work[k]) * scale;
  }
}

void Dft::inverse(std::span<Complex> x) const {
  for (Complex& v : x) v = std::conj(v);
  forward(x);
  const double scale = 1.0 / static_cast<double>(n_);
  for (Complex& v : x) v = std::conj(v) * scale;
}

double SpectralTensor::fro_norm() const {
  double sq = 0.0;
  for (const auto& s : slices) sq += s.squaredNorm();
  return std::sqrt(sq);
}

void mirror_conjugates(std::vector<ComplexMatrix>& slices) {
  const std::size_t n3 = slices.size();
  for (std::size_t k = independent_slices(n3); k < n3; ++k) {
    slices[k] = slices[n3 - k].conjugate();
  }
}

double conjugate_asymmetry(const SpectralTensor& s) {
  const std::size_t n3 = s.slices.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < n3; ++k) {
    const std::size_t partner = (n3 - k) % n3;
    worst = std::max(
        worst, (s.slices[k] - s.slices[partner].conjugate()).cwiseAbs().maxCoeff());
  }
  return worst;
}

SpectralTensor dft_mode3(const Tensor3& t) {
  const Dims d = t.dims();
  const auto n1 = static_cast<Eigen::Index>(d.n1);
  const auto n2 = static_cast<Eigen::Index>(d.n2);
  SpectralTensor out{d, std::vector<ComplexMatrix>(d.n3, ComplexMatrix(n1, n2))};
  const Dft dft(d.n3);
  const auto data = t.data();
  const std::size_t stride = d.slice_size();
  std::vector<Complex> tube(d.n3);
  for (std::size_t p = 0; p < stride; ++p) {
    for (std::size_t k = 0; k < d.n3; ++k) tube[k] = data[p + k * stride];
    dft.forward(tube);
    for (std::size_t k = 0; k < d.n3; ++k) out.slices[k].data()[p] = tube[k];
  }
  return out;
}

Tensor3 idft_mode3(const SpectralTensor& s) {
  const Dims d = s.dims;
  check_dims(d);
  if (s.slices.size() != d.n3) {
    throw InvalidArgument("spectral tensor holds " +
                          std::to_string(s.slices.size()) + " slices, expected " +
                          std::to_string(d.n3));
  }
  for (const auto& slice : s.slices) {
    if (static_cast<std::size_t>(slice.rows()) != d.n1 ||
        static_cast<std::size_t>(slice.cols()) != d.n2) {
      throw InvalidArgument("spectral slice has wrong shape");
    }
  }
  const double tolerance = 1e-8 * std::max(1.0, s.fro_norm());
  const Dft dft(d.n3);
  const std::size_t stride = d.slice_size();
  std::vector<double> data(d.count());
  std::vector<Complex> tube(d.n3);
  double residue = 0.0;
  for (std::size_t p = 0; p < stride; ++p) {
    for (std::size_t k = 0; k < d.n3; ++k) tube[k] = s.slices[k].data()[p];
    dft.inverse(tube);
    for (std::size_t k = 0; k < d.n3; ++k) {
      residue = std::max(residue, std::abs(tube[k].imag()));
      data[p + k * stride] = tube[k].real();
    }
  }
  if (!(residue <= tolerance)) throw ImaginaryResidue(residue, tolerance);
  return Tensor3(d, std::move(data));
}

ComplexMatrix bdiag(const SpectralTensor& s) {
  const auto n1 = static_cast<Eigen::Index>(s.dims.n1);
  const auto n2 = static_cast<Eigen::Index>(s.dims.n2);
  const auto n3 = static_cast<Eigen::Index>(s.slices.size());
  ComplexMatrix m = ComplexMatrix::Zero(n1 * n3, n2 * n3);
  for (Eigen::Index k = 0; k < n3; ++k) {
    m.block(k * n1, k * n2, n1, n2) = s.slices[static_cast<std::size_t>(k)];
  }
  return m;
}

}  // namespace ttnn
