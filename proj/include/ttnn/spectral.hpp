#pragma once

// Mode-3 Fourier transform of a tensor and the block-diagonal view of its
// spectrum.
//
// Convention: unnormalized forward transform with kernel exp(-2*pi*i/n3),
// inverse scaled by 1/n3. Under it the first spectral slice is the plain sum
// of the frontal slices.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ttnn/tensor.hpp"

namespace ttnn {

using Complex = std::complex<double>;

/// Precomputed plan for an unnormalized length-n DFT. Powers of two use an
/// iterative radix-2 transform, short odd lengths a direct sum, and every
/// other length Bluestein's chirp-z reformulation on a power-of-two grid.
class Dft {
 public:
  explicit Dft(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<Complex> x) const;
  /// Includes the 1/n scale.
  void inverse(std::span<Complex> x) const;

 private:
  struct Radix2 {
    std::size_t n = 0;
    std::vector<std::size_t> bitrev;
    std::vector<Complex> twiddle;  // exp(-2*pi*i*k/n), k < n/2

    explicit Radix2(std::size_t len);
    void forward(std::span<Complex> x) const;
  };

  static constexpr std::size_t kDirectMax = 16;

  std::size_t n_;
  bool pow2_;
  std::vector<Complex> roots_;         // exp(-2*pi*i*k/n) for the direct sum
  Radix2 radix2_;
  std::vector<Complex> chirp_;         // exp(-i*pi*k^2/n)
  std::vector<Complex> chirp_kernel_;  // radix-2 spectrum of conj(chirp), wrapped
};

/// Spectrum of a tensor along its third mode: n3 complex n1 x n2 slices.
struct SpectralTensor {
  Dims dims;
  std::vector<ComplexMatrix> slices;

  double fro_norm() const;
};

/// Number of spectral slices that determine a conjugate-symmetric spectrum
/// (0-based slices 0 .. n3/2).
inline std::size_t independent_slices(std::size_t n3) { return n3 / 2 + 1; }

/// Slice k (0-based) is its own conjugate partner: k == 0 or 2k == n3.
inline bool self_conjugate(std::size_t k, std::size_t n3) {
  return k == 0 || 2 * k == n3;
}

/// Fills slices n3/2+1 .. n3-1 (0-based) with conj(slice n3-k).
void mirror_conjugates(std::vector<ComplexMatrix>& slices);

/// Largest deviation from X^(k+1) = conj(X^(n3-k+1)) (1-based) over all
/// entries.
double conjugate_asymmetry(const SpectralTensor& s);

SpectralTensor dft_mode3(const Tensor3& t);

/// Real tensor whose spectrum is s. Throws ImaginaryResidue when the inverse
/// has max |imag| > 1e-8 * max(1, ||s||_F).
Tensor3 idft_mode3(const SpectralTensor& s);

/// (n1*n3) x (n2*n3) block-diagonal matrix with the spectral slices on the
/// diagonal in order.
ComplexMatrix bdiag(const SpectralTensor& s);

}  // namespace ttnn
