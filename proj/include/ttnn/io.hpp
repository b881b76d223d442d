#pragma once

// File formats, images, seeded mask generation, and run reports.
//
// TNS1 (tensor):  "TNS1" | n1 n2 n3 as u32 LE | n1*n2*n3 f64 LE in storage
//                 order (first index fastest).
// MSK1 (mask):    "MSK1" | n1 n2 n3 as u32 LE | ceil(n1*n2*n3 / 8) bytes of
//                 bitmap, entry e at bit (e % 8) of byte e / 8, 1 = observed,
//                 padding bits zero.
// Report:         UTF-8 "key = value" lines with keys method, r, mu,
//                 outer_iters, inner_iters, mse, psnr, seed; psnr of a perfect
//                 recovery is written as "inf"; reals carry 17 significant
//                 digits. A sibling CSV (same path with extension ".csv")
//                 holds "iter,outer_residual,objective", one row per outer
//                 iteration.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttnn/mask.hpp"
#include "ttnn/metrics.hpp"
#include "ttnn/solver.hpp"
#include "ttnn/tensor.hpp"

namespace ttnn {

/// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, then
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) *
/// 0x94D049BB133111EB; return z ^ (z >> 31).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform on [0, bound) by rejection: draws below (2^64 - bound) % bound
  /// are discarded, then the draw is reduced mod bound.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1) from the top 53 bits.
  double unit();

 private:
  std::uint64_t state_;
};

enum class LossMode { element, pixel };

LossMode parse_loss_mode(std::string_view name);

/// Removes floor(loss * N) sites without replacement, N = n1*n2*n3 entries in
/// element mode or n1*n2 pixel sites (each dropped across every k) in pixel
/// mode. Sites are chosen by a partial Fisher-Yates pass over 0..N-1:
/// for s in 0..count-1, swap(site[s], site[s + below(N - s)]); the first
/// count sites are dropped. loss must lie in (0, 1).
ObservationMask random_mask(const Dims& dims, double loss, LossMode mode,
                            std::uint64_t seed);

/// U * V with U (n1 x rank x n3) and V (rank x n2 x n3) filled with unit()
/// * 2 - 1 (U first, storage order), rescaled so the largest magnitude is 255.
Tensor3 synth_low_rank(const Dims& dims, std::size_t rank, std::uint64_t seed);

std::vector<std::uint8_t> encode_tensor(const Tensor3& t);
Tensor3 decode_tensor(const std::vector<std::uint8_t>& bytes);
void write_tensor(const Tensor3& t, const std::filesystem::path& path);
Tensor3 read_tensor(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_mask(const ObservationMask& mask);
ObservationMask decode_mask(const std::vector<std::uint8_t>& bytes);
void write_mask(const ObservationMask& mask, const std::filesystem::path& path);
ObservationMask read_mask(const std::filesystem::path& path);

/// 8-bit gray or RGB PNG as n1 x n2 x 1 or n1 x n2 x 3 (row = i, column = j).
/// Alpha is dropped; 16-bit files are rejected.
Tensor3 load_image(const std::filesystem::path& path);

/// Writes n3 == 1 as gray and n3 == 3 as RGB, rounding and clamping to
/// [0, 255].
void save_image(const Tensor3& t, const std::filesystem::path& path);

/// Grayscale PNG frames of one directory, in lexicographic filename order,
/// stacked along the third mode.
Tensor3 load_frames(const std::filesystem::path& dir);

struct ReportRecord {
  std::map<std::string, std::string> fields;

  double number(const std::string& key) const;
};

std::filesystem::path history_path(const std::filesystem::path& report_path);

/// Writes the report and its history CSV. Without a score (nothing was
/// missing) mse and psnr are written as "n/a".
void save_report(const SolverReport& report,
                 const std::optional<RecoveryScore>& score, std::uint64_t seed,
                 const std::filesystem::path& path);

ReportRecord load_report(const std::filesystem::path& path);

}  // namespace ttnn
