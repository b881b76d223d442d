#include "ttnn/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ttnn/errors.hpp"
#include "ttnn/talgebra.hpp"

namespace ttnn {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

constexpr char kTensorMagic[4] = {'T', 'N', 'S', '1'};
constexpr char kMaskMagic[4] = {'M', 'S', 'K', '1'};
constexpr std::size_t kHeaderSize = 16;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 |
         std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24;
}

std::vector<std::uint8_t> header(const char (&magic)[4], const Dims& d) {
  for (std::size_t n : {d.n1, d.n2, d.n3}) {
    if (n > UINT32_MAX) throw InvalidArgument("dimension does not fit in 32 bits");
  }
  std::vector<std::uint8_t> out(magic, magic + 4);
  put_u32(out, static_cast<std::uint32_t>(d.n1));
  put_u32(out, static_cast<std::uint32_t>(d.n2));
  put_u32(out, static_cast<std::uint32_t>(d.n3));
  return out;
}

Dims parse_header(const std::vector<std::uint8_t>& bytes, const char (&magic)[4],
                  const char* what) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), magic, 4) != 0) {
    throw IoError(std::string("not a ") + what + " file (bad magic)");
  }
  const Dims d{get_u32(bytes.data() + 4), get_u32(bytes.data() + 8),
               get_u32(bytes.data() + 12)};
  if (d.n1 == 0 || d.n2 == 0 || d.n3 == 0) {
    throw IoError(std::string(what) + " file has a zero dimension");
  }
  return d;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading " + path.string());
  return bytes;
}

void write_bytes(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

void write_bytes(const std::filesystem::path& path,
                 const std::vector<std::uint8_t>& bytes) {
  write_bytes(path, std::string(bytes.begin(), bytes.end()));
}

std::string real(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t v = next();
    if (v >= threshold) return v % bound;
  }
}

double SplitMix64::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

LossMode parse_loss_mode(std::string_view name) {
  if (name == "element") return LossMode::element;
  if (name == "pixel") return LossMode::pixel;
  throw InvalidArgument("unknown loss mode '" + std::string(name) +
                        "' (expected element or pixel)");
}

ObservationMask random_mask(const Dims& dims, double loss, LossMode mode,
                            std::uint64_t seed) {
  check_dims(dims);
  if (!(loss > 0.0 && loss < 1.0)) {
    throw InvalidArgument("loss fraction must lie in (0, 1)");
  }
  const std::size_t sites =
      mode == LossMode::element ? dims.count() : dims.slice_size();
  const auto drop = static_cast<std::size_t>(
      std::floor(loss * static_cast<double>(sites)));

  std::vector<std::size_t> order(sites);
  for (std::size_t s = 0; s < sites; ++s) order[s] = s;
  SplitMix64 rng(seed);
  for (std::size_t s = 0; s < drop; ++s) {
    std::swap(order[s], order[s + rng.below(sites - s)]);
  }

  std::vector<std::uint8_t> observed(dims.count(), 1);
  for (std::size_t s = 0; s < drop; ++s) {
    if (mode == LossMode::element) {
      observed[order[s]] = 0;
    } else {
      for (std::size_t k = 0; k < dims.n3; ++k) {
        observed[order[s] + k * dims.slice_size()] = 0;
      }
    }
  }
  return ObservationMask(dims, std::move(observed));
}

Tensor3 synth_low_rank(const Dims& dims, std::size_t rank, std::uint64_t seed) {
  check_dims(dims);
  if (rank < 1 || rank > std::min(dims.n1, dims.n2)) {
    throw InvalidArgument("rank must lie in 1..min(n1, n2)");
  }
  SplitMix64 rng(seed);
  auto draw = [&](const Dims& d) {
    std::vector<double> v(d.count());
    for (double& x : v) x = 2.0 * rng.unit() - 1.0;
    return Tensor3(d, std::move(v));
  };
  const Tensor3 left = draw({dims.n1, rank, dims.n3});
  const Tensor3 right = draw({rank, dims.n2, dims.n3});
  const Tensor3 product = t_product(left, right);
  const double peak = norms(product).linf;
  if (peak == 0.0) return product;
  return (255.0 / peak) * product;
}

std::vector<std::uint8_t> encode_tensor(const Tensor3& t) {
  std::vector<std::uint8_t> out = header(kTensorMagic, t.dims());
  out.resize(kHeaderSize + 8 * t.size());
  std::memcpy(out.data() + kHeaderSize, t.data().data(), 8 * t.size());
  return out;
}

Tensor3 decode_tensor(const std::vector<std::uint8_t>& bytes) {
  const Dims d = parse_header(bytes, kTensorMagic, "TNS1");
  if (bytes.size() != kHeaderSize + 8 * d.count()) {
    throw IoError("TNS1 payload size does not match its dimensions");
  }
  std::vector<double> data(d.count());
  std::memcpy(data.data(), bytes.data() + kHeaderSize, 8 * d.count());
  for (double v : data) {
    if (!std::isfinite(v)) throw IoError("TNS1 file contains non-finite values");
  }
  return Tensor3(d, std::move(data));
}

void write_tensor(const Tensor3& t, const std::filesystem::path& path) {
  write_bytes(path, encode_tensor(t));
}

Tensor3 read_tensor(const std::filesystem::path& path) {
  return decode_tensor(read_bytes(path));
}

std::vector<std::uint8_t> encode_mask(const ObservationMask& mask) {
  std::vector<std::uint8_t> out = header(kMaskMagic, mask.dims());
  const auto flags = mask.flags();
  out.resize(kHeaderSize + (flags.size() + 7) / 8, 0);
  for (std::size_t e = 0; e < flags.size(); ++e) {
    if (flags[e]) out[kHeaderSize + e / 8] |= static_cast<std::uint8_t>(1u << (e % 8));
  }
  return out;
}

ObservationMask decode_mask(const std::vector<std::uint8_t>& bytes) {
  const Dims d = parse_header(bytes, kMaskMagic, "MSK1");
  if (bytes.size() != kHeaderSize + (d.count() + 7) / 8) {
    throw IoError("MSK1 payload size does not match its dimensions");
  }
  std::vector<std::uint8_t> observed(d.count());
  for (std::size_t e = 0; e < observed.size(); ++e) {
    observed[e] = (bytes[kHeaderSize + e / 8] >> (e % 8)) & 1u;
  }
  try {
    return ObservationMask(d, std::move(observed));
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("MSK1: ") + e.what());
  }
}

void write_mask(const ObservationMask& mask, const std::filesystem::path& path) {
  write_bytes(path, encode_mask(mask));
}

ObservationMask read_mask(const std::filesystem::path& path) {
  return decode_mask(read_bytes(path));
}

Tensor3 load_image(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw IoError("cannot read PNG " + path.string() + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw IoError("unsupported bit depth in " + path.string() +
                  " (only 8-bit PNG is accepted)");
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::size_t channels = color ? 3 : 1;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    throw IoError("cannot decode PNG " + path.string() + ": " + image.message);
  }

  const Dims d{image.height, image.width, channels};
  std::vector<double> data(d.count());
  for (std::size_t i = 0; i < d.n1; ++i) {
    for (std::size_t j = 0; j < d.n2; ++j) {
      for (std::size_t k = 0; k < channels; ++k) {
        data[linear_index(d, i + 1, j + 1, k + 1)] =
            pixels[(i * d.n2 + j) * channels + k];
      }
    }
  }
  return Tensor3(d, std::move(data));
}

void save_image(const Tensor3& t, const std::filesystem::path& path) {
  if (t.n3() != 1 && t.n3() != 3) {
    throw InvalidArgument("images need 1 or 3 frontal slices, got " +
                          std::to_string(t.n3()));
  }
  if (t.n1() > UINT32_MAX || t.n2() > UINT32_MAX) {
    throw InvalidArgument("image too large");
  }
  const std::size_t channels = t.n3();
  std::vector<std::uint8_t> pixels(t.size());
  for (std::size_t i = 0; i < t.n1(); ++i) {
    for (std::size_t j = 0; j < t.n2(); ++j) {
      for (std::size_t k = 0; k < channels; ++k) {
        const double v = t.data()[linear_index(t.dims(), i + 1, j + 1, k + 1)];
        pixels[(i * t.n2() + j) * channels + k] =
            static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
      }
    }
  }
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(t.n2());
  image.height = static_cast<png_uint_32>(t.n1());
  image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, pixels.data(), 0,
                               nullptr)) {
    throw IoError("cannot write PNG " + path.string() + ": " + image.message);
  }
}

Tensor3 load_frames(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw IoError("no PNG frames in " + dir.string());
  std::ranges::sort(files, {}, [](const auto& p) { return p.filename().string(); });

  std::vector<Matrix> slices;
  slices.reserve(files.size());
  for (const auto& file : files) {
    const Tensor3 frame = load_image(file);
    if (frame.n3() != 1) throw IoError("frame is not grayscale: " + file.string());
    if (!slices.empty() && (static_cast<std::size_t>(slices[0].rows()) != frame.n1() ||
                            static_cast<std::size_t>(slices[0].cols()) != frame.n2())) {
      throw IoError("frame size differs from the first frame: " + file.string());
    }
    slices.push_back(frontal_slice(frame, 1));
  }
  return from_slices(slices);
}

double ReportRecord::number(const std::string& key) const {
  const auto it = fields.find(key);
  if (it == fields.end()) throw IoError("report has no field '" + key + "'");
  if (it->second == "inf") return INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size()) {
    throw IoError("report field '" + key + "' is not a number: " + it->second);
  }
  return v;
}

std::filesystem::path history_path(const std::filesystem::path& report_path) {
  std::filesystem::path p = report_path;
  if (p.extension() == ".csv") return p.replace_extension(".history.csv");
  return p.replace_extension(".csv");
}

void save_report(const SolverReport& report,
                 const std::optional<RecoveryScore>& score, std::uint64_t seed,
                 const std::filesystem::path& path) {
  std::ostringstream text;
  text << "method = " << method_name(report.method) << '\n';
  text << "r = "
       << (report.method == Method::ttnn ? std::to_string(report.config.r) : "n/a")
       << '\n';
  text << "mu = " << real(report.config.mu) << '\n';
  text << "outer_iters = " << report.outer_iterations << '\n';
  text << "inner_iters = " << report.total_inner_iterations << '\n';
  text << "mse = " << (score ? real(score->mse) : "n/a") << '\n';
  text << "psnr = " << (score ? real(score->psnr) : "n/a") << '\n';
  text << "seed = " << seed << '\n';

  std::ostringstream csv;
  csv << "iter,outer_residual,objective\n";
  for (std::size_t l = 0; l < report.outer_iterations; ++l) {
    csv << (l + 1) << ',' << real(report.outer_residuals[l]) << ','
        << real(report.objective_history[l]) << '\n';
  }
  write_bytes(path, text.str());
  write_bytes(history_path(path), csv.str());
}

ReportRecord load_report(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  ReportRecord record;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError("malformed report line: " + line);
    record.fields[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return record;
}

}  // namespace ttnn
