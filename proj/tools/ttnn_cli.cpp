// Command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttnn/ttnn.h"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kSolver = 3 };

struct Failure {
  int code;
  std::string message;
};

int exit_code(ttnn_status s) {
  switch (s) {
    case TTNN_OK: return kOk;
    case TTNN_ERR_ARGUMENT: return kUsage;
    case TTNN_ERR_IO: return kIo;
    default: return kSolver;
  }
}

void check(ttnn_status s) {
  if (s != TTNN_OK) throw Failure{exit_code(s), ttnn_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{kUsage, message}; }

struct TensorFree {
  void operator()(ttnn_tensor* t) const { ttnn_tensor_destroy(t); }
};
struct MaskFree {
  void operator()(ttnn_mask* m) const { ttnn_mask_destroy(m); }
};
struct ReportFree {
  void operator()(ttnn_report* r) const { ttnn_report_destroy(r); }
};
using Tensor = std::unique_ptr<ttnn_tensor, TensorFree>;
using Mask = std::unique_ptr<ttnn_mask, MaskFree>;
using Report = std::unique_ptr<ttnn_report, ReportFree>;

struct Shape {
  std::size_t n1 = 0, n2 = 0, n3 = 0;
};

Shape shape_of(const ttnn_tensor* t) {
  std::size_t d[3];
  check(ttnn_tensor_dims(t, d));
  return {d[0], d[1], d[2]};
}

bool is_png(const fs::path& p) { return p.extension() == ".png"; }

Tensor load_tensor_file(const std::string& path) {
  ttnn_tensor* t = nullptr;
  check(is_png(path) ? ttnn_image_load(path.c_str(), &t)
                     : ttnn_tensor_load(path.c_str(), &t));
  return Tensor(t);
}

void save_tensor_file(const ttnn_tensor* t, const fs::path& path) {
  const std::string s = path.string();
  check(is_png(path) ? ttnn_image_save(t, s.c_str()) : ttnn_tensor_save(t, s.c_str()));
}

void require_readable(const std::string& path, const char* what) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw Failure{kIo, std::string(what) + " not found: " + path};
}

void require_writable_dir(const fs::path& out) {
  const fs::path dir = out.parent_path().empty() ? fs::path(".") : out.parent_path();
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Failure{kIo, "output directory does not exist: " + dir.string()};
  }
}

std::string real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

fs::path default_report(const fs::path& out) {
  fs::path p = out;
  return p.replace_extension(".report.txt");
}

fs::path csv_sibling(const fs::path& report) {
  fs::path p = report;
  if (p.extension() == ".csv") return p.replace_extension(".history.csv");
  return p.replace_extension(".csv");
}

// Removes files written so far unless released, so a failed command leaves
// nothing half done behind.
class OutputGuard {
 public:
  void add(fs::path p) { paths_.push_back(std::move(p)); }
  void release() { paths_.clear(); }
  ~OutputGuard() {
    std::error_code ec;
    for (const auto& p : paths_) fs::remove(p, ec);
  }

 private:
  std::vector<fs::path> paths_;
};

// Options shared by complete and sweep.
struct Problem {
  std::string image, frames, tensor, mask, truth;
  double loss = 0.0;
  std::string mode;
  std::uint64_t seed = 0;
};

struct SolverFlags {
  ttnn_solver_config cfg{};
  std::string method = "ttnn";
};

void add_problem_options(CLI::App* cmd, Problem& p) {
  auto* in = cmd->add_option_group("input", "exactly one data source");
  in->add_option("--image", p.image, "8-bit PNG (gray or RGB)");
  in->add_option("--frames", p.frames, "directory of grayscale PNG frames");
  in->add_option("--tensor", p.tensor, "TNS1 tensor file");
  in->require_option(1);
  cmd->add_option("--mask", p.mask, "MSK1 observation mask");
  cmd->add_option("--loss", p.loss, "fraction of sites to drop when generating a mask")
      ->excludes("--mask");
  cmd->add_option("--mode", p.mode, "element or pixel (default: pixel for images)")
      ->check(CLI::IsMember({"element", "pixel"}));
  cmd->add_option("--seed", p.seed, "mask generator seed");
  cmd->add_option("--truth", p.truth, "ground truth for scoring (PNG or TNS1)");
}

void add_solver_options(CLI::App* cmd, SolverFlags& s) {
  ttnn_solver_config_default(&s.cfg);
  cmd->add_option("--method", s.method, "ttnn or tubal")
      ->check(CLI::IsMember({"ttnn", "tubal"}))
      ->capture_default_str();
  cmd->add_option("--r", s.cfg.r, "truncation count")->capture_default_str();
  cmd->add_option("--mu", s.cfg.mu, "ADMM penalty")->capture_default_str();
  cmd->add_option("--outer-eps", s.cfg.outer_eps, "outer stopping tolerance")
      ->capture_default_str();
  cmd->add_option("--outer-max", s.cfg.outer_max, "outer iteration cap")
      ->capture_default_str();
  cmd->add_option("--inner-eps", s.cfg.inner_eps, "inner relative tolerance")
      ->capture_default_str();
  cmd->add_option("--inner-max", s.cfg.inner_max, "inner iteration cap")
      ->capture_default_str();
}

struct Loaded {
  Tensor data;
  Mask mask;
  Tensor truth_file;
  const ttnn_tensor* truth = nullptr;  // null when there is nothing to score against
};

Loaded load_problem(const Problem& p, bool need_truth) {
  if (!p.image.empty()) require_readable(p.image, "image");
  if (!p.frames.empty()) require_readable(p.frames, "frame directory");
  if (!p.tensor.empty()) require_readable(p.tensor, "tensor");
  if (!p.mask.empty()) require_readable(p.mask, "mask");
  if (!p.truth.empty()) require_readable(p.truth, "truth");
  if (p.mask.empty() && p.loss == 0.0) usage("give --mask or --loss");

  Loaded out;
  ttnn_tensor* t = nullptr;
  if (!p.image.empty()) {
    check(ttnn_image_load(p.image.c_str(), &t));
  } else if (!p.frames.empty()) {
    check(ttnn_frames_load(p.frames.c_str(), &t));
  } else {
    check(ttnn_tensor_load(p.tensor.c_str(), &t));
  }
  out.data.reset(t);
  const Shape d = shape_of(out.data.get());

  ttnn_mask* m = nullptr;
  if (!p.mask.empty()) {
    check(ttnn_mask_load(p.mask.c_str(), &m));
    std::size_t md[3];
    check(ttnn_mask_dims(m, md));
    out.mask.reset(m);
    if (md[0] != d.n1 || md[1] != d.n2 || md[2] != d.n3) {
      usage("mask dimensions do not match the data");
    }
  } else {
    const bool pixel = p.mode.empty() ? !p.image.empty() : p.mode == "pixel";
    check(ttnn_mask_random(d.n1, d.n2, d.n3, p.loss,
                           pixel ? TTNN_LOSS_PIXEL : TTNN_LOSS_ELEMENT, p.seed, &m));
    out.mask.reset(m);
  }

  if (!p.truth.empty()) {
    out.truth_file = load_tensor_file(p.truth);
    out.truth = out.truth_file.get();
  } else if (p.mask.empty()) {
    // A generated mask hides entries of a complete input, which is the truth.
    out.truth = out.data.get();
  }
  if (need_truth && !out.truth) usage("scoring needs --truth when --mask is given");
  return out;
}

std::optional<ttnn_score> maybe_score(const ttnn_tensor* recovered, const Loaded& in) {
  if (!in.truth) return std::nullopt;
  std::size_t observed = 0, missing = 0;
  check(ttnn_mask_counts(in.mask.get(), &observed, &missing));
  if (missing == 0) return std::nullopt;
  ttnn_score s;
  check(ttnn_score_compute(recovered, in.truth, in.mask.get(), &s));
  return s;
}

int cmd_complete(const Problem& p, const SolverFlags& s, const std::string& out_arg,
                 const std::string& report_arg) {
  const fs::path out = out_arg;
  const fs::path report = report_arg.empty() ? default_report(out) : fs::path(report_arg);
  require_writable_dir(out);
  require_writable_dir(report);

  const Loaded in = load_problem(p, false);
  const Shape d = shape_of(in.data.get());
  if (is_png(out) && d.n3 != 1 && d.n3 != 3) {
    usage("PNG output needs 1 or 3 frontal slices; use a .tns path");
  }

  const ttnn_method method = s.method == "tubal" ? TTNN_METHOD_TUBAL : TTNN_METHOD_TTNN;
  ttnn_report* raw = nullptr;
  check(ttnn_complete(in.data.get(), in.mask.get(), method, &s.cfg, &raw));
  const Report rep(raw);
  ttnn_tensor* rec_raw = nullptr;
  check(ttnn_report_recovered(rep.get(), &rec_raw));
  const Tensor rec(rec_raw);
  ttnn_report_summary sum;
  check(ttnn_report_summary_get(rep.get(), &sum));
  const std::optional<ttnn_score> score = maybe_score(rec.get(), in);

  OutputGuard guard;
  guard.add(out);
  save_tensor_file(rec.get(), out);
  guard.add(report);
  guard.add(csv_sibling(report));
  check(ttnn_report_save(rep.get(), score ? &*score : nullptr, p.seed,
                         report.string().c_str()));
  guard.release();

  std::cout << "complete: method=" << s.method;
  if (method == TTNN_METHOD_TTNN) std::cout << " r=" << s.cfg.r;
  std::cout << " outer=" << sum.outer_iterations << " inner=" << sum.total_inner_iterations
            << " converged=" << (sum.converged ? "yes" : "no");
  if (score) std::cout << " mse=" << real(score->mse) << " psnr=" << real(score->psnr);
  std::cout << " out=" << out.string() << " report=" << report.string() << '\n';
  return kOk;
}

int cmd_sweep(const Problem& p, SolverFlags s, std::size_t r_min, std::size_t r_max,
              const std::string& csv_arg) {
  const fs::path csv = csv_arg;
  require_writable_dir(csv);
  if (r_min < 1 || r_max < r_min) usage("need 1 <= --r-min <= --r-max");
  const Loaded in = load_problem(p, true);

  std::vector<ttnn_sweep_row> rows(r_max - r_min + 1);
  std::size_t best = 0;
  check(ttnn_sweep(in.data.get(), in.mask.get(), in.truth, &s.cfg, r_min, r_max,
                   rows.data(), rows.size(), &best));

  std::ostringstream text;
  text << "r,psnr,outer_iters,inner_iters\n";
  for (const auto& row : rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", row.psnr);
    text << row.r << ',' << (std::isinf(row.psnr) ? "inf" : buf) << ','
         << row.outer_iterations << ',' << row.total_inner_iterations << '\n';
  }
  {
    std::ofstream f(csv, std::ios::binary);
    f << text.str();
    if (!f) throw Failure{kIo, "cannot write " + csv.string()};
  }
  const ttnn_sweep_row& top = rows[best - r_min];
  std::cout << "sweep: r=" << r_min << ".." << r_max << " best_r=" << best
            << " psnr=" << real(top.psnr) << " csv=" << csv.string() << '\n';
  return kOk;
}

int cmd_mask(const std::vector<std::size_t>& dims, const std::string& like, double loss,
             const std::string& mode, std::uint64_t seed, const std::string& out_arg) {
  const fs::path out = out_arg;
  require_writable_dir(out);
  Shape d;
  bool image = false;
  if (!like.empty()) {
    require_readable(like, "input");
    const Tensor t = load_tensor_file(like);
    d = shape_of(t.get());
    image = is_png(like);
  } else {
    if (dims.size() != 3) usage("--dims takes n1,n2,n3");
    d = {dims[0], dims[1], dims[2]};
  }
  const bool pixel = mode.empty() ? image : mode == "pixel";
  ttnn_mask* m = nullptr;
  check(ttnn_mask_random(d.n1, d.n2, d.n3, loss, pixel ? TTNN_LOSS_PIXEL : TTNN_LOSS_ELEMENT,
                         seed, &m));
  const Mask mask(m);
  check(ttnn_mask_save(mask.get(), out.string().c_str()));
  std::size_t observed = 0, missing = 0;
  check(ttnn_mask_counts(mask.get(), &observed, &missing));
  std::cout << "mask: dims=" << d.n1 << 'x' << d.n2 << 'x' << d.n3
            << " mode=" << (pixel ? "pixel" : "element") << " observed=" << observed
            << " missing=" << missing << " out=" << out.string() << '\n';
  return kOk;
}

int cmd_score(const std::string& truth_path, const std::string& rec_path,
              const std::string& mask_path) {
  require_readable(truth_path, "truth");
  require_readable(rec_path, "recovered");
  require_readable(mask_path, "mask");
  const Tensor truth = load_tensor_file(truth_path);
  const Tensor rec = load_tensor_file(rec_path);
  ttnn_mask* m = nullptr;
  check(ttnn_mask_load(mask_path.c_str(), &m));
  const Mask mask(m);
  ttnn_score s;
  check(ttnn_score_compute(rec.get(), truth.get(), mask.get(), &s));
  std::cout << "score: mse=" << real(s.mse) << " psnr=" << real(s.psnr)
            << " missing=" << s.missing_count << '\n';
  return kOk;
}

int cmd_synth(const std::vector<std::size_t>& dims, std::size_t rank, std::uint64_t seed,
              double loss, const std::string& out_arg, const std::string& mask_arg) {
  if (dims.size() != 3) usage("--dims takes n1,n2,n3");
  const fs::path out = out_arg;
  fs::path mask_out = mask_arg;
  if (mask_out.empty()) mask_out = fs::path(out).replace_extension(".msk");
  require_writable_dir(out);
  require_writable_dir(mask_out);

  ttnn_tensor* t = nullptr;
  check(ttnn_synth_low_rank(dims[0], dims[1], dims[2], rank, seed, &t));
  const Tensor truth(t);
  ttnn_mask* m = nullptr;
  check(ttnn_mask_random(dims[0], dims[1], dims[2], loss, TTNN_LOSS_ELEMENT, seed, &m));
  const Mask mask(m);

  OutputGuard guard;
  guard.add(out);
  check(ttnn_tensor_save(truth.get(), out.string().c_str()));
  guard.add(mask_out);
  check(ttnn_mask_save(mask.get(), mask_out.string().c_str()));
  guard.release();

  std::size_t tubal = 0;
  check(ttnn_tubal_rank(truth.get(), 0.0, &tubal));
  std::cout << "synth: dims=" << dims[0] << 'x' << dims[1] << 'x' << dims[2]
            << " tubal_rank=" << tubal << " out=" << out.string()
            << " mask=" << mask_out.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank tensor completion with the tensor truncated nuclear norm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ttnn_version()));

  Problem problem;
  SolverFlags solver;
  std::string out, report, csv, truth, recovered, mask_path, like, mask_out;
  std::size_t r_min = 1, r_max = 1, rank = 1;
  std::vector<std::size_t> dims;
  double loss = 0.0;
  double synth_loss = 0.3;
  std::string mode;
  std::uint64_t seed = 0;

  auto* complete = app.add_subcommand("complete", "recover missing entries");
  add_problem_options(complete, problem);
  add_solver_options(complete, solver);
  complete->add_option("--out", out, "recovered output (.png or TNS1)")->required();
  complete->add_option("--report", report, "report path (default <out>.report.txt)");

  auto* sweep = app.add_subcommand("sweep", "run T-TNN over a range of r");
  add_problem_options(sweep, problem);
  add_solver_options(sweep, solver);
  sweep->add_option("--r-min", r_min, "smallest r")->required();
  sweep->add_option("--r-max", r_max, "largest r")->required();
  sweep->add_option("--csv", csv, "per-r results")->required();

  auto* mask = app.add_subcommand("mask", "generate a seeded observation mask");
  auto* shape = mask->add_option_group("shape", "mask shape");
  shape->add_option("--dims", dims, "n1,n2,n3")->delimiter(',');
  shape->add_option("--like", like, "take the shape of this PNG or TNS1 file");
  shape->require_option(1);
  mask->add_option("--loss", loss, "fraction of sites to drop")->required();
  mask->add_option("--mode", mode, "element or pixel (default: pixel for PNG shapes)")
      ->check(CLI::IsMember({"element", "pixel"}));
  mask->add_option("--seed", seed, "generator seed");
  mask->add_option("--out", out, "MSK1 output")->required();

  auto* score = app.add_subcommand("score", "MSE and PSNR over the missing entries");
  score->add_option("--truth", truth, "ground truth (PNG or TNS1)")->required();
  score->add_option("--recovered", recovered, "recovered data (PNG or TNS1)")->required();
  score->add_option("--mask", mask_path, "MSK1 mask")->required();

  auto* synth = app.add_subcommand("synth", "write a seeded low-tubal-rank tensor and mask");
  synth->add_option("--dims", dims, "n1,n2,n3")->delimiter(',')->required();
  synth->add_option("--rank", rank, "tubal rank")->required();
  synth->add_option("--seed", seed, "generator seed");
  synth->add_option("--loss", synth_loss, "fraction of entries the mask drops")
      ->capture_default_str();
  synth->add_option("--out", out, "TNS1 output")->required();
  synth->add_option("--mask-out", mask_out, "MSK1 output (default <out>.msk)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*complete) return cmd_complete(problem, solver, out, report);
    if (*sweep) return cmd_sweep(problem, solver, r_min, r_max, csv);
    if (*mask) return cmd_mask(dims, like, loss, mode, seed, out);
    if (*score) return cmd_score(truth, recovered, mask_path);
    if (*synth) return cmd_synth(dims, rank, seed, synth_loss, out, mask_out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolver;
  }
  return kUsage;
}
