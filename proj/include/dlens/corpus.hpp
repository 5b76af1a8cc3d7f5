#pragma once

#include <atomic>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dlens/ccd.hpp"
#include "dlens/classifier.hpp"
#include "dlens/ngram.hpp"

namespace dlens {

class EmptyManifest : public Error {
 public:
  EmptyManifest() : Error("manifest lists no pairs") {}
};

class MissingLabels : public Error {
 public:
  using Error::Error;
};

/// Bad command-line input discovered after argument parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ManifestError : public Error {
 public:
  using Error::Error;
};

struct PairRecord {
  std::string pair_id;
  std::filesystem::path source_path;
  std::filesystem::path decompiled_path;
  std::optional<Label> label;
  std::string project;
  std::string decompiler;
};

/// CSV with header `pair_id,source_path,decompiled_path[,label][,project][,decompiler]`
/// (any column order). Relative paths resolve against `base_dir`.
std::vector<PairRecord> parse_manifest(std::string_view text,
                                       const std::filesystem::path& base_dir = {});
std::vector<PairRecord> read_manifest(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

/// Two decimals, rounding half away from zero on the exact binary value.
std::string format_fixed2(double value);
double round2(double value);

enum class Metric : std::uint8_t { Cc, Ccd, Ppl };
std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);

struct FileScore {
  std::string path;
  std::optional<double> score;
  std::string error;           // set when score is absent
  std::size_t tokens = 0;      // ppl only
  std::vector<MethodScore> methods;
};

struct ScoreContext {
  Metric metric = Metric::Cc;
  const NgramModel* model = nullptr;  // required for Ppl
  CcdConfig ccd;
};

FileScore score_source(std::string_view source, const std::string& path, const ScoreContext& ctx);
FileScore score_file(const std::filesystem::path& path, const ScoreContext& ctx);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads; results keep index order.
template <typename Fn>
auto parallel_map(std::size_t n, unsigned jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  std::vector<decltype(fn(std::size_t{}))> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
  };
  std::vector<std::jthread> pool;
  for (unsigned j = 0; j < std::min<std::size_t>(jobs, n); ++j) pool.emplace_back(worker);
  pool.clear();  // joins
  return out;
}

// ---- commands -------------------------------------------------------------
// Each writes JSON Lines to `out`, diagnostics to `err`, and returns the exit
// code: 0 success, 2 data error. Usage errors are caught by the CLI front end.

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct ScoreOptions {
  std::vector<std::filesystem::path> files;
  Metric metric = Metric::Cc;
  std::optional<std::filesystem::path> model;
  CcdConfig ccd;
  unsigned jobs = 1;
};
int run_score(const ScoreOptions& opt, std::ostream& out, std::ostream& err);

struct CompareOptions {
  std::filesystem::path manifest;
  Metric metric = Metric::Cc;
  ThresholdConfig threshold;
  std::optional<std::filesystem::path> model;
  CcdConfig ccd;
  unsigned jobs = 1;
  bool csv = false;
  bool summary = false;  // human-readable table on `err`
};
int run_compare(const CompareOptions& opt, std::ostream& out, std::ostream& err);

struct TrainOptions {
  std::filesystem::path corpus_dir;
  std::filesystem::path out_path;
  int order = 5;
  SmoothingConfig smoothing;
  unsigned jobs = 1;
};
int run_train_lm(const TrainOptions& opt, std::ostream& out, std::ostream& err);

struct TuneOptions {
  std::filesystem::path manifest;
  Metric metric = Metric::Cc;
  ThresholdMode mode = ThresholdMode::Absolute;
  std::vector<double> grid;  // empty: default grid for the mode
  std::optional<std::filesystem::path> model;
  CcdConfig ccd;
  unsigned jobs = 1;
};
int run_tune(const TuneOptions& opt, std::ostream& out, std::ostream& err);

struct PatternsOptions {
  std::optional<std::filesystem::path> manifest;  // scans decompiled files
  std::vector<std::filesystem::path> files;
  CcdConfig ccd;
  unsigned jobs = 1;
};
int run_patterns(const PatternsOptions& opt, std::ostream& out, std::ostream& err);

struct EvaluateOptions {
  ConfusionMatrix matrix;
};
int run_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err);

/// "a,b,c;d,e,f;g,h,i", rows predicted, columns actual.
ConfusionMatrix parse_matrix(std::string_view text);
std::vector<double> parse_grid(std::string_view text);

}  // namespace dlens
