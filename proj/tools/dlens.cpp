#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "dlens/corpus.hpp"

using namespace dlens;

namespace {

const std::vector<std::string> kMetrics = {"cc", "ccd", "ppl"};
const std::vector<std::string> kModes = {"absolute", "ratio"};

ThresholdMode mode_or(const std::string& text, Metric metric) {
  if (text.empty()) return metric == Metric::Ppl ? ThresholdMode::Ratio : ThresholdMode::Absolute;
  return text == "ratio" ? ThresholdMode::Ratio : ThresholdMode::Absolute;
}

void add_jobs(CLI::App* cmd, unsigned& jobs) {
  cmd->add_option("-j,--jobs", jobs, "Worker threads")->envname("DLENS_JOBS")->check(CLI::Range(1u, 256u));
}

void add_line_threshold(CLI::App* cmd, std::size_t& threshold) {
  cmd->add_option("--line-threshold", threshold, "Long-line threshold in characters")
      ->envname("DLENS_LINE_THRESHOLD")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Understandability metrics for original and decompiled Java sources"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dlens 1.0.0");

  std::string metric = "cc";
  std::string mode;

  ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "Score Java files");
  score_cmd->add_option("files", score.files, "Java files")->required();
  score_cmd->add_option("-m,--metric", metric, "cc, ccd or ppl")
      ->envname("DLENS_METRIC")
      ->check(CLI::IsMember(kMetrics));
  score_cmd->add_option("--model", score.model, "Language model for ppl")->envname("DLENS_MODEL");
  add_line_threshold(score_cmd, score.ccd.line_threshold);
  add_jobs(score_cmd, score.jobs);

  CompareOptions compare;
  std::optional<double> compare_t;
  auto* compare_cmd = app.add_subcommand("compare", "Classify manifest pairs as Less/Equi/More");
  compare_cmd->add_option("manifest", compare.manifest, "Pair manifest (CSV)")->required();
  compare_cmd->add_option("-m,--metric", metric, "cc, ccd or ppl")
      ->envname("DLENS_METRIC")
      ->check(CLI::IsMember(kMetrics));
  compare_cmd->add_option("--mode", mode, "absolute or ratio (default: ratio for ppl)")
      ->envname("DLENS_MODE")
      ->check(CLI::IsMember(kModes));
  compare_cmd->add_option("-t,--threshold", compare_t, "Threshold (default 3 absolute, 0.27 ratio)")
      ->envname("DLENS_THRESHOLD");
  compare_cmd->add_option("--model", compare.model, "Language model for ppl")->envname("DLENS_MODEL");
  compare_cmd->add_flag("--csv", compare.csv, "Write rows as CSV instead of JSON Lines");
  compare_cmd->add_flag("--summary", compare.summary, "Print a summary table to stderr");
  add_line_threshold(compare_cmd, compare.ccd.line_threshold);
  add_jobs(compare_cmd, compare.jobs);

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train-lm", "Train an n-gram language model");
  train_cmd->add_option("corpus", train.corpus_dir, "Directory of .java files")->required();
  train_cmd->add_option("-o,--out", train.out_path, "Model file to write")->required();
  train_cmd->add_option("-n,--order", train.order, "n-gram order")
      ->envname("DLENS_ORDER")
      ->check(CLI::Range(1, 16));
  train_cmd->add_option("-k", train.smoothing.k, "Add-k smoothing constant")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--min-count", train.smoothing.min_count,
                        "Tokens rarer than this become UNK");
  add_jobs(train_cmd, train.jobs);

  TuneOptions tune;
  std::string tune_grid;
  auto* tune_cmd = app.add_subcommand("tune", "Grid-search the threshold on a labeled manifest");
  tune_cmd->add_option("manifest", tune.manifest, "Labeled pair manifest (CSV)")->required();
  tune_cmd->add_option("-m,--metric", metric, "cc, ccd or ppl")
      ->envname("DLENS_METRIC")
      ->check(CLI::IsMember(kMetrics));
  tune_cmd->add_option("--mode", mode, "absolute or ratio (default: ratio for ppl)")
      ->envname("DLENS_MODE")
      ->check(CLI::IsMember(kModes));
  tune_cmd->add_option("--grid", tune_grid, "Comma-separated thresholds");
  tune_cmd->add_option("--model", tune.model, "Language model for ppl")->envname("DLENS_MODEL");
  add_line_threshold(tune_cmd, tune.ccd.line_threshold);
  add_jobs(tune_cmd, tune.jobs);

  PatternsOptions patterns;
  std::filesystem::path patterns_manifest;
  auto* patterns_cmd = app.add_subcommand("patterns", "Report decompilation patterns");
  patterns_cmd->add_option("--manifest", patterns_manifest, "Scan the decompiled side of a manifest");
  patterns_cmd->add_option("files", patterns.files, "Java files");
  add_line_threshold(patterns_cmd, patterns.ccd.line_threshold);
  add_jobs(patterns_cmd, patterns.jobs);

  std::string matrix;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Metrics of a confusion matrix");
  evaluate_cmd->add_option("--matrix", matrix, "Rows predicted, columns actual: \"a,b,c;d,e,f;g,h,i\"")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const Metric chosen = *parse_metric(metric);
  score.metric = compare.metric = tune.metric = chosen;

  try {
    if (*score_cmd) return run_score(score, std::cout, std::cerr);
    if (*compare_cmd) {
      compare.threshold.mode = mode_or(mode, chosen);
      compare.threshold.t = compare_t.value_or(compare.threshold.mode == ThresholdMode::Ratio
                                                   ? kDefaultRatioThreshold
                                                   : kDefaultAbsoluteThreshold);
      return run_compare(compare, std::cout, std::cerr);
    }
    if (*train_cmd) return run_train_lm(train, std::cout, std::cerr);
    if (*tune_cmd) {
      tune.mode = mode_or(mode, chosen);
      if (!tune_grid.empty()) tune.grid = parse_grid(tune_grid);
      return run_tune(tune, std::cout, std::cerr);
    }
    if (*patterns_cmd) {
      if (!patterns_manifest.empty()) patterns.manifest = patterns_manifest;
      return run_patterns(patterns, std::cout, std::cerr);
    }
    if (*evaluate_cmd) return run_evaluate({parse_matrix(matrix)}, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
