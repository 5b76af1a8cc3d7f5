#include "dlens/classifier.hpp"

#include <cmath>
#include <string>

namespace dlens {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::Less: return "Less";
    case Label::Equi: return "Equi";
    case Label::More: return "More";
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view text) {
  for (Label l : kAllLabels) {
    if (text == to_string(l)) return l;
  }
  return std::nullopt;
}

std::string_view to_string(ThresholdMode mode) {
  return mode == ThresholdMode::Absolute ? "absolute" : "ratio";
}

Label classify_absolute(double x, double ori, double t) {
  if (!(t >= 0)) throw InvalidThreshold("absolute threshold must be nonnegative");
  if (x > ori + t) return Label::Less;
  if (x >= ori - t) return Label::Equi;
  return Label::More;
}

Label classify_ratio(double x, double ori, double t) {
  if (!(t >= 0 && t < 1)) throw InvalidThreshold("ratio threshold must lie in [0, 1)");
  if (!(ori > 0)) throw NonPositiveOriginal("ratio mode needs a positive original score");
  if (x > (1 + t) * ori) return Label::Less;
  if (x >= (1 - t) * ori) return Label::Equi;
  return Label::More;
}

Label classify(double x, double ori, const ThresholdConfig& config) {
  return config.mode == ThresholdMode::Absolute ? classify_absolute(x, ori, config.t)
                                                : classify_ratio(x, ori, config.t);
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : cells) {
    for (auto c : row) sum += c;
  }
  return sum;
}

EvalReport evaluate(const ConfusionMatrix& matrix) {
  EvalReport r;
  r.matrix = matrix;
  double f1_sum = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::uint64_t row = 0, col = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      row += matrix.cells[i][j];
      col += matrix.cells[j][i];
    }
    auto tp = static_cast<double>(matrix.cells[i][i]);
    ClassMetrics& m = r.per_class[i];
    m.precision = row == 0 ? 0.0 : tp / static_cast<double>(row);
    m.recall = col == 0 ? 0.0 : tp / static_cast<double>(col);
    double denom = m.precision + m.recall;
    m.f1 = denom == 0 ? 0.0 : 2 * m.precision * m.recall / denom;
    f1_sum += m.f1;
  }
  r.macro_f1 = f1_sum / 3;
  return r;
}

EvalReport evaluate(const std::vector<Label>& predictions, const std::vector<Label>& truths) {
  if (predictions.size() != truths.size()) {
    throw LengthMismatch(std::to_string(predictions.size()) + " predictions vs " +
                         std::to_string(truths.size()) + " truths");
  }
  if (predictions.empty()) throw EmptyInput("nothing to evaluate");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < predictions.size(); ++i) ++m.at(predictions[i], truths[i]);
  return evaluate(m);
}

TuneResult tune_threshold(const std::vector<std::pair<double, double>>& pairs,
                          const std::vector<Label>& truths, ThresholdMode mode,
                          const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidThreshold("threshold grid is empty");
  if (pairs.size() != truths.size()) {
    throw LengthMismatch(std::to_string(pairs.size()) + " pairs vs " +
                         std::to_string(truths.size()) + " truths");
  }
  if (pairs.empty()) throw EmptyInput("nothing to tune on");
  TuneResult result;
  bool have_best = false;
  std::vector<Label> predictions(pairs.size());
  for (double t : grid) {
    ThresholdConfig config{mode, t};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      predictions[i] = classify(pairs[i].first, pairs[i].second, config);
    }
    double f1 = evaluate(predictions, truths).macro_f1;
    result.grid.push_back({t, f1});
    if (!have_best || f1 > result.best_macro_f1 ||
        (f1 == result.best_macro_f1 && t < result.best_t)) {
      result.best_t = t;
      result.best_macro_f1 = f1;
      have_best = true;
    }
  }
  return result;
}

std::vector<double> default_absolute_grid() {
  std::vector<double> g;
  for (int t = 0; t <= 10; ++t) g.push_back(t);
  return g;
}

std::vector<double> default_ratio_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 50; ++i) g.push_back(i / 100.0);
  return g;
}

std::vector<double> default_grid(ThresholdMode mode) {
  return mode == ThresholdMode::Absolute ? default_absolute_grid() : default_ratio_grid();
}

}  // namespace dlens
