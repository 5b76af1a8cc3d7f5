#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "dlens/syntax.hpp"

namespace dlens {

enum class Label : std::uint8_t { Less, Equi, More };
inline constexpr std::array<Label, 3> kAllLabels = {Label::Less, Label::Equi, Label::More};

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

enum class ThresholdMode : std::uint8_t { Absolute, Ratio };
std::string_view to_string(ThresholdMode mode);

struct ThresholdConfig {
  ThresholdMode mode = ThresholdMode::Absolute;
  double t = 3.0;
};

inline constexpr double kDefaultAbsoluteThreshold = 3.0;
inline constexpr double kDefaultRatioThreshold = 0.27;

class NonPositiveOriginal : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidThreshold : public Error {
 public:
  using Error::Error;
};

/// `x` is the decompiled score, `ori` the original's. Higher scores mean
/// harder code, so a decompiled score above the band is Less understandable.
Label classify_absolute(double x, double ori, double t);
Label classify_ratio(double x, double ori, double t);
Label classify(double x, double ori, const ThresholdConfig& config);

/// 3x3 counts indexed [predicted][actual] in Less, Equi, More order.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 3>, 3> cells{};

  std::uint64_t& at(Label predicted, Label actual) {
    return cells[static_cast<std::size_t>(predicted)][static_cast<std::size_t>(actual)];
  }
  std::uint64_t at(Label predicted, Label actual) const {
    return cells[static_cast<std::size_t>(predicted)][static_cast<std::size_t>(actual)];
  }
  std::uint64_t total() const;
};

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct EvalReport {
  ConfusionMatrix matrix;
  std::array<ClassMetrics, 3> per_class{};  // indexed by Label
  double macro_f1 = 0;

  const ClassMetrics& of(Label label) const { return per_class[static_cast<std::size_t>(label)]; }
};

EvalReport evaluate(const std::vector<Label>& predictions, const std::vector<Label>& truths);
EvalReport evaluate(const ConfusionMatrix& matrix);

struct GridPoint {
  double t = 0;
  double macro_f1 = 0;
};

struct TuneResult {
  double best_t = 0;
  double best_macro_f1 = 0;
  std::vector<GridPoint> grid;
};

/// Exhaustive search for the threshold with the highest macro F1; ties go
/// to the smaller t.
TuneResult tune_threshold(const std::vector<std::pair<double, double>>& pairs,
                          const std::vector<Label>& truths, ThresholdMode mode,
                          const std::vector<double>& grid);

/// Integers 0..10.
std::vector<double> default_absolute_grid();
/// 0.01, 0.02, ..., 0.50.
std::vector<double> default_ratio_grid();
std::vector<double> default_grid(ThresholdMode mode);

}  // namespace dlens
