#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dlens/cognitive.hpp"

namespace dlens {

enum class Rule : std::uint8_t { R1, R2, R3, R4, R5, R6 };
std::string_view to_string(Rule rule);

struct RuleIncrement {
  Rule rule = Rule::R1;
  Span span;
  double amount = 0;
};

struct CcdConfig {
  std::size_t line_threshold = 120;
  /// Long lines add length/threshold instead of its floor.
  bool fractional_long_lines = false;
};

struct CcdBreakdown {
  CcBreakdown base;
  std::vector<RuleIncrement> rule_increments;  // ordered by position, then rule
  double file_total = 0;
};

CcdBreakdown cognitive_complexity_d(const SyntaxUnit& unit, const CcdConfig& config = {});

enum class Pattern : std::uint8_t { P1, P2, P3, P4, P5, P6 };
inline constexpr std::array<Pattern, 6> kAllPatterns = {Pattern::P1, Pattern::P2, Pattern::P3,
                                                        Pattern::P4, Pattern::P5, Pattern::P6};
std::string_view to_string(Pattern pattern);

struct PatternReport {
  std::string path;
  std::array<std::vector<Span>, 6> per_pattern;  // indexed by Pattern

  const std::vector<Span>& sites(Pattern p) const {
    return per_pattern[static_cast<std::size_t>(p)];
  }
  bool present(Pattern p) const { return !sites(p).empty(); }
  std::vector<Pattern> present_set() const;
};

/// Minimum block depth at which a conditional or loop counts as deeply nested.
inline constexpr int kDeepBlockDepth = 3;

/// Block depth of a conditional/loop statement: 1 at method level, +1 inside
/// a then/loop/case body, +2 inside a plain else body, and `else if` keeps the
/// depth of the chain it continues.
int block_depth(const SyntaxUnit& unit, NodeId id);

PatternReport detect_patterns(const SyntaxUnit& unit, const CcdConfig& config = {});

/// Numeric value of a Java numeric literal lexeme (`0x1F`, `1_000L`, `1.5e3f`, `017`).
double numeric_literal_value(std::string_view lexeme);

}  // namespace dlens
