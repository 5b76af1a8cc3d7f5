#pragma once

#include <string>
#include <vector>

#include "dlens/syntax.hpp"

namespace dlens {

struct Increment {
  NodeId node = kNoNode;
  Span span;
  std::string reason;  // "if", "else", "else if", "ternary", "for", ..., "logical", "jump"
  int nesting = 0;     // nesting part already included in `amount`
  int amount = 0;
};

struct MethodScore {
  NodeId node = kNoNode;
  std::string name;
  Span span;
  int total = 0;
  std::vector<Increment> increments;
};

struct CcBreakdown {
  std::vector<MethodScore> methods;
  int file_total = 0;
};

/// Base Cognitive Complexity of every method, constructor and initializer
/// (and of field initializers that contain increments, e.g. lambdas).
CcBreakdown cognitive_complexity(const SyntaxUnit& unit);

}  // namespace dlens
