#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dlens/syntax.hpp"

namespace dlens {

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("training corpus contains no tokens") {}
};

class VersionMismatch : public Error {
 public:
  using Error::Error;
};

class CorruptModel : public Error {
 public:
  using Error::Error;
};

/// Interpolated add-k smoothing:
///   P_0(w)     = 1 / |V|
///   P_m(w | h) = (c(h w) + k |V| P_{m-1}(w | h')) / (c(h) + k |V|)
/// where h' drops the oldest token of h and |V| counts the UNK entry.
struct SmoothingConfig {
  double k = 0.01;
  /// Training tokens seen fewer times than this are folded into UNK.
  std::uint32_t min_count = 2;
};

struct PerplexityScore {
  double value = 0;
  std::size_t token_count = 0;
};

class NgramModel {
 public:
  static constexpr std::uint32_t kUnk = 0;
  static constexpr std::uint32_t kFormatVersion = 1;

  int order() const { return order_; }
  const SmoothingConfig& smoothing() const { return smoothing_; }
  /// Vocabulary size including UNK.
  std::size_t vocab_size() const { return vocab_.size() + 1; }
  const std::vector<std::string>& vocabulary() const { return vocab_; }

  std::uint32_t id(std::string_view token) const;
  std::uint32_t bos() const { return static_cast<std::uint32_t>(vocab_.size() + 1); }

  /// Raw training count of an n-gram (1 <= length <= order); tokens map through UNK.
  std::uint64_t count(const std::vector<std::string>& ngram) const;

  /// Smoothed P(w | history) using the last order-1 tokens of `history`;
  /// shorter histories are padded with begin-of-sequence sentinels.
  double probability(const std::vector<std::string>& history, std::string_view w) const;
  double probability_ids(const std::vector<std::uint32_t>& context, std::uint32_t w) const;

  std::string save() const;
  static NgramModel load(std::string_view bytes);

  friend NgramModel train(const std::vector<std::vector<std::string>>& corpus, int order,
                          const SmoothingConfig& smoothing);

 private:
  using Key = std::vector<std::uint32_t>;
  void rebuild_index();

  int order_ = 1;
  SmoothingConfig smoothing_;
  std::vector<std::string> vocab_;            // sorted; id = index + 1
  std::map<Key, std::uint64_t> counts_;       // n-grams of every length 1..order
  std::map<Key, std::uint64_t> context_counts_;
};

NgramModel train(const std::vector<std::vector<std::string>>& corpus, int order = 5,
                 const SmoothingConfig& smoothing = {});

PerplexityScore perplexity(const NgramModel& model, const std::vector<std::string>& tokens);

/// Lexeme texts of a Java source, the unit the language model works on.
std::vector<std::string> token_stream(std::string_view source);

}  // namespace dlens
