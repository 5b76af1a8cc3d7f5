#include "dlens/ngram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <unordered_map>

namespace dlens {
namespace {

constexpr char kMagic[4] = {'D', 'L', 'N', 'G'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t uint(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  std::uint64_t u64() { return uint(8); }
  std::string_view take(std::size_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw CorruptModel("model file is truncated");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint32_t NgramModel::id(std::string_view token) const {
  auto it = std::lower_bound(vocab_.begin(), vocab_.end(), token);
  if (it == vocab_.end() || *it != token) return kUnk;
  return static_cast<std::uint32_t>(it - vocab_.begin()) + 1;
}

std::uint64_t NgramModel::count(const std::vector<std::string>& ngram) const {
  Key key;
  key.reserve(ngram.size());
  for (const auto& t : ngram) key.push_back(id(t));
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

double NgramModel::probability_ids(const std::vector<std::uint32_t>& context,
                                   std::uint32_t w) const {
  const double kv = smoothing_.k * static_cast<double>(vocab_size());
  double p = 1.0 / static_cast<double>(vocab_size());
  // Build up from the unigram to the longest available context.
  std::size_t longest = std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  Key key;
  for (std::size_t m = 0; m <= longest; ++m) {
    key.assign(context.end() - static_cast<std::ptrdiff_t>(m), context.end());
    auto h = context_counts_.find(key);
    double ch = h == context_counts_.end() ? 0.0 : static_cast<double>(h->second);
    key.push_back(w);
    auto hw = counts_.find(key);
    double chw = hw == counts_.end() ? 0.0 : static_cast<double>(hw->second);
    p = (chw + kv * p) / (ch + kv);
  }
  return p;
}

double NgramModel::probability(const std::vector<std::string>& history, std::string_view w) const {
  std::vector<std::uint32_t> context(static_cast<std::size_t>(order_ - 1), bos());
  std::size_t take = std::min(history.size(), context.size());
  for (std::size_t i = 0; i < take; ++i) {
    context[context.size() - take + i] = id(history[history.size() - take + i]);
  }
  return probability_ids(context, id(w));
}

void NgramModel::rebuild_index() {
  context_counts_.clear();
  for (const auto& [key, c] : counts_) {
    Key h(key.begin(), key.end() - 1);
    context_counts_[h] += c;
  }
}

NgramModel train(const std::vector<std::vector<std::string>>& corpus, int order,
                 const SmoothingConfig& smoothing) {
  if (order < 1) throw InvalidArgument("order must be at least 1");
  if (!(smoothing.k > 0)) throw InvalidArgument("smoothing constant k must be positive");

  std::unordered_map<std::string, std::uint64_t> freq;
  std::size_t total = 0;
  for (const auto& stream : corpus) {
    for (const auto& t : stream) ++freq[t];
    total += stream.size();
  }
  if (total == 0) throw EmptyCorpus();

  NgramModel m;
  m.order_ = order;
  m.smoothing_ = smoothing;
  for (const auto& [t, c] : freq) {
    if (c >= smoothing.min_count) m.vocab_.push_back(t);
  }
  std::sort(m.vocab_.begin(), m.vocab_.end());

  const auto n = static_cast<std::size_t>(order);
  std::vector<std::uint32_t> seq;
  NgramModel::Key key;
  for (const auto& stream : corpus) {
    seq.assign(n - 1, m.bos());
    for (const auto& t : stream) seq.push_back(m.id(t));
    for (std::size_t i = n - 1; i < seq.size(); ++i) {
      for (std::size_t len = 1; len <= n; ++len) {
        key.assign(seq.begin() + static_cast<std::ptrdiff_t>(i + 1 - len),
                   seq.begin() + static_cast<std::ptrdiff_t>(i + 1));
        ++m.counts_[key];
      }
    }
  }
  m.rebuild_index();
  return m;
}

PerplexityScore perplexity(const NgramModel& model, const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw EmptyInput("cannot score an empty token sequence");
  const auto n = static_cast<std::size_t>(model.order());
  std::vector<std::uint32_t> seq(n - 1, model.bos());
  for (const auto& t : tokens) seq.push_back(model.id(t));
  std::vector<std::uint32_t> context;
  double log_sum = 0;
  for (std::size_t i = n - 1; i < seq.size(); ++i) {
    context.assign(seq.begin() + static_cast<std::ptrdiff_t>(i + 1 - n),
                   seq.begin() + static_cast<std::ptrdiff_t>(i));
    log_sum += std::log(model.probability_ids(context, seq[i]));
  }
  return {std::exp(-log_sum / static_cast<double>(tokens.size())), tokens.size()};
}

std::string NgramModel::save() const {
  std::string out(kMagic, sizeof kMagic);
  put_u32(out, kFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(order_));
  put_u64(out, std::bit_cast<std::uint64_t>(smoothing_.k));
  put_u32(out, smoothing_.min_count);
  put_u32(out, static_cast<std::uint32_t>(vocab_.size()));
  for (const auto& t : vocab_) {
    put_u32(out, static_cast<std::uint32_t>(t.size()));
    out += t;
  }
  put_u64(out, counts_.size());
  for (const auto& [key, c] : counts_) {
    put_u32(out, static_cast<std::uint32_t>(key.size()));
    for (auto id : key) put_u32(out, id);
    put_u64(out, c);
  }
  return out;
}

NgramModel NgramModel::load(std::string_view bytes) {
  Reader r(bytes);
  if (r.take(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw CorruptModel("not a model file (bad magic)");
  }
  std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw VersionMismatch("model format version " + std::to_string(version) + ", expected " +
                          std::to_string(kFormatVersion));
  }
  NgramModel m;
  std::uint32_t order = r.u32();
  if (order < 1 || order > 64) throw CorruptModel("invalid order");
  m.order_ = static_cast<int>(order);
  m.smoothing_.k = std::bit_cast<double>(r.u64());
  if (!(m.smoothing_.k > 0) || !std::isfinite(m.smoothing_.k)) throw CorruptModel("invalid k");
  m.smoothing_.min_count = r.u32();

  std::uint32_t vocab = r.u32();
  if (vocab > bytes.size()) throw CorruptModel("vocabulary size exceeds file size");
  m.vocab_.reserve(vocab);
  for (std::uint32_t i = 0; i < vocab; ++i) {
    std::uint32_t len = r.u32();
    m.vocab_.emplace_back(r.take(len));
    if (i > 0 && !(m.vocab_[i - 1] < m.vocab_[i])) throw CorruptModel("vocabulary not sorted");
  }
  std::uint64_t entries = r.u64();
  if (entries > bytes.size()) throw CorruptModel("count table size exceeds file size");
  for (std::uint64_t e = 0; e < entries; ++e) {
    std::uint32_t len = r.u32();
    if (len < 1 || len > order) throw CorruptModel("invalid n-gram length");
    Key key(len);
    for (auto& id : key) {
      id = r.u32();
      if (id > vocab + 1) throw CorruptModel("token id out of range");
    }
    std::uint64_t c = r.u64();
    if (c == 0) throw CorruptModel("zero count entry");
    if (!m.counts_.emplace(std::move(key), c).second) throw CorruptModel("duplicate n-gram");
  }
  if (!r.done()) throw CorruptModel("trailing bytes after count table");
  m.rebuild_index();
  return m;
}

std::vector<std::string> token_stream(std::string_view source) {
  std::vector<std::string> out;
  for (auto& t : lex(source)) out.push_back(std::move(t.text));
  return out;
}

}  // namespace dlens
