#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

using Corpus = std::vector<std::vector<std::string>>;

// Independent reimplementation: rescans the padded corpus for every query.
struct BruteForce {
  Corpus corpus;
  int n;
  double k;
  std::uint32_t min_count;
  std::set<std::string> vocab;

  BruteForce(Corpus c, int order, double kk, std::uint32_t mc)
      : corpus(std::move(c)), n(order), k(kk), min_count(mc) {
    std::map<std::string, std::uint32_t> f;
    for (const auto& s : corpus)
      for (const auto& t : s) ++f[t];
    for (const auto& [t, c2] : f)
      if (c2 >= min_count) vocab.insert(t);
  }

  std::string map(const std::string& t) const { return vocab.count(t) ? t : "\x01UNK"; }

  std::vector<std::string> padded(const std::vector<std::string>& s) const {
    std::vector<std::string> out(static_cast<std::size_t>(n - 1), "\x02BOS");
    for (const auto& t : s) out.push_back(map(t));
    return out;
  }

  // occurrences of `g` ending at a real (non-padding) position
  double count(const std::vector<std::string>& g) const {
    double c = 0;
    for (const auto& s : corpus) {
      auto p = padded(s);
      for (std::size_t end = static_cast<std::size_t>(n - 1); end < p.size(); ++end) {
        if (end + 1 < g.size()) continue;
        std::size_t start = end + 1 - g.size();
        if (std::equal(g.begin(), g.end(), p.begin() + static_cast<std::ptrdiff_t>(start))) ++c;
      }
    }
    return c;
  }

  // histories counted as prefixes of windows that end at a real position
  double history_count(const std::vector<std::string>& h) const {
    double c = 0;
    for (const auto& s : corpus) {
      auto p = padded(s);
      for (std::size_t end = static_cast<std::size_t>(n - 1); end < p.size(); ++end) {
        if (end < h.size()) continue;
        std::size_t start = end - h.size();
        if (std::equal(h.begin(), h.end(), p.begin() + static_cast<std::ptrdiff_t>(start))) ++c;
      }
    }
    return c;
  }

  double prob(std::vector<std::string> ctx, const std::string& w) const {
    double V = static_cast<double>(vocab.size() + 1);
    double p = 1.0 / V;
    for (std::size_t m = 0; m <= ctx.size(); ++m) {
      std::vector<std::string> h(ctx.end() - static_cast<std::ptrdiff_t>(m), ctx.end());
      auto hw = h;
      hw.push_back(w);
      p = (count(hw) + k * V * p) / (history_count(h) + k * V);
    }
    return p;
  }

  double perplexity(const std::vector<std::string>& tokens) const {
    std::vector<std::string> p(static_cast<std::size_t>(n - 1), "\x02BOS");
    for (const auto& t : tokens) p.push_back(map(t));
    double ls = 0;
    for (std::size_t i = static_cast<std::size_t>(n - 1); i < p.size(); ++i) {
      std::vector<std::string> ctx(p.begin() + static_cast<std::ptrdiff_t>(i + 1 - n),
                                   p.begin() + static_cast<std::ptrdiff_t>(i));
      ls += std::log(prob(ctx, p[i]));
    }
    return std::exp(-ls / static_cast<double>(tokens.size()));
  }
};
