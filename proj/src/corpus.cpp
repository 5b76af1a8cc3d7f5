#include "dlens/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/tokenizer.hpp>

namespace dlens {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string trim(std::string s) {
  auto space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && space(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && space(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

std::vector<std::string> split_csv(const std::string& line) {
  using Sep = boost::escaped_list_separator<char>;
  boost::tokenizer<Sep> tok(line, Sep('\\', ',', '"'));
  std::vector<std::string> out;
  for (const auto& f : tok) out.push_back(trim(f));
  return out;
}

std::optional<Label> label_from(const std::string& text) {
  std::string t = text;
  if (t.empty()) return std::nullopt;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  t[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
  return parse_label(t);
}

}  // namespace

std::vector<PairRecord> parse_manifest(std::string_view text,
                                       const std::filesystem::path& base_dir) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> header;
  std::size_t line_no = 0;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    header = split_csv(line);
  }
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* required : {"pair_id", "source_path", "decompiled_path"}) {
    if (!col.count(required)) {
      throw ManifestError(std::string("manifest header lacks column '") + required + "'");
    }
  }

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };

  std::vector<PairRecord> pairs;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = split_csv(line);
    } catch (const boost::escaped_list_error& e) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
    fields.resize(std::max(fields.size(), header.size()));
    auto field = [&](const char* name) -> std::string {
      auto it = col.find(name);
      return it == col.end() ? std::string() : fields[it->second];
    };
    PairRecord r;
    r.pair_id = field("pair_id");
    if (r.pair_id.empty()) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": empty pair_id");
    }
    if (field("source_path").empty() || field("decompiled_path").empty()) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": missing path");
    }
    r.source_path = resolve(field("source_path"));
    r.decompiled_path = resolve(field("decompiled_path"));
    std::string label = field("label");
    if (!label.empty()) {
      r.label = label_from(label);
      if (!r.label) {
        throw ManifestError("manifest line " + std::to_string(line_no) + ": unknown label '" +
                            label + "'");
      }
    }
    r.project = field("project");
    r.decompiler = field("decompiler");
    pairs.push_back(std::move(r));
  }
  if (pairs.empty()) throw EmptyManifest();
  return pairs;
}

std::vector<PairRecord> read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.parent_path());
}

std::string format_fixed2(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  // glibc prints the exact decimal expansion of a double given enough digits.
  std::vector<char> buf(1500);
  std::snprintf(buf.data(), buf.size(), "%.1100f", std::fabs(value));
  std::string s(buf.data());
  std::size_t dot = s.find('.');
  std::string digits = s.substr(0, dot) + s.substr(dot + 1, 2);
  bool up = s[dot + 3] >= '5';
  if (up) {
    int i = static_cast<int>(digits.size()) - 1;
    while (i >= 0 && digits[static_cast<std::size_t>(i)] == '9') digits[static_cast<std::size_t>(i--)] = '0';
    if (i < 0) {
      digits.insert(digits.begin(), '1');
    } else {
      ++digits[static_cast<std::size_t>(i)];
    }
  }
  std::string out = digits.substr(0, digits.size() - 2) + "." + digits.substr(digits.size() - 2);
  bool zero = out.find_first_not_of("0.") == std::string::npos;
  return (value < 0 && !zero) ? "-" + out : out;
}

double round2(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_fixed2(value).c_str(), nullptr);
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Cc: return "cc";
    case Metric::Ccd: return "ccd";
    case Metric::Ppl: return "ppl";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (Metric m : {Metric::Cc, Metric::Ccd, Metric::Ppl}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

FileScore score_source(std::string_view source, const std::string& path, const ScoreContext& ctx) {
  FileScore fs;
  fs.path = path;
  try {
    switch (ctx.metric) {
      case Metric::Cc: {
        auto cc = cognitive_complexity(parse(source, path));
        fs.score = cc.file_total;
        fs.methods = std::move(cc.methods);
        break;
      }
      case Metric::Ccd: {
        auto ccd = cognitive_complexity_d(parse(source, path), ctx.ccd);
        fs.score = ccd.file_total;
        fs.methods = std::move(ccd.base.methods);
        break;
      }
      case Metric::Ppl: {
        if (!ctx.model) throw Error("perplexity needs a language model");
        auto tokens = token_stream(source);
        auto p = perplexity(*ctx.model, tokens);
        fs.score = p.value;
        fs.tokens = p.token_count;
        break;
      }
    }
  } catch (const Error& e) {
    fs.score.reset();
    fs.error = e.what();
  }
  return fs;
}

FileScore score_file(const std::filesystem::path& path, const ScoreContext& ctx) {
  std::string source;
  try {
    source = read_file(path);
  } catch (const Error& e) {
    FileScore fs;
    fs.path = path.string();
    fs.error = e.what();
    return fs;
  }
  return score_source(source, path.string(), ctx);
}

}  // namespace dlens
