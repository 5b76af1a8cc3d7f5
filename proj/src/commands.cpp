#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "dlens/corpus.hpp"

namespace dlens {
namespace {

using json = nlohmann::ordered_json;

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

json num2(double v) { return round2(v); }

json score_json(Metric metric, double v) {
  if (metric == Metric::Cc) return static_cast<long long>(std::llround(v));
  return num2(v);
}

json eval_json(const EvalReport& r) {
  json matrix = json::array();
  for (const auto& row : r.matrix.cells) matrix.push_back(row);
  json per_class = json::object();
  for (Label l : kAllLabels) {
    const auto& m = r.of(l);
    per_class[std::string(to_string(l))] = {
        {"precision", num2(m.precision)}, {"recall", num2(m.recall)}, {"f1", num2(m.f1)}};
  }
  return {{"pairs", r.matrix.total()}, {"matrix", matrix}, {"per_class", per_class},
          {"macro_f1", num2(r.macro_f1)}};
}

template <typename Fn>
int guarded(std::ostream& err, Fn fn) {
  try {
    return fn();
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

std::optional<NgramModel> load_model_for(Metric metric,
                                         const std::optional<std::filesystem::path>& path) {
  if (metric != Metric::Ppl) return std::nullopt;
  if (!path) throw UsageError("metric ppl requires --model");
  return NgramModel::load(read_file(*path));
}

json pattern_list(const PatternReport& r) {
  json list = json::array();
  for (Pattern p : r.present_set()) list.push_back(std::string(to_string(p)));
  return list;
}

std::optional<PatternReport> patterns_of(const std::filesystem::path& path, const CcdConfig& ccd) {
  try {
    return detect_patterns(parse(read_file(path), path.string()), ccd);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

struct PairScores {
  FileScore original;
  FileScore decompiled;
  std::optional<PatternReport> patterns;
};

std::vector<PairScores> score_pairs(const std::vector<PairRecord>& pairs, const ScoreContext& ctx,
                                    unsigned jobs, bool with_patterns) {
  return parallel_map(pairs.size(), jobs, [&](std::size_t i) {
    PairScores s;
    s.original = score_file(pairs[i].source_path, ctx);
    s.decompiled = score_file(pairs[i].decompiled_path, ctx);
    if (with_patterns) s.patterns = patterns_of(pairs[i].decompiled_path, ctx.ccd);
    return s;
  });
}

std::string pair_error(const PairScores& s) {
  if (!s.original.score) return "original: " + s.original.error;
  if (!s.decompiled.score) return "decompiled: " + s.decompiled.error;
  return {};
}

}  // namespace

int run_score(const ScoreOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto model = load_model_for(opt.metric, opt.model);
    ScoreContext ctx{opt.metric, model ? &*model : nullptr, opt.ccd};
    auto scores = parallel_map(opt.files.size(), opt.jobs,
                               [&](std::size_t i) { return score_file(opt.files[i], ctx); });
    int rc = kExitOk;
    for (const auto& s : scores) {
      json row = {{"path", s.path}, {"metric", to_string(opt.metric)}};
      if (!s.score) {
        row["error"] = s.error;
        rc = kExitData;
      } else {
        row["score"] = score_json(opt.metric, *s.score);
        if (opt.metric == Metric::Ppl) {
          row["tokens"] = s.tokens;
        } else {
          json methods = json::array();
          for (const auto& m : s.methods) {
            methods.push_back({{"name", m.name}, {"line", m.span.begin.line}, {"cc", m.total}});
          }
          row["methods"] = methods;
        }
      }
      emit(out, row);
    }
    return rc;
  });
}

int run_compare(const CompareOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.threshold.t < 0 || (opt.threshold.mode == ThresholdMode::Ratio && opt.threshold.t >= 1)) {
      throw UsageError("threshold out of range for " + std::string(to_string(opt.threshold.mode)) +
                       " mode");
    }
    auto pairs = read_manifest(opt.manifest);
    auto model = load_model_for(opt.metric, opt.model);
    ScoreContext ctx{opt.metric, model ? &*model : nullptr, opt.ccd};
    auto scores = score_pairs(pairs, ctx, opt.jobs, true);

    int rc = kExitOk;
    std::vector<Label> predicted, truths;
    if (opt.csv) out << "pair_id,metric,original,decompiled,predicted,label,patterns,error\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& p = pairs[i];
      const auto& s = scores[i];
      std::string error = pair_error(s);
      std::optional<Label> label;
      if (error.empty()) {
        try {
          label = classify(*s.decompiled.score, *s.original.score, opt.threshold);
        } catch (const Error& e) {
          error = e.what();
        }
      }
      if (!error.empty()) rc = kExitData;
      if (label && p.label) {
        predicted.push_back(*label);
        truths.push_back(*p.label);
      }

      if (opt.csv) {
        std::string pats;
        if (s.patterns) {
          for (Pattern pt : s.patterns->present_set()) {
            pats += (pats.empty() ? "" : " ") + std::string(to_string(pt));
          }
        }
        out << csv_field(p.pair_id) << ',' << to_string(opt.metric) << ','
            << (s.original.score ? format_fixed2(*s.original.score) : "") << ','
            << (s.decompiled.score ? format_fixed2(*s.decompiled.score) : "") << ','
            << (label ? to_string(*label) : "") << ',' << (p.label ? to_string(*p.label) : "")
            << ',' << pats << ',' << csv_field(error) << '\n';
        continue;
      }
      json row = {{"pair_id", p.pair_id}, {"metric", to_string(opt.metric)}};
      if (s.original.score) row["original"] = score_json(opt.metric, *s.original.score);
      if (s.decompiled.score) row["decompiled"] = score_json(opt.metric, *s.decompiled.score);
      if (label) row["predicted"] = to_string(*label);
      if (p.label) row["label"] = to_string(*p.label);
      if (!p.project.empty()) row["project"] = p.project;
      if (!p.decompiler.empty()) row["decompiler"] = p.decompiler;
      if (s.patterns) row["patterns"] = pattern_list(*s.patterns);
      if (!error.empty()) row["error"] = error;
      emit(out, row);
    }

    std::optional<EvalReport> report;
    if (!predicted.empty()) report = evaluate(predicted, truths);
    if (report && !opt.csv) emit(out, {{"evaluation", eval_json(*report)}});
    if (opt.summary) {
      err << "pairs: " << pairs.size() << "  metric: " << to_string(opt.metric)
          << "  mode: " << to_string(opt.threshold.mode) << "  t: " << opt.threshold.t << '\n';
      if (report) {
        err << std::left << std::setw(6) << "" << std::setw(11) << "precision" << std::setw(8)
            << "recall" << "f1\n";
        for (Label l : kAllLabels) {
          const auto& m = report->of(l);
          err << std::setw(6) << to_string(l) << std::setw(11) << format_fixed2(m.precision)
              << std::setw(8) << format_fixed2(m.recall) << format_fixed2(m.f1) << '\n';
        }
        err << "macro F1 " << format_fixed2(report->macro_f1) << '\n';
      }
    }
    return rc;
  });
}

int run_train_lm(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.order < 1) throw UsageError("order must be at least 1");
    if (!std::filesystem::is_directory(opt.corpus_dir)) {
      throw Error("corpus directory not found: " + opt.corpus_dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(opt.corpus_dir)) {
      if (e.is_regular_file() && e.path().extension() == ".java") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.generic_string() < b.generic_string(); });

    struct Lexed {
      std::vector<std::string> tokens;
      std::string error;
    };
    auto lexed = parallel_map(files.size(), opt.jobs, [&](std::size_t i) {
      Lexed l;
      try {
        l.tokens = token_stream(read_file(files[i]));
      } catch (const Error& e) {
        l.error = e.what();
      }
      return l;
    });

    int rc = kExitOk;
    std::vector<std::vector<std::string>> corpus;
    std::size_t tokens = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (!lexed[i].error.empty()) {
        err << "skipped " << files[i].string() << ": " << lexed[i].error << '\n';
        rc = kExitData;
        continue;
      }
      tokens += lexed[i].tokens.size();
      corpus.push_back(std::move(lexed[i].tokens));
    }
    NgramModel model = train(corpus, opt.order, opt.smoothing);
    std::string bytes = model.save();
    std::ofstream f(opt.out_path, std::ios::binary | std::ios::trunc);
    if (!f || !f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
      throw Error("cannot write " + opt.out_path.string());
    }
    emit(out, {{"model", opt.out_path.string()},
               {"order", opt.order},
               {"files", corpus.size()},
               {"skipped", files.size() - corpus.size()},
               {"tokens", tokens},
               {"vocab_size", model.vocab_size()}});
    return rc;
  });
}

int run_tune(const TuneOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto pairs = read_manifest(opt.manifest);
    for (const auto& p : pairs) {
      if (!p.label) throw MissingLabels("pair '" + p.pair_id + "' has no label; tuning needs labels");
    }
    std::vector<double> grid = opt.grid.empty() ? default_grid(opt.mode) : opt.grid;
    auto model = load_model_for(opt.metric, opt.model);
    ScoreContext ctx{opt.metric, model ? &*model : nullptr, opt.ccd};
    auto scores = score_pairs(pairs, ctx, opt.jobs, false);

    int rc = kExitOk;
    std::vector<std::pair<double, double>> xs;
    std::vector<Label> truths;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::string error = pair_error(scores[i]);
      if (error.empty() && opt.mode == ThresholdMode::Ratio && !(*scores[i].original.score > 0)) {
        error = "original score must be positive in ratio mode";
      }
      if (!error.empty()) {
        err << "skipped " << pairs[i].pair_id << ": " << error << '\n';
        rc = kExitData;
        continue;
      }
      xs.emplace_back(*scores[i].decompiled.score, *scores[i].original.score);
      truths.push_back(*pairs[i].label);
    }
    auto result = tune_threshold(xs, truths, opt.mode, grid);
    for (const auto& g : result.grid) emit(out, {{"t", g.t}, {"macro_f1", num2(g.macro_f1)}});
    emit(out, {{"metric", to_string(opt.metric)},
               {"mode", to_string(opt.mode)},
               {"pairs", xs.size()},
               {"best_t", result.best_t},
               {"best_macro_f1", num2(result.best_macro_f1)}});
    return rc;
  });
}

int run_patterns(const PatternsOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    struct Item {
      std::filesystem::path path;
      const PairRecord* pair = nullptr;
    };
    std::vector<PairRecord> pairs;
    std::vector<Item> items;
    if (opt.manifest) {
      pairs = read_manifest(*opt.manifest);
      for (const auto& p : pairs) items.push_back({p.decompiled_path, &p});
    }
    for (const auto& f : opt.files) items.push_back({f, nullptr});
    if (items.empty()) throw UsageError("no files to scan");

    struct Result {
      std::optional<PatternReport> report;
      std::string error;
    };
    auto results = parallel_map(items.size(), opt.jobs, [&](std::size_t i) {
      Result r;
      try {
        r.report = detect_patterns(parse(read_file(items[i].path), items[i].path.string()), opt.ccd);
      } catch (const Error& e) {
        r.error = e.what();
      }
      return r;
    });

    using Counts = std::array<std::size_t, 7>;  // P1..P6, any
    auto bump = [](Counts& c, const PatternReport& r) {
      bool any = false;
      for (Pattern p : kAllPatterns) {
        if (r.present(p)) {
          ++c[static_cast<std::size_t>(p)];
          any = true;
        }
      }
      if (any) ++c[6];
    };
    auto counts_json = [](const Counts& c, std::size_t files) {
      json j = {{"files", files}};
      for (Pattern p : kAllPatterns) j[std::string(to_string(p))] = c[static_cast<std::size_t>(p)];
      j["any"] = c[6];
      return j;
    };

    int rc = kExitOk;
    Counts total{};
    std::size_t scanned = 0;
    std::map<std::string, std::pair<Counts, std::size_t>> by_project, by_decompiler;
    for (std::size_t i = 0; i < items.size(); ++i) {
      json row = {{"path", items[i].path.string()}};
      if (items[i].pair) row["pair_id"] = items[i].pair->pair_id;
      if (!results[i].report) {
        row["error"] = results[i].error;
        rc = kExitData;
        emit(out, row);
        continue;
      }
      const auto& r = *results[i].report;
      row["patterns"] = pattern_list(r);
      json sites = json::object();
      for (Pattern p : r.present_set()) {
        json list = json::array();
        for (const auto& s : r.sites(p)) list.push_back({s.begin.line, s.begin.column});
        sites[std::string(to_string(p))] = list;
      }
      row["sites"] = sites;
      emit(out, row);

      ++scanned;
      bump(total, r);
      if (const PairRecord* p = items[i].pair) {
        if (!p->project.empty()) {
          auto& e = by_project[p->project];
          bump(e.first, r);
          ++e.second;
        }
        if (!p->decompiler.empty()) {
          auto& e = by_decompiler[p->decompiler];
          bump(e.first, r);
          ++e.second;
        }
      }
    }
    json agg = {{"aggregate", counts_json(total, scanned)}};
    if (!by_decompiler.empty()) {
      json j = json::object();
      for (const auto& [k, v] : by_decompiler) j[k] = counts_json(v.first, v.second);
      agg["by_decompiler"] = j;
    }
    if (!by_project.empty()) {
      json j = json::object();
      for (const auto& [k, v] : by_project) j[k] = counts_json(v.first, v.second);
      agg["by_project"] = j;
    }
    emit(out, agg);
    return rc;
  });
}

int run_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.matrix.total() == 0) throw EmptyInput("confusion matrix is empty");
    emit(out, eval_json(evaluate(opt.matrix)));
    return kExitOk;
  });
}

ConfusionMatrix parse_matrix(std::string_view text) {
  ConfusionMatrix m;
  std::size_t row = 0, col = 0;
  std::size_t i = 0;
  auto bad = [&] {
    return UsageError("matrix must be 3 rows of 3 nonnegative integers, e.g. \"1,2,3;4,5,6;7,8,9\"");
  };
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc() || row >= 3 || col >= 3) throw bad();
    m.cells[row][col] = v;
    i = static_cast<std::size_t>(ptr - text.data());
    while (i < text.size() && text[i] == ' ') ++i;
    if (i == text.size()) break;
    if (text[i] == ',') {
      ++col;
    } else if (text[i] == ';') {
      if (col != 2) throw bad();
      ++row;
      col = 0;
    } else {
      throw bad();
    }
    ++i;
  }
  if (row != 2 || col != 2) throw bad();
  return m;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> grid;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string_view::npos) j = text.size();
    std::string item(text.substr(i, j - i));
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0' || !(v >= 0)) {
      throw UsageError("grid must be a comma-separated list of nonnegative numbers");
    }
    grid.push_back(v);
    i = j + 1;
  }
  return grid;
}

}  // namespace dlens
