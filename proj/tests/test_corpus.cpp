#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dlens/corpus.hpp"
#include "support.hpp"

using namespace dlens;

TEST(Manifest, ParsesColumnsInAnyOrder) {
  auto pairs = parse_manifest(
      "decompiler,label,decompiled_path,pair_id,source_path\n"
      "cfr,less,b/D.java,p1,a/O.java\n"
      "\n"
      "\"jd, gui\",,x.java,\"p 2\",/abs/y.java\r\n",
      "/base");
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].pair_id, "p1");
  EXPECT_EQ(pairs[0].source_path, std::filesystem::path("/base/a/O.java"));
  EXPECT_EQ(pairs[0].decompiled_path, std::filesystem::path("/base/b/D.java"));
  EXPECT_EQ(pairs[0].label, Label::Less);
  EXPECT_EQ(pairs[0].decompiler, "cfr");
  EXPECT_EQ(pairs[1].pair_id, "p 2");
  EXPECT_EQ(pairs[1].decompiler, "jd, gui");
  EXPECT_FALSE(pairs[1].label.has_value());
  EXPECT_EQ(pairs[1].source_path, std::filesystem::path("/abs/y.java"));
}

TEST(Manifest, Errors) {
  EXPECT_THROW(parse_manifest("pair_id,source_path,decompiled_path\n"), EmptyManifest);
  EXPECT_THROW(parse_manifest(""), ManifestError);
  EXPECT_THROW(parse_manifest("pair_id,source_path\np,a\n"), ManifestError);
  EXPECT_THROW(parse_manifest("pair_id,source_path,decompiled_path,label\np,a,b,Worse\n"),
               ManifestError);
  EXPECT_THROW(parse_manifest("pair_id,source_path,decompiled_path\n,a,b\n"), ManifestError);
  EXPECT_THROW(parse_manifest("pair_id,source_path,decompiled_path\np,\"a,b\n"), ManifestError);
}

TEST(Manifest, FixtureFile) {
  auto pairs = read_manifest(fixture_path("pairs.csv"));
  ASSERT_EQ(pairs.size(), 6u);
  EXPECT_TRUE(std::filesystem::exists(pairs[0].source_path));
  EXPECT_TRUE(std::filesystem::exists(pairs[5].decompiled_path));
}

TEST(Format, FixedTwoRoundsHalfAway) {
  EXPECT_EQ(format_fixed2(0), "0.00");
  EXPECT_EQ(format_fixed2(0.125), "0.13");   // exactly representable
  EXPECT_EQ(format_fixed2(-0.125), "-0.13");
  EXPECT_EQ(format_fixed2(2.675), "2.67");   // binary value lies below the half
  EXPECT_EQ(format_fixed2(1.005), "1.00");
  EXPECT_EQ(format_fixed2(9.995), "9.99");
  EXPECT_EQ(format_fixed2(9.996), "10.00");
  EXPECT_EQ(format_fixed2(-0.001), "0.00");
  EXPECT_EQ(format_fixed2(1e20), "100000000000000000000.00");
  EXPECT_DOUBLE_EQ(round2(0.8571428), 0.86);
  EXPECT_DOUBLE_EQ(round2(1.0 / 21), 0.05);
}

TEST(Score, Metrics) {
  ScoreContext cc{Metric::Cc, nullptr, {}};
  auto s = score_source(fixture("kick_decompiled.java"), "k", cc);
  ASSERT_TRUE(s.score);
  EXPECT_EQ(*s.score, 8);
  EXPECT_FALSE(s.methods.empty());

  ScoreContext ccd{Metric::Ccd, nullptr, {}};
  EXPECT_EQ(*score_source(fixture("contains_digit_or_letter.java"), "c", ccd).score, 9);

  auto bad = score_source("class {", "bad", cc);
  EXPECT_FALSE(bad.score);
  EXPECT_NE(bad.error.find("1:"), std::string::npos);

  ScoreContext ppl{Metric::Ppl, nullptr, {}};
  EXPECT_FALSE(score_source("class A {}", "p", ppl).score);
  auto model = train({token_stream(fixture("kick_original.java"))}, 3);
  ppl.model = &model;
  auto p = score_source(fixture("kick_original.java"), "p", ppl);
  ASSERT_TRUE(p.score);
  EXPECT_GE(*p.score, 1.0);
  EXPECT_EQ(p.tokens, token_stream(fixture("kick_original.java")).size());

  auto missing = score_file("/nonexistent/file.java", cc);
  EXPECT_FALSE(missing.score);
}

TEST(Parallel, KeepsOrder) {
  auto v = parallel_map(1000, 8, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < v.size(); ++i) ASSERT_EQ(v[i], i * i);
  EXPECT_TRUE(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
}

TEST(Commands, ParseMatrix) {
  auto m = parse_matrix("1,2,3;4,5,6;7,8,9");
  EXPECT_EQ(m.cells[0][2], 3u);
  EXPECT_EQ(m.cells[2][0], 7u);
  EXPECT_EQ(parse_matrix(" 1, 2,3; 4,5,6;7,8, 9").cells[2][2], 9u);
  EXPECT_THROW(parse_matrix("1,2;3,4"), UsageError);
  EXPECT_THROW(parse_matrix("1,2,3;4,5,6;7,8,9;1,1,1"), UsageError);
  EXPECT_THROW(parse_matrix("1,2,3;4,-5,6;7,8,9"), UsageError);
  EXPECT_THROW(parse_matrix(""), UsageError);
}

TEST(Commands, ParseGrid) {
  EXPECT_EQ(parse_grid("0,0.5,2"), (std::vector<double>{0, 0.5, 2}));
  EXPECT_THROW(parse_grid("1,,2"), UsageError);
  EXPECT_THROW(parse_grid("-1"), UsageError);
  EXPECT_THROW(parse_grid("x"), UsageError);
}

TEST(Commands, CompareEmitsRowsAndEvaluation) {
  CompareOptions opt;
  opt.manifest = fixture_path("pairs.csv");
  opt.metric = Metric::Ccd;
  std::ostringstream out, err;
  EXPECT_EQ(run_compare(opt, out, err), kExitOk) << err.str();
  std::istringstream lines(out.str());
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0].rfind("{\"pair_id\":\"kick\",\"metric\":\"ccd\",\"original\":5.0,\"decompiled\":8.0", 0), 0u)
      << rows[0];
  EXPECT_EQ(rows[6].rfind("{\"evaluation\":", 0), 0u);
}

TEST(Commands, EvaluateRejectsEmptyMatrix) {
  std::ostringstream out, err;
  EXPECT_EQ(run_evaluate({ConfusionMatrix{}}, out, err), kExitData);
  EXPECT_NE(err.str().find("error:"), std::string::npos);
}

TEST(Commands, TuneNeedsLabels) {
  auto dir = std::filesystem::temp_directory_path() / "dlens_tune_labels";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "m.csv") << "pair_id,source_path,decompiled_path\np,"
                                 << fixture_path("kick_original.java") << ','
                                 << fixture_path("kick_decompiled.java") << '\n';
  }
  TuneOptions opt;
  opt.manifest = dir / "m.csv";
  std::ostringstream out, err;
  EXPECT_EQ(run_tune(opt, out, err), kExitData);
  EXPECT_NE(err.str().find("label"), std::string::npos);
  std::filesystem::remove_all(dir);
}
