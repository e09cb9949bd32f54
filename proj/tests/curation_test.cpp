#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "mesh_generators.hpp"
#include "meshtok/curation.hpp"
#include "meshtok/error.hpp"

namespace meshtok {
namespace {

ScoreTable table(std::initializer_list<std::pair<const char*, double>> rows, const char* label) {
  ScoreTable t;
  t.label = label;
  for (const auto& [id, v] : rows) t.scores.emplace(id, v);
  return t;
}

CurationConfig loss_config(double threshold) {
  CurationConfig cfg;
  cfg.loss_threshold = threshold;
  return cfg;
}

TEST(Config, ParseAndValidate) {
  const auto cfg = parse_curation_config(
      R"({"area_min": 2.5, "loss_threshold": 0.7, "face_min": 100, "cd_threshold": 0.05})");
  EXPECT_EQ(cfg.area_min, 2.5);
  EXPECT_EQ(cfg.loss_threshold, 0.7);
  EXPECT_EQ(cfg.aesthetic_keep_fraction, 0.2);
  EXPECT_EQ(cfg.face_min, 100u);
  EXPECT_EQ(cfg.cd_threshold, 0.05);
  EXPECT_FALSE(parse_curation_config("{}").cd_threshold.has_value());
  EXPECT_THROW(parse_curation_config(R"({"aesthetic_keep_fraction": 0})"), ConfigError);
  EXPECT_THROW(parse_curation_config(R"({"aesthetic_keep_fraction": 1.5})"), ConfigError);
  EXPECT_THROW(parse_curation_config(R"({"area_min": -1})"), ConfigError);
  EXPECT_THROW(parse_curation_config(R"({"areamin": 1})"), ConfigError);
  EXPECT_THROW(parse_curation_config("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_curation_config("{"), ConfigError);
}

TEST(ScoreTables, Parse) {
  const auto t = parse_score_table("# loss\nm1 0.5\n\nm2\t1e-3\n", "loss");
  EXPECT_EQ(t.find("m1"), 0.5);
  EXPECT_EQ(t.find("m2"), 1e-3);
  EXPECT_FALSE(t.find("m3").has_value());
  EXPECT_THROW(parse_score_table("a 1\na 2\n", "x"), StructuralError);
  EXPECT_THROW(parse_score_table("a one\n", "x"), ParseError);
}

TEST(Cascade, SmallAreaDropped) {
  const std::vector<CurationCandidate> c = {{"small", 0.5}, {"big", 3.0}};
  const auto r = run_filter_cascade(c, {}, {}, CurationConfig{});
  EXPECT_EQ(r.kept, std::vector<std::string>{"big"});
  ASSERT_EQ(r.dropped.size(), 1u);
  EXPECT_EQ(r.dropped[0].id, "small");
  EXPECT_STREQ(to_string(r.dropped[0].reason), "area");
}

TEST(Cascade, MeshOverloadMeasuresArea) {
  std::vector<std::pair<std::string, Mesh>> meshes;
  meshes.emplace_back("tiny", testing::box({0, 0, 0}, {0.1, 0.1, 0.1}));
  meshes.emplace_back("sphere", testing::icosphere(2));
  const auto r = run_filter_cascade(meshes, {}, {}, CurationConfig{});
  EXPECT_EQ(r.kept, std::vector<std::string>{"sphere"});
}

TEST(Cascade, LowLossKeptRegardlessOfAesthetics) {
  std::vector<CurationCandidate> c = {{"good", 2}};
  ScoreTable losses{"loss", {{"good", 0.1}}};
  ScoreTable aes{"aesthetic", {{"good", -100.0}}};
  for (int n = 0; n < 5; ++n) {
    const std::string id = "bad" + std::to_string(n);
    c.push_back({id, 2});
    losses.scores.emplace(id, 0.9);
    aes.scores.emplace(id, n);
  }
  const auto r = run_filter_cascade(c, losses, aes, loss_config(0.5));
  EXPECT_EQ(r.kept, (std::vector<std::string>{"good", "bad4"}));
  EXPECT_EQ(r.rescued, std::vector<std::string>{"bad4"});
  ASSERT_EQ(r.dropped.size(), 4u);
  EXPECT_STREQ(to_string(r.dropped[0].reason), "aesthetic");
}

TEST(Cascade, RescuesTopFractionOfFlagged) {
  std::vector<CurationCandidate> c;
  ScoreTable losses{"loss", {}};
  ScoreTable aesthetics{"aesthetic", {}};
  const double scores[] = {0.3, 0.9, 0.1, 0.5, 0.95, 0.2, 0.4, 0.6, 0.7, 0.05};
  for (int n = 0; n < 10; ++n) {
    const std::string id = "m" + std::to_string(n);
    c.push_back({id, 5.0});
    losses.scores.emplace(id, 2.0);
    aesthetics.scores.emplace(id, scores[n]);
  }
  const auto r = run_filter_cascade(c, losses, aesthetics, loss_config(1.0));
  EXPECT_EQ(r.kept, (std::vector<std::string>{"m1", "m4"}));
  EXPECT_EQ(r.rescued, r.kept);
  EXPECT_EQ(r.dropped.size(), 8u);
}

TEST(Cascade, TiesAtTheCutSurvive) {
  const std::vector<CurationCandidate> c = {{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}, {"e", 2}};
  const auto losses = table({{"a", 9}, {"b", 9}, {"c", 9}, {"d", 9}, {"e", 9}}, "loss");
  const auto aes = table({{"a", 1}, {"b", 5}, {"c", 5}, {"d", 2}, {"e", 3}}, "aesthetic");
  const auto r = run_filter_cascade(c, losses, aes, loss_config(1.0));
  EXPECT_EQ(r.kept, (std::vector<std::string>{"b", "c"}));
}

TEST(Cascade, RescueCountRounding) {
  EXPECT_EQ(rescue_count(10, 0.2), 2u);
  EXPECT_EQ(rescue_count(11, 0.2), 3u);
  EXPECT_EQ(rescue_count(1, 0.2), 1u);
  EXPECT_EQ(rescue_count(0, 0.2), 0u);
  EXPECT_EQ(rescue_count(7, 1.0), 7u);
  for (std::size_t n = 1; n < 1000; ++n) {
    EXPECT_EQ(rescue_count(n * 5, 0.2), n);
  }
}

TEST(Cascade, MissingScoresNameEveryId) {
  const std::vector<CurationCandidate> c = {{"a", 2}, {"b", 2}, {"c", 0.1}};
  try {
    run_filter_cascade(c, table({}, "loss"), {}, loss_config(1.0));
    FAIL();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find(": a, b"), std::string::npos) << what;
    // "c" fails the area floor first, so no loss is needed for it.
    EXPECT_EQ(what.find(", c"), std::string::npos) << what;
  }
  EXPECT_THROW(run_filter_cascade(c, table({{"a", 5}, {"b", 0}}, "loss"), table({}, "aes"),
                                  loss_config(1.0)),
               ConfigError);
}

TEST(Cascade, OrderDeterministic) {
  std::vector<CurationCandidate> c;
  ScoreTable losses{"loss", {}};
  ScoreTable aes{"aes", {}};
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0, 3);
  for (int n = 0; n < 200; ++n) {
    const std::string id = "x" + std::to_string(n);
    c.push_back({id, u(gen)});
    losses.scores.emplace(id, u(gen));
    aes.scores.emplace(id, u(gen));
  }
  const auto a = run_filter_cascade(c, losses, aes, loss_config(1.5));
  const auto b = run_filter_cascade(c, losses, aes, loss_config(1.5));
  EXPECT_EQ(a.kept, b.kept);
  EXPECT_EQ(a.kept.size() + a.dropped.size(), c.size());
}

TEST(DecidePair, TruthTable) {
  const double tau = 0.04;
  EXPECT_EQ(decide_pair(2 * tau, 3 * tau, tau).outcome, PairOutcome::DiscardBoth);
  EXPECT_EQ(decide_pair(tau / 2, 2 * tau, tau).outcome, PairOutcome::PreferFirst);
  EXPECT_EQ(decide_pair(2 * tau, tau / 2, tau).outcome, PairOutcome::PreferSecond);
  EXPECT_EQ(decide_pair(tau / 2, tau / 2, tau).outcome, PairOutcome::NeedsHuman);
  EXPECT_EQ(decide_pair(tau, tau, tau).outcome, PairOutcome::NeedsHuman);
  EXPECT_THROW(decide_pair(-1, 0, tau), DomainError);
  EXPECT_THROW(decide_pair(0, 0, 0), DomainError);
}

TEST(DecidePair, ScaleCovariant) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> cd(0, 2);
  std::uniform_int_distribution<int> power(-20, 20);
  for (int n = 0; n < 2000; ++n) {
    const double a = cd(gen), b = cd(gen), tau = cd(gen) + 0.01;
    // Powers of two scale exactly.
    const double s = std::ldexp(1.0, power(gen));
    EXPECT_EQ(decide_pair(a, b, tau).outcome, decide_pair(a * s, b * s, tau * s).outcome);
  }
}

TEST(PairManifest, BuildWithFaceFloor) {
  CurationConfig cfg;
  cfg.cd_threshold = 0.1;
  const std::vector<PairCandidate> c = {
      {"c1", "a", "b", 0.05, 0.2, 6000, 6000},
      {"c2", "a", "b", 0.05, 0.2, 4000, 4000},
      {"c3", "a", "b", 0.05, 0.06, 5000, 9000},
      {"c4", "a", "b", 0.5, 0.6, 5000, 5000},
  };
  const auto m = build_pair_manifest(c, cfg);
  ASSERT_EQ(m.rows.size(), 3u);
  ASSERT_EQ(m.excluded.size(), 1u);
  EXPECT_EQ(m.excluded[0].condition, "c2");
  EXPECT_EQ(m.rows[0].outcome, PairOutcome::PreferFirst);
  EXPECT_EQ(m.rows[0].chosen, Choice::A);
  EXPECT_EQ(m.rows[1].outcome, PairOutcome::NeedsHuman);
  EXPECT_FALSE(m.rows[1].chosen.has_value());
  EXPECT_EQ(m.rows[2].outcome, PairOutcome::DiscardBoth);
  EXPECT_FALSE(m.rows[2].chosen.has_value());
  EXPECT_EQ(m.unresolved(), 1u);

  EXPECT_THROW(build_pair_manifest(c, CurationConfig{}), ConfigError);
  auto dup = c;
  dup.push_back(c[0]);
  EXPECT_THROW(build_pair_manifest(dup, cfg), StructuralError);
}

TEST(PairManifest, AnnotationRoundTrip) {
  CurationConfig cfg;
  cfg.cd_threshold = 0.1;
  const std::vector<PairCandidate> c = {
      {"c1", "a", "b", 0.05, 0.2, 6000, 6000},
      {"c2", "a", "b", 0.01, 0.02, 6000, 6000},
      {"c3", "x", "y", 1.0 / 3.0, 0.07, 6000, 6000},
      {"c4", "x", "y", 0.03, 0.07, 6000, 6000},
  };
  const auto m = build_pair_manifest(c, cfg);
  EXPECT_EQ(m.unresolved(), 2u);

  std::ostringstream out;
  write_pair_manifest(out, m.rows);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "condition_id\tA\tB\tcd_A\tcd_B\toutcome\tchosen");
  auto parsed = read_pair_manifest(text);
  ASSERT_EQ(parsed.size(), m.rows.size());
  EXPECT_EQ(parsed[2].cd_a, 1.0 / 3.0);

  // A human fills in the pending rows.
  for (auto& row : parsed) {
    if (row.outcome == PairOutcome::NeedsHuman) row.chosen = Choice::B;
  }
  std::ostringstream annotated;
  write_pair_manifest(annotated, parsed);
  const auto merged = merge_annotations(m.rows, read_pair_manifest(annotated.str()));
  PairManifest done{merged, {}};
  EXPECT_EQ(done.unresolved(), 0u);
  EXPECT_EQ(merged[1].chosen, Choice::B);
  EXPECT_EQ(merged[0].chosen, Choice::A);

  auto bad = parsed;
  bad[0].chosen = Choice::B;
  EXPECT_THROW(merge_annotations(m.rows, bad), StructuralError);
  bad = parsed;
  bad[0].condition = "nope";
  EXPECT_THROW(merge_annotations(m.rows, bad), StructuralError);
}

TEST(PairManifest, ReadErrors) {
  EXPECT_THROW(read_pair_manifest("c\ta\tb\t0.1\t0.2\tmaybe\t\n"), ParseError);
  EXPECT_THROW(read_pair_manifest("c\ta\tb\t0.1\t0.2\tprefer_first\tB\n"), ParseError);
  EXPECT_THROW(read_pair_manifest("c\ta\tb\t0.1\n"), ParseError);
}

TEST(PairCandidates, Read) {
  const auto c = read_pair_candidates(
      "condition_id\tA\tB\tcd_A\tcd_B\tfaces_A\tfaces_B\nc1\tm1\tm2\t0.01\t0.5\t6000\t7000\n");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].mesh_b, "m2");
  EXPECT_EQ(c[0].faces_b, 7000u);
  EXPECT_THROW(read_pair_candidates("c1\tm1\tm2\t0.01\t0.5\t-1\t7000\n"), ParseError);
}

}  // namespace
}  // namespace meshtok
