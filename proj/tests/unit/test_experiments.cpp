#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ghmc/experiments/acceptance.hpp"
#include "ghmc/experiments/config.hpp"
#include "ghmc/experiments/record.hpp"
#include "ghmc/experiments/run.hpp"

namespace ghmc::experiments {
namespace {

namespace fs = std::filesystem;

double scalar_value(const ResultRecord& r, const std::string& name) {
  for (const auto& q : r.scalars) {
    if (q.name == name) return q.value;
  }
  ADD_FAILURE() << "missing scalar " << name;
  return NAN;
}

std::string invalid_path(const Json& doc) {
  try {
    run(parse_config(doc));
  } catch (const ConfigInvalid& e) {
    return e.path();
  } catch (const Error& e) {
    return std::string("other: ") + e.what();
  }
  return "accepted";
}

TEST(Config, TopLevelValidation) {
  EXPECT_THROW(parse_config(Json::array()), ConfigInvalid);
  EXPECT_THROW(parse_config(Json{{"kind", "no-such-kind"}}), ConfigInvalid);
  EXPECT_THROW(parse_config(Json{{"kind", "metrics"}, {"sede", 3}}), ConfigInvalid);
  EXPECT_THROW(parse_config(Json{{"kind", "metrics"}, {"schema_version", 2}}), ConfigInvalid);
  EXPECT_THROW(parse_config(Json{{"seed", 3}}), ConfigInvalid);
  const ExperimentConfig c = parse_config(Json{{"seed", 3}}, Kind::kChain);
  EXPECT_EQ(c.kind, Kind::kChain);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_FALSE(c.name.empty());
}

TEST(Config, ParameterErrorsNameTheField) {
  EXPECT_EQ(invalid_path(Json{{"kind", "chain"}, {"parameters", {{"steps", -1}}}}), "$.parameters.steps");
  EXPECT_EQ(invalid_path(Json{{"kind", "chain"}, {"parameters", {{"stpes", 5}}}}), "$.parameters.stpes");
  EXPECT_EQ(invalid_path(Json{{"kind", "chain"}, {"parameters", {{"min_contraction", "high"}}}}),
            "$.parameters.min_contraction");
  const Json bad_mix = {{"alpha", 0.5}, {"components", {{{"prob", 1.0}, {"mean", 0.0}, {"variance", -1.0}}}}};
  EXPECT_EQ(invalid_path(Json{{"kind", "limit-law"}, {"parameters", {{"mixture", bad_mix}}}}),
            "$.parameters.mixture.components[0].variance");
}

TEST(Config, RoundTrip) {
  for (const auto& c : acceptance_criteria()) {
    EXPECT_EQ(parse_config(c.config.to_json()).to_json(), c.config.to_json()) << c.config.name;
  }
}

TEST(Config, LoadAllowsComments) {
  const fs::path path = fs::temp_directory_path() / "ghmc_test_config.json";
  std::ofstream(path) << "{\n  // comment\n  \"kind\": \"metrics\", \"seed\": 5\n}\n";
  EXPECT_EQ(load_config(path).seed, 5u);
  fs::remove(path);
}

TEST(Record, EmptySeriesCsvIsHeaderOnly) {
  ResultRecord r;
  EXPECT_EQ(serialize(r, Format::kCsv), "step,quantity,value\n");
  r.point(3, "x", 0.1);
  EXPECT_EQ(serialize(r, Format::kCsv), "step,quantity,value\n3,x,0.10000000000000001\n");
}

TEST(Record, CheckSemantics) {
  ResultRecord r;
  EXPECT_TRUE(r.check("a", 1.0, 1.0, ""));
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.check("b", NAN, 1.0, ""));
  EXPECT_FALSE(r.passed());
}

ExperimentConfig metrics_config(std::uint64_t seed) {
  return parse_config(Json{{"kind", "metrics"}, {"seed", seed}, {"parameters", {{"triples", 2000}}}});
}

TEST(Record, JsonRoundTrip) {
  const ResultRecord r = run(metrics_config(4));
  EXPECT_EQ(record_from_json(Json::parse(serialize(r, Format::kJson))), r);
}

TEST(Record, EmissionIsByteIdentical) {
  const fs::path dir = fs::temp_directory_path() / "ghmc_test_emit";
  emit(run(metrics_config(9)), Format::kJson, dir / "a" / "out.json");
  emit(run(metrics_config(9)), Format::kJson, dir / "b" / "out.json");
  auto slurp = [](const fs::path& p) {
    std::ostringstream s;
    s << std::ifstream(p).rdbuf();
    return s.str();
  };
  const std::string a = slurp(dir / "a" / "out.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b" / "out.json"));
  EXPECT_EQ(a.find("wall_clock"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Run, TimingIsOptIn) {
  RunOptions opts;
  opts.timing = true;
  EXPECT_TRUE(run(metrics_config(1), opts).wall_clock_seconds.has_value());
  EXPECT_FALSE(run(metrics_config(1)).wall_clock_seconds.has_value());
}

TEST(Run, LemmaCheckPasses) {
  const ResultRecord r = run(parse_config(Json{
      {"kind", "lemma-check"}, {"seed", 7}, {"parameters", {{"dims", {4}}, {"instances", 1}, {"points", 1000}}}}));
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.assertions.empty());
}

TEST(Run, LimitLawMoments) {
  const Json mix = {{"alpha", 0.5},
                    {"components",
                     {{{"prob", 0.5}, {"mean", -1.0}, {"variance", 1.0}},
                      {{"prob", 0.5}, {"mean", 1.0}, {"variance", 1.0}}}}};
  const ResultRecord r = run(parse_config(
      Json{{"kind", "limit-law"}, {"seed", 3}, {"parameters", {{"mixture", mix}, {"parts", {"moments"}}}}}));
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(scalar_value(r, "limit_mean"), 0.0, 1e-15);
  EXPECT_NEAR(scalar_value(r, "limit_variance"), 4.0 / 3.0, 1e-15);
}

TEST(Run, ChainDistanceIsGeometric) {
  const ResultRecord r = run(parse_config(
      Json{{"kind", "chain"}, {"seed", 2}, {"parameters", {{"dims", {1}}, {"steps", 20}}}}));
  EXPECT_TRUE(r.passed());
  const double c = scalar_value(r, "d1_run0_contraction");
  std::vector<double> dr;
  for (const auto& pt : r.series) {
    if (pt.quantity == "d1_run0_d_r") dr.push_back(pt.value);
  }
  ASSERT_EQ(dr.size(), 21u);
  EXPECT_NEAR(dr[20] / dr[0], std::pow(c, 20), 1e-12 * std::pow(c, 20));
}

TEST(Run, ResultsIndependentOfThreads) {
  const ExperimentConfig cfg = parse_config(Json{
      {"kind", "step-check"}, {"seed", 5},
      {"parameters", {{"check", "monte-carlo"}, {"dims", {2}}, {"instances", 2}, {"samples", 50000}}}});
  RunOptions one;
  one.threads = 1;
  RunOptions four;
  four.threads = 4;
  EXPECT_EQ(serialize(run(cfg, one), Format::kJson), serialize(run(cfg, four), Format::kJson));
}

TEST(Acceptance, ThirteenCriteriaWithDistinctFiles) {
  const auto& all = acceptance_criteria();
  ASSERT_EQ(all.size(), 13u);
  std::set<std::string> files;
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].id, static_cast<int>(i + 1));
    files.insert(all[i].file_name());
  }
  EXPECT_EQ(files.size(), 13u);
}

}  // namespace
}  // namespace ghmc::experiments
