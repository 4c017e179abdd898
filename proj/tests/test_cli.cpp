#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "effscore/cli.hpp"
#include "effscore/efficiency_basic.hpp"
#include "effscore/efficiency_combined.hpp"

namespace effscore {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("effscore_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

  int run(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "effscore");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
    out_ = out.str();
    err_ = err.str();
    return code;
  }

  json report() const { return json::parse(out_); }

  fs::path dir_;
  std::string out_;
  std::string err_;
};

constexpr const char* kWindow =
    R"("window": {"baseline": 10, "cost_bound": 5, "detect": 0, "recover": 4, "horizon": 10})";

std::string pair_component(double beta, double alpha, const char* status, double y, double x) {
  std::ostringstream s;
  s << R"({"status": ")" << status << R"(", "params": {"beta": )" << beta
    << R"(, "factors": [{"direction": "increasing", "transform": "identity", "bound": 1, "alpha": )"
    << alpha << R"(}, {"direction": "decreasing", "transform": "identity", "bound": 1}]}, "values": [)"
    << y << ", " << x << "]}";
  return s.str();
}

std::string example_config(const char* s1, const char* s2) {
  return R"({"components": [)" + pair_component(0.5, 0.5, s1, 0.5, 0.5) + ", " +
         pair_component(0.4, 0.5, s2, 0.5, 0.5) + R"(], "gammas": [0.5, 0.5]})";
}

TEST_F(CliTest, ImpactFromTraces) {
  write("r.csv", "t,value\n0,5\n10,5\n");
  write("c.csv", "t,value\r\n0,2\r\n10,2\r\n");
  const auto cfg = write("cfg.json", std::string("{") + kWindow +
                                         R"(, "revenue": "r.csv", "cost": "c.csv"})");
  ASSERT_EQ(run({"impact", "--config", cfg}), 0) << err_;
  const json r = report();
  EXPECT_NEAR(r["impact"].get<double>(), 20.0, 1e-12);
  EXPECT_NEAR(r["total_cost"].get<double>(), 8.0, 1e-12);
  EXPECT_TRUE(r["recovered"].get<bool>());
  EXPECT_FALSE(r["impact_clamped"].get<bool>());
}

TEST_F(CliTest, ImpactExitCodes) {
  write("empty.csv", "");
  write("c.csv", "t,value\n0,2\n10,2\n");
  write("late.csv", "t,value\n0,5\n3,5\n");
  write("costly.csv", "t,value\n0,9\n10,9\n");
  const auto cfg = write("cfg.json", std::string("{") + kWindow + "}");
  EXPECT_EQ(run({"impact", "--config", cfg, "--revenue", (dir_ / "empty.csv").string(), "--cost",
                 (dir_ / "c.csv").string()}),
            cli::kParseError);
  EXPECT_NE(err_.find("header"), std::string::npos);
  EXPECT_EQ(run({"impact", "--config", cfg, "--revenue", (dir_ / "late.csv").string(), "--cost",
                 (dir_ / "c.csv").string()}),
            cli::kCoverageError);
  const auto late_detect = write(
      "late_detect.json",
      R"({"window": {"baseline": 10, "cost_bound": 5, "detect": 12, "horizon": 20}})");
  EXPECT_EQ(run({"impact", "--config", late_detect, "--revenue", (dir_ / "c.csv").string(),
                 "--cost", (dir_ / "c.csv").string()}),
            cli::kCoverageError);
  EXPECT_EQ(run({"impact", "--config", cfg, "--revenue", (dir_ / "c.csv").string(), "--cost",
                 (dir_ / "costly.csv").string()}),
            cli::kSuccess);
  const auto unrecovered = write(
      "unrec.json", R"({"window": {"baseline": 10, "cost_bound": 5, "horizon": 10}})");
  EXPECT_EQ(run({"impact", "--config", unrecovered, "--revenue", (dir_ / "c.csv").string(),
                 "--cost", (dir_ / "costly.csv").string()}),
            cli::kValidationError);
  EXPECT_EQ(run({"impact", "--config", unrecovered, "--revenue", (dir_ / "c.csv").string(),
                 "--cost", (dir_ / "costly.csv").string(), "--clamp-cost"}),
            cli::kSuccess);
  EXPECT_TRUE(report()["cost_clamped"].get<bool>());
}

TEST_F(CliTest, UsageAndConfigErrors) {
  EXPECT_EQ(run({}), cli::kParseError);
  EXPECT_EQ(run({"bogus"}), cli::kParseError);
  EXPECT_EQ(run({"score"}), cli::kParseError);
  EXPECT_EQ(run({"score", "--config", (dir_ / "missing.json").string()}), cli::kParseError);
  const auto bad = write("bad.json", "{not json");
  EXPECT_EQ(run({"score", "--config", bad}), cli::kParseError);
  const auto missing = write("missing_field.json", R"({"params": {"beta": 0.2, "alpha": 0.1}})");
  EXPECT_EQ(run({"score", "--config", missing}), cli::kParseError);
  EXPECT_EQ(run({"--help"}), cli::kSuccess);
}

TEST_F(CliTest, ScoreInlineMetrics) {
  const auto cfg = write("cfg.json", std::string("{") + kWindow +
                                         R"(, "params": {"beta": 0.2, "alpha": 0.4},
                                            "metrics": {"impact": 50, "total_cost": 25}})");
  ASSERT_EQ(run({"score", "--config", cfg}), 0) << err_;
  const json r = report();
  const double expected = efficiency_basic(Recovery::recovered, 50, 25, 100, 50, {0.2, 0.4}).value;
  EXPECT_EQ(r["score"].get<double>(), expected);
  EXPECT_NEAR(r["score"].get<double>(), 0.6, 1e-12);
  EXPECT_EQ(r["branch"], "recovered");
  EXPECT_NE(out_.find("\"score\": 0.60000000000000009,"), std::string::npos) << out_;
}

TEST_F(CliTest, ScoreValidationFailureNamesInvariant) {
  const auto cfg = write("cfg.json", std::string("{") + kWindow +
                                         R"(, "params": {"beta": 0.2, "alpha": 0.9},
                                            "metrics": {"impact": 50, "total_cost": 25}})");
  EXPECT_EQ(run({"score", "--config", cfg}), cli::kValidationError);
  EXPECT_NE(err_.find("alpha"), std::string::npos);
  const auto mode = write("mode.json", std::string(R"({"mode": "impact", )") + kWindow +
                                           R"(, "params": {"beta": 0.2, "alpha": 0.4},
                                              "metrics": {"impact": 50, "total_cost": 25}})");
  EXPECT_EQ(run({"score", "--config", mode}), cli::kValidationError);
}

TEST_F(CliTest, ScoreFromStdinAndOutFile) {
  const std::string cfg = std::string("{") + kWindow +
                          R"(, "params": {"beta": 0.2, "alpha": 0.4},
                             "metrics": {"impact": 50, "total_cost": 25}})";
  const std::string out_path = (dir_ / "report.json").string();
  ASSERT_EQ(run({"score", "--config", "-", "--out", out_path}, cfg), 0) << err_;
  EXPECT_TRUE(out_.empty());
  std::ifstream in(out_path);
  const json r = json::parse(in);
  EXPECT_NEAR(r["score"].get<double>(), 0.6, 1e-12);
}

TEST_F(CliTest, OutputIsByteStable) {
  const auto cfg = write("cfg.json", example_config("recovered", "not_recovered"));
  ASSERT_EQ(run({"score-combined", "--config", cfg, "--ratios"}), 0);
  const std::string first = out_;
  ASSERT_EQ(run({"score-combined", "--config", cfg, "--ratios"}), 0);
  EXPECT_EQ(out_, first);
}

TEST_F(CliTest, ScoreGenAndSingleComponentCombination) {
  const std::string component = pair_component(0.2, 0.3, "recovered", 0.5, 0.5);
  const json c = json::parse(component);
  json gen = c;
  gen["mode"] = "score-gen";
  const auto gen_cfg = write("gen.json", gen.dump());
  ASSERT_EQ(run({"score-gen", "--config", gen_cfg}), 0) << err_;
  const double gen_score = report()["score"].get<double>();
  EXPECT_NEAR(gen_score, 0.2 + 0.3 * 0.5 + 0.5 * 0.5, 1e-12);

  const auto comb_cfg = write("comb.json", R"({"components": [)" + component + R"(], "gammas": [1.0]})");
  ASSERT_EQ(run({"score-combined", "--config", comb_cfg}), 0) << err_;
  EXPECT_EQ(report()["score"].get<double>(), gen_score);
}

TEST_F(CliTest, ScoreGenRejectsBadFactors) {
  const auto cfg = write("gen.json", R"({"status": "recovered", "values": [1, 1],
    "params": {"beta": 0.3, "factors": [
      {"direction": "decreasing", "transform": "identity", "bound": 2, "alpha": 0.2},
      {"direction": "increasing", "transform": "identity", "bound": 2, "alpha": 0.2}]}})");
  EXPECT_EQ(run({"score-gen", "--config", cfg}), cli::kValidationError);
  const auto unknown = write("gen2.json", R"({"status": "recovered", "values": [1],
    "params": {"beta": 0.3, "factors": [{"direction": "decreasing", "transform": "exp", "bound": 2}]}})");
  EXPECT_EQ(run({"score-gen", "--config", unknown}), cli::kValidationError);
  const auto power = write("gen3.json", R"({"status": "not_recovered", "values": [1],
    "params": {"beta": 0.3, "factors": [{"direction": "decreasing", "transform": "power", "exponent": 2, "bound": 2}]}})");
  ASSERT_EQ(run({"score-gen", "--config", power}), cli::kSuccess) << err_;
  EXPECT_NEAR(report()["score"].get<double>(), 0.3 / 0.7 * 0.7 * 0.75, 1e-12);
  EXPECT_EQ(report()["params"]["factors"][0]["exponent"].get<double>(), 2.0);
}

TEST_F(CliTest, CombinedRatios) {
  const auto cfg = write("cfg.json", example_config("recovered", "recovered"));
  ASSERT_EQ(run({"score-combined", "--config", cfg, "--ratios"}), 0) << err_;
  const json r = report();
  EXPECT_NEAR(r["ratios"]["ratio_recovered"].get<double>(), -10.0, 1e-12);
  EXPECT_NEAR(r["ratios"]["ratio_not_recovered"].get<double>(), -12.5, 1e-12);
  EXPECT_FALSE(r["ratios"]["equal"].get<bool>());
  EXPECT_NEAR(r["score"].get<double>(), 0.725, 1e-12);
  ASSERT_EQ(run({"score-combined", "--config", cfg}), 0);
  EXPECT_FALSE(report().contains("ratios"));
}

TEST_F(CliTest, AxiomsBasicPasses) {
  const auto cfg = write("cfg.json", std::string("{") + kWindow +
                                         R"(, "formula": "basic", "params": {"beta": 0.3, "alpha": 0.5}})");
  ASSERT_EQ(run({"axioms", "--config", cfg, "--seed", "5"}), 0) << out_ << err_;
  const json r = report();
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_EQ(r["seed"].get<int>(), 5);
  EXPECT_EQ(r["conditions"].size(), 4u);
  EXPECT_NEAR(r["reconstruction"]["beta"].get<double>(), 0.3, 1e-12);
  EXPECT_NEAR(r["reconstruction"]["weights"][0].get<double>(), 0.5, 1e-12);
}

TEST_F(CliTest, AxiomsCombinedFailsRatioCondition) {
  json cfg = json::parse(example_config("recovered", "recovered"));
  cfg["formula"] = "combined";
  const auto path = write("cfg.json", cfg.dump());
  EXPECT_EQ(run({"axioms", "--config", path}), cli::kCheckFailed);
  const json r = report();
  EXPECT_FALSE(r["passed"].get<bool>());
  for (const auto& c : r["conditions"])
    EXPECT_EQ(c["passed"].get<bool>(), c["condition"] != "coefficient_ratio") << c.dump();
}

TEST_F(CliTest, AxiomsGeneralizedAndConcatenatedCombination) {
  const auto gen = write("gen.json", R"({"formula": "generalized", "params": {"beta": 0.25, "factors": [
      {"direction": "increasing", "transform": "sqrt", "bound": 9, "alpha": 0.2},
      {"direction": "decreasing", "transform": "log1p", "bound": 3, "alpha": 0.1},
      {"direction": "decreasing", "transform": "power", "exponent": 1.5, "bound": 2}]}})");
  ASSERT_EQ(run({"axioms", "--config", gen}), 0) << out_;

  // Different layouts, equal betas: the concatenated black box is expandable.
  json cfg = json::parse(R"({"formula": "combined", "gammas": [0.3, 0.7], "components": []})");
  cfg["components"].push_back(json::parse(pair_component(0.4, 0.2, "recovered", 0, 0)));
  cfg["components"].push_back(json::parse(R"({"status": "recovered", "values": [0],
     "params": {"beta": 0.4, "factors": [{"direction": "decreasing", "transform": "sqrt", "bound": 4}]}})"));
  const auto comb = write("comb.json", cfg.dump());
  ASSERT_EQ(run({"axioms", "--config", comb}), 0) << out_;
  EXPECT_EQ(report()["conditions"].size(), 5u);
}

TEST_F(CliTest, CompareGen) {
  const auto mixed = write("mixed.json", example_config("recovered", "not_recovered"));
  EXPECT_EQ(run({"compare-gen", "--config", mixed}), cli::kCheckFailed);
  json r = report();
  EXPECT_FALSE(r["equivalence"].get<bool>());
  EXPECT_NEAR(r["ratios"]["ratio_recovered"].get<double>(), -10.0, 1e-12);
  EXPECT_NEAR(r["ratios"]["ratio_not_recovered"].get<double>(), -12.5, 1e-12);

  const auto recovered = write("rec.json", example_config("recovered", "recovered"));
  ASSERT_EQ(run({"compare-gen", "--config", recovered}), cli::kSuccess) << err_;
  r = report();
  EXPECT_TRUE(r["equivalence"].get<bool>());
  EXPECT_LE(r["max_abs_difference"].get<double>(), 1e-12);
  EXPECT_NEAR(r["expanded"]["beta"].get<double>(), 0.45, 1e-15);
}

}  // namespace
}  // namespace effscore
