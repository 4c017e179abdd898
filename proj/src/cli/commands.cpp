#include "effscore/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "effscore/axiom_harness.hpp"
#include "effscore/efficiency_basic.hpp"
#include "effscore/efficiency_combined.hpp"
#include "effscore/efficiency_generalized.hpp"
#include "effscore/error.hpp"
#include "effscore/timeseries.hpp"
#include "json_output.hpp"

namespace effscore::cli {

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string revenue;
  std::string cost;
  bool ratios = false;
  bool strict_cost = false;
  bool clamp_cost = false;
};

struct Outcome {
  Json report;
  int code = kSuccess;
};

std::uint64_t seed_of(const Options& opts, const Config& cfg) {
  if (opts.seed) return *opts.seed;
  if (cfg.has("seed")) {
    const auto& s = cfg.doc["seed"];
    if (!s.is_number_unsigned()) throw ParseError("'seed' must be a nonnegative integer");
    return s.get<std::uint64_t>();
  }
  return 0;
}

void check_mode(const Config& cfg, const std::string& mode) {
  if (!cfg.has("mode")) return;
  const auto& m = cfg.doc["mode"];
  if (!m.is_string()) throw ParseError("'mode' must be a string");
  if (m.get<std::string>() != mode)
    throw ValidationError("config mode '" + m.get<std::string>() + "' does not match command '" +
                          mode + "'");
}

CostBoundPolicy cost_policy(const Options& opts) {
  if (opts.strict_cost && opts.clamp_cost)
    throw ParseError("--strict-cost and --clamp-cost are mutually exclusive");
  return opts.clamp_cost ? CostBoundPolicy::clamp : CostBoundPolicy::strict;
}

std::string trace_path(const std::string& flag, const Config& cfg, const char* key) {
  if (!flag.empty()) return flag;
  if (!cfg.has(key)) throw ParseError(std::string("no '") + key + "' trace given");
  return cfg.path_of(key);
}

Json window_json(const WindowMetrics& m) {
  Json j;
  j["impact"] = m.impact;
  j["total_cost"] = m.total_cost;
  j["recovered"] = m.recovered;
  j["impact_clamped"] = m.impact_clamped;
  j["cost_clamped"] = m.cost_clamped;
  return j;
}

WindowMetrics metrics_from_traces(const Options& opts, const Config& cfg,
                                  const AttackWindow& window) {
  const TimeSeries revenue = read_csv_file(trace_path(opts.revenue, cfg, "revenue"));
  const TimeSeries cost = read_csv_file(trace_path(opts.cost, cfg, "cost"));
  return window_metrics(revenue, cost, window, cost_policy(opts));
}

Outcome cmd_impact(const Options& opts, const Config& cfg) {
  const AttackWindow window = parse_window(cfg.doc.at("window"));
  Json report;
  report["mode"] = "impact";
  const Json metrics = window_json(metrics_from_traces(opts, cfg, window));
  report.update(metrics);
  return {report};
}

Outcome cmd_score(const Options& opts, const Config& cfg) {
  const AttackWindow window = parse_window(cfg.doc.at("window"));
  const EfficiencyParams params = parse_basic_params(cfg.doc.at("params"));
  WindowMetrics metrics;
  if (cfg.has("metrics")) {
    const auto& m = cfg.doc["metrics"];
    if (!m.contains("impact") || !m["impact"].is_number() || !m.contains("total_cost") ||
        !m["total_cost"].is_number())
      throw ParseError("'metrics' needs numeric 'impact' and 'total_cost'");
    metrics.impact = m["impact"].get<double>();
    metrics.total_cost = m["total_cost"].get<double>();
    metrics.recovered = window.recovered();
  } else {
    metrics = metrics_from_traces(opts, cfg, window);
  }
  const EfficiencyScore score = efficiency_basic(metrics, window, params);

  Json report;
  report["mode"] = "score";
  report["score"] = score.value;
  report["branch"] = std::string(to_string(score.branch));
  report["metrics"] = {{"impact", metrics.impact},
                       {"total_cost", metrics.total_cost},
                       {"impact_bound", window.impact_bound()},
                       {"cost_bound", window.cost_total_bound()}};
  report["clamped"] = {{"impact", metrics.impact_clamped}, {"total_cost", metrics.cost_clamped}};
  report["params"] = {{"beta", params.beta}, {"alpha", params.alpha}};
  return {report};
}

Outcome cmd_score_gen(const Options&, const Config& cfg) {
  const GeneralizedParams params = parse_generalized(cfg.doc.at("params"));
  const Recovery status = parse_status(cfg.doc.at("status"));
  const EfficiencyScore score = efficiency_generalized(status, parse_values(cfg.doc.at("values")),
                                                       params);
  Json report;
  report["mode"] = "score-gen";
  report["score"] = score.value;
  report["branch"] = std::string(to_string(score.branch));
  report["params"] = describe(params);
  return {report};
}

Json ratios_json(const RatioReport& r) {
  return {{"ratio_recovered", r.ratio_recovered},
          {"ratio_not_recovered", r.ratio_not_recovered},
          {"equal", r.equal}};
}

Outcome cmd_score_combined(const Options& opts, const Config& cfg) {
  const CombinedSpec spec = parse_combined(cfg.doc);
  const double score = efficiency_combined(spec);
  const Eigen::VectorXd parts = component_scores(spec);
  Json components = Json::array();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    components.push_back({{"branch", std::string(to_string(spec.components()[i].status))},
                          {"gamma", spec.gammas()[idx]},
                          {"score", parts[idx]}});
  }
  Json report;
  report["mode"] = "score-combined";
  report["score"] = score;
  report["components"] = std::move(components);
  if (opts.ratios) report["ratios"] = ratios_json(combined_coefficient_ratios(spec));
  return {report};
}

bool same_layout(const CombinedSpec& spec) {
  const auto& first = spec.components().front().params.factors();
  for (const auto& c : spec.components()) {
    const auto& f = c.params.factors();
    if (f.size() != first.size()) return false;
    for (std::size_t k = 0; k < f.size(); ++k)
      if (f[k].direction != first[k].direction || f[k].bound != first[k].bound ||
          !(f[k].transform == first[k].transform))
        return false;
  }
  return true;
}

// Splits a point in expanded factor order back into per-component values.
std::vector<Eigen::VectorXd> split_expanded(const CombinedSpec& spec, const Eigen::VectorXd& x) {
  std::vector<Eigen::VectorXd> parts;
  Eigen::Index next_increasing = 0;
  Eigen::Index next_decreasing = 0;
  for (const auto& c : spec.components())
    next_decreasing += static_cast<Eigen::Index>(c.params.increasing_count());
  for (const auto& c : spec.components()) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(c.params.factor_count()));
    Eigen::Index j = 0;
    for (std::size_t k = 0; k < c.params.increasing_count(); ++k) v[j++] = x[next_increasing++];
    for (std::size_t k = 0; k < c.params.decreasing_count(); ++k) v[j++] = x[next_decreasing++];
    parts.push_back(std::move(v));
  }
  return parts;
}

Outcome cmd_axioms(const Options& opts, const Config& cfg) {
  HarnessOptions harness;
  harness.seed = seed_of(opts, cfg);
  const std::string formula = cfg.has("formula") ? cfg.doc["formula"].get<std::string>() : "basic";

  AxiomReport report;
  if (formula == "basic") {
    const auto& w = cfg.doc.at("window");
    AttackWindow window = parse_window(w);
    const EfficiencyParams params = parse_basic_params(cfg.doc.at("params"));
    const double ib = window.impact_bound();
    const double cb = window.cost_total_bound();
    auto branch = [=](Recovery r) {
      return [=](const Eigen::VectorXd& v) {
        return efficiency_basic(r, v[0], v[1], ib, cb, params).value;
      };
    };
    report = verify_theorem1({branch(Recovery::recovered), branch(Recovery::not_recovered)},
                             window.baseline, window.cost_bound, window.horizon, harness);
  } else if (formula == "generalized") {
    const GeneralizedParams params = parse_generalized(cfg.doc.at("params"));
    auto branch = [&](Recovery r) {
      return [&params, r](const Eigen::VectorXd& v) {
        return efficiency_generalized(r, v, params).value;
      };
    };
    report = verify_theorem2({branch(Recovery::recovered), branch(Recovery::not_recovered)},
                             params, harness);
  } else if (formula == "combined") {
    const CombinedSpec spec = parse_combined(cfg.doc);
    const bool shared = same_layout(spec);
    std::vector<Variable> vars;
    if (shared) {
      vars = spec.components().front().params.variables();
    } else {
      for (std::size_t pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < spec.size(); ++i)
          for (const auto& v : spec.components()[i].params.variables())
            if ((v.direction == Direction::increasing) == (pass == 0))
              vars.push_back({"c" + std::to_string(i + 1) + "." + v.name, v.direction,
                              v.transform, v.bound});
    }
    auto branch = [&spec, shared](Recovery r) {
      return [&spec, shared, r](const Eigen::VectorXd& x) {
        const auto parts = shared ? std::vector<Eigen::VectorXd>(spec.size(), x)
                                  : split_expanded(spec, x);
        double total = 0.0;
        for (std::size_t i = 0; i < spec.size(); ++i)
          total += spec.gammas()[static_cast<Eigen::Index>(i)] *
                   efficiency_generalized(r, parts[i], spec.components()[i].params).value;
        return total;
      };
    };
    report = verify_characterization({branch(Recovery::recovered), branch(Recovery::not_recovered)},
                                     vars, harness);
  } else {
    throw ValidationError("unknown formula '" + formula +
                          "' (expected basic, generalized or combined)");
  }

  Json conditions = Json::array();
  for (const auto& c : report.conditions) {
    Json entry;
    entry["condition"] = c.condition;
    entry["passed"] = c.passed;
    entry["detail"] = c.detail;
    if (c.witness)
      entry["witness"] = std::vector<double>(c.witness->data(), c.witness->data() + c.witness->size());
    else
      entry["witness"] = nullptr;
    conditions.push_back(std::move(entry));
  }
  const auto& rec = report.reconstruction;
  Json out;
  out["mode"] = "axioms";
  out["formula"] = formula;
  out["seed"] = harness.seed;
  out["passed"] = report.passed();
  out["conditions"] = std::move(conditions);
  out["reconstruction"] = {
      {"beta", rec.beta},
      {"weights", std::vector<double>(rec.weights.data(), rec.weights.data() + rec.weights.size())},
      {"max_error", rec.max_error},
      {"matches", rec.matches},
      {"detail", rec.detail}};
  return {out, report.passed() ? kSuccess : kCheckFailed};
}

Outcome cmd_compare_gen(const Options& opts, const Config& cfg) {
  const CombinedSpec spec = parse_combined(cfg.doc);
  Json out;
  out["mode"] = "compare-gen";
  out["all_recovered"] = spec.all_recovered();
  if (!spec.all_recovered()) {
    const EquivalenceWitness w = equivalence_witness(spec);
    out["equivalence"] = !w.violated;
    out["ratios"] = ratios_json(w.ratios);
    out["witness"] = {{"point", {w.point[0], w.point[1]}},
                      {"score_recovered", w.score_recovered},
                      {"score_not_recovered", w.score_not_recovered}};
    return {out, w.violated ? kCheckFailed : kSuccess};
  }

  const GeneralizedParams expanded = combination_to_expanded(spec);
  int points = 100;
  if (cfg.has("points")) {
    if (!cfg.doc["points"].is_number_unsigned()) throw ParseError("'points' must be a positive integer");
    points = cfg.doc["points"].get<int>();
  }
  SampleStream stream(seed_of(opts, cfg));
  double max_diff = 0.0;
  for (int s = 0; s < points; ++s) {
    std::vector<CombinedComponent> moved = spec.components();
    for (auto& c : moved) c.values = stream.point_in(c.params.variables());
    const CombinedSpec at(std::move(moved), spec.gammas());
    const double combined = efficiency_combined(at);
    const double single = efficiency_generalized(Recovery::recovered, expanded_values(at), expanded).value;
    max_diff = std::max(max_diff, std::abs(combined - single));
  }
  const bool equivalent = max_diff <= 1e-12;
  out["equivalence"] = equivalent;
  out["points"] = points;
  out["max_abs_difference"] = max_diff;
  out["expanded"] = describe(expanded);
  return {out, equivalent ? kSuccess : kCheckFailed};
}

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config, "JSON config path, '-' for stdin")->required();
  cmd->add_option("--seed", opts.seed, "Sampling seed (overrides the config)");
  cmd->add_option("--out", opts.out, "Write the report here instead of stdout");
}

void add_traces(CLI::App* cmd, Options& opts) {
  cmd->add_option("--revenue", opts.revenue, "Revenue trace CSV (overrides the config)");
  cmd->add_option("--cost", opts.cost, "Cost trace CSV (overrides the config)");
  cmd->add_flag("--strict-cost", opts.strict_cost, "Fail when total cost exceeds C*T (default)");
  cmd->add_flag("--clamp-cost", opts.clamp_cost, "Clamp total cost to C*T instead of failing");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CoverageError*>(&e)) return kCoverageError;
  if (dynamic_cast<const ValidationError*>(&e)) return kValidationError;
  return kParseError;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Countermeasure efficiency scoring and axiom verification", "effscore"};
  app.require_subcommand(1);
  Options opts;

  using Handler = Outcome (*)(const Options&, const Config&);
  struct Command {
    const char* name;
    const char* help;
    Handler handler;
    bool traces;
  };
  const Command commands[] = {
      {"impact", "Integrate impact and total cost over the attack window", cmd_impact, true},
      {"score", "Two-input efficiency from impact and total cost", cmd_score, true},
      {"score-gen", "Multi-factor efficiency", cmd_score_gen, false},
      {"score-combined", "Convex combination of per-countermeasure efficiencies",
       cmd_score_combined, false},
      {"axioms", "Verify the characterization conditions of a formula", cmd_axioms, false},
      {"compare-gen", "Compare the combined and expanded generalizations", cmd_compare_gen,
       false},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, opts);
    if (c.traces) add_traces(sub, opts);
    if (std::string_view(c.name) == "score-combined")
      sub->add_flag("--ratios", opts.ratios, "Report the branch coefficient ratios");
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kParseError;
  }

  const Command* chosen = nullptr;
  for (const auto& [sub, cmd] : subs)
    if (sub->parsed()) chosen = cmd;

  try {
    const Config cfg = Config::load(opts.config, in);
    check_mode(cfg, chosen->name);
    Outcome outcome;
    try {
      outcome = chosen->handler(opts, cfg);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("config: ") + e.what());
    }
    const std::string text = dump(outcome.report) + "\n";
    if (opts.out.empty()) {
      out << text;
    } else {
      std::ofstream file(opts.out, std::ios::binary);
      if (!file) throw ParseError("cannot write '" + opts.out + "'");
      file << text;
    }
    return outcome.code;
  } catch (const std::exception& e) {
    err << "effscore " << chosen->name << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace effscore::cli
