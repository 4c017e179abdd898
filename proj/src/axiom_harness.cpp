#include "effscore/axiom_harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "effscore/error.hpp"

namespace effscore {

bool AxiomReport::conditions_passed() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionResult& c) { return c.passed; });
}

const ConditionResult* AxiomReport::find(std::string_view condition) const {
  for (const auto& c : conditions)
    if (c.condition == condition) return &c;
  return nullptr;
}

namespace {

const ScoreFunction& branch_fn(const ScoreFunctionPair& pair, Recovery branch) {
  return branch == Recovery::recovered ? pair.recovered : pair.not_recovered;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

void fail(ConditionResult& result, std::string detail, const Eigen::VectorXd& point) {
  if (!result.passed) return;
  result.passed = false;
  result.detail = std::move(detail);
  result.witness = point;
}

// Linear in f(v_k) along random lines parallel to axis k, and monotone in the
// variable's direction.
ConditionResult check_variable(const ScoreFunctionPair& score,
                               std::span<const Variable> variables, std::size_t k,
                               SampleStream& stream, const HarnessOptions& options) {
  const Variable& var = variables[k];
  const auto idx = static_cast<Eigen::Index>(k);
  ConditionResult result;
  result.condition = "linear_" + std::string(to_string(var.direction)) + "(" + var.name + ")";
  const double scaled = var.scaled_bound();
  for (Recovery branch : {Recovery::recovered, Recovery::not_recovered}) {
    const ScoreFunction& fn = branch_fn(score, branch);
    for (int s = 0; s < options.samples && result.passed; ++s) {
      Eigen::VectorXd point = stream.point_in(variables);
      const double mid = stream.uniform(0.0, var.bound);
      point[idx] = 0.0;
      const double at_zero = fn(point);
      point[idx] = var.bound;
      const double at_bound = fn(point);
      point[idx] = mid;
      const double at_mid = fn(point);

      const double predicted = at_zero + (at_bound - at_zero) * (var.transform(mid) / scaled);
      const double slack = options.tolerance * std::max(1.0, std::abs(at_mid));
      if (std::abs(at_mid - predicted) > slack) {
        fail(result,
             std::string(to_string(branch)) + ": not linear in f(" + var.name +
                 "), expected " + fmt(predicted) + " got " + fmt(at_mid),
             point);
        break;
      }
      const double change = at_bound - at_zero;
      const bool wrong_way = var.direction == Direction::increasing ? change < -slack
                                                                    : change > slack;
      if (wrong_way) {
        point[idx] = var.bound;
        fail(result,
             std::string(to_string(branch)) + ": score moves against the " +
                 std::string(to_string(var.direction)) + " direction of " + var.name,
             point);
      }
    }
  }
  return result;
}

ConditionResult check_ratios(const LinearFit& rec, const LinearFit& nr,
                             std::span<const Variable> variables, double tol) {
  ConditionResult result;
  result.condition = "coefficient_ratio";
  const auto n = rec.slopes.size();
  auto significant = [&](const LinearFit& fit, Eigen::Index k) {
    return std::abs(fit.slopes[k] * variables[static_cast<std::size_t>(k)].scaled_bound()) > tol;
  };
  for (Eigen::Index k = 0; k < n; ++k) {
    if (significant(rec, k) != significant(nr, k)) {
      result.passed = false;
      result.detail = "coefficient of " + rec.names[k] + " vanishes on one branch only";
      return result;
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!significant(rec, j)) continue;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      if (!significant(rec, k)) continue;
      const double r = rec.slopes[j] / rec.slopes[k];
      const double r_nr = nr.slopes[j] / nr.slopes[k];
      if (std::abs(r - r_nr) > tol * std::max(std::abs(r), std::abs(r_nr))) {
        result.passed = false;
        result.detail = "ratio " + rec.names[j] + "/" + rec.names[k] + " is " + fmt(r) +
                        " when recovered but " + fmt(r_nr) + " otherwise";
        return result;
      }
    }
  }
  return result;
}

struct Corners {
  Eigen::VectorXd best;
  Eigen::VectorXd worst;
};

Corners corners(std::span<const Variable> variables) {
  const auto n = static_cast<Eigen::Index>(variables.size());
  Corners c{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Variable& v = variables[static_cast<std::size_t>(k)];
    (v.direction == Direction::increasing ? c.best : c.worst)[k] = v.bound;
  }
  return c;
}

ConditionResult check_range(const ScoreFunctionPair& score, std::span<const Variable> variables,
                            double beta, SampleStream& stream, const HarnessOptions& options) {
  ConditionResult result;
  result.condition = "range";
  const double tol = options.tolerance;
  const Corners c = corners(variables);
  if (!(beta > 0.0 && beta < 1.0)) {
    fail(result, "division point " + fmt(beta) + " is not inside (0, 1)", c.best);
    return result;
  }
  const double rec_best = score.recovered(c.best);
  const double rec_worst = score.recovered(c.worst);
  const double nr_worst = score.not_recovered(c.worst);
  if (std::abs(rec_best - 1.0) > tol)
    fail(result, "recovered maximum is " + fmt(rec_best) + ", not 1", c.best);
  if (std::abs(rec_worst - beta) > tol)
    fail(result, "recovered minimum is " + fmt(rec_worst) + ", not beta = " + fmt(beta),
         c.worst);
  if (std::abs(nr_worst) > tol)
    fail(result, "non-recovered minimum is " + fmt(nr_worst) + ", not 0", c.worst);
  for (int s = 0; s < options.samples && result.passed; ++s) {
    const Eigen::VectorXd point = stream.point_in(variables);
    const double rec = score.recovered(point);
    const double nr = score.not_recovered(point);
    if (rec < beta - tol || rec > 1.0 + tol)
      fail(result, "recovered score " + fmt(rec) + " outside [beta, 1]", point);
    else if (nr < -tol || nr > beta + tol)
      fail(result, "non-recovered score " + fmt(nr) + " outside [0, beta]", point);
  }
  return result;
}

Reconstruction reconstruct(const ScoreFunctionPair& score, std::span<const Variable> variables,
                           const LinearFit& rec, double beta, SampleStream& stream,
                           const HarnessOptions& options) {
  Reconstruction out;
  out.beta = beta;
  const auto n = static_cast<Eigen::Index>(variables.size());
  out.weights = Eigen::VectorXd::Zero(n);

  // Closed form is stated with increasing factors first; keep the mapping back.
  std::vector<Eigen::Index> order;
  std::vector<FactorSpec> increasing;
  std::vector<FactorSpec> decreasing;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Variable& v = variables[static_cast<std::size_t>(k)];
    if (v.direction == Direction::increasing) {
      order.push_back(k);
      const double w = rec.slopes[k] * v.scaled_bound();
      increasing.push_back({v.direction, v.transform, v.bound, w});
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Variable& v = variables[static_cast<std::size_t>(k)];
    if (v.direction == Direction::decreasing) {
      order.push_back(k);
      const double w = -rec.slopes[k] * v.scaled_bound();
      decreasing.push_back({v.direction, v.transform, v.bound, w});
    }
  }
  if (!decreasing.empty()) decreasing.back().weight.reset();

  try {
    const GeneralizedParams params(beta, std::move(increasing), std::move(decreasing));
    for (std::size_t j = 0; j < order.size(); ++j)
      out.weights[order[j]] = params.weights()[static_cast<Eigen::Index>(j)];
    Eigen::VectorXd ordered(n);
    for (int s = 0; s < options.samples; ++s) {
      const Eigen::VectorXd point = stream.point_in(variables);
      for (std::size_t j = 0; j < order.size(); ++j)
        ordered[static_cast<Eigen::Index>(j)] = point[order[j]];
      for (Recovery branch : {Recovery::recovered, Recovery::not_recovered}) {
        const double closed = efficiency_generalized(branch, ordered, params).value;
        out.max_error = std::max(out.max_error, std::abs(closed - branch_fn(score, branch)(point)));
      }
    }
    out.matches = out.max_error <= options.tolerance;
    if (!out.matches) out.detail = "closed form misses the score by up to " + fmt(out.max_error);
  } catch (const ValidationError& e) {
    out.matches = false;
    out.detail = std::string("reconstructed parameters are invalid: ") + e.what();
  }
  return out;
}

}  // namespace

AxiomReport verify_characterization(const ScoreFunctionPair& score,
                                    std::span<const Variable> variables,
                                    const HarnessOptions& options) {
  if (variables.empty()) throw ValidationError("harness needs at least one variable");
  SampleStream stream(options.seed);
  AxiomReport report;
  for (std::size_t k = 0; k < variables.size(); ++k)
    report.conditions.push_back(check_variable(score, variables, k, stream, options));

  const LinearFit rec = probe_coefficients(score.recovered, Recovery::recovered, variables);
  const LinearFit nr = probe_coefficients(score.not_recovered, Recovery::not_recovered, variables);
  report.conditions.push_back(check_ratios(rec, nr, variables, options.tolerance));

  const double beta = score.not_recovered(corners(variables).best);
  report.conditions.push_back(check_range(score, variables, beta, stream, options));
  report.reconstruction = reconstruct(score, variables, rec, beta, stream, options);
  return report;
}

AxiomReport verify_theorem1(const ScoreFunctionPair& score, double baseline, double cost_bound,
                            double horizon, const HarnessOptions& options) {
  if (!(baseline > 0.0 && cost_bound > 0.0 && horizon > 0.0))
    throw ValidationError("B, C and T must be > 0");
  const Variable vars[] = {
      {"impact", Direction::decreasing, MonotoneTransform::identity(), baseline * horizon},
      {"total_cost", Direction::decreasing, MonotoneTransform::identity(), cost_bound * horizon},
  };
  return verify_characterization(score, vars, options);
}

AxiomReport verify_theorem2(const ScoreFunctionPair& score, const GeneralizedParams& layout,
                            const HarnessOptions& options) {
  const auto vars = layout.variables();
  return verify_characterization(score, vars, options);
}

}  // namespace effscore
