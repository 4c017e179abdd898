#include "effscore/efficiency_generalized.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "effscore/error.hpp"

namespace effscore {

namespace {

// Slack for weight sums that are exact in real arithmetic but rounded here.
constexpr double kWeightSlack = 1e-12;

void check_factor(const FactorSpec& factor, Direction expected, const std::string& label) {
  if (factor.direction != expected)
    throw ValidationError(label + ": direction must be " + std::string(to_string(expected)));
  if (!std::isfinite(factor.bound) || !(factor.bound > 0.0))
    throw ValidationError(label + ": bound must be > 0");
  const double scaled = factor.transform(factor.bound);
  if (!std::isfinite(scaled) || !(scaled > 0.0))
    throw ValidationError(label + ": f(bound) must be finite and > 0");
}

}  // namespace

GeneralizedParams::GeneralizedParams(double beta, std::vector<FactorSpec> increasing,
                                     std::vector<FactorSpec> decreasing)
    : beta_(beta), increasing_count_(increasing.size()) {
  if (!std::isfinite(beta) || !(beta > 0.0 && beta < 1.0))
    throw ValidationError("beta must lie in the open interval (0, 1)");
  if (decreasing.empty()) throw ValidationError("at least one decreasing factor is required");

  factors_ = std::move(increasing);
  factors_.insert(factors_.end(), std::make_move_iterator(decreasing.begin()),
                  std::make_move_iterator(decreasing.end()));

  const auto n = static_cast<Eigen::Index>(factors_.size());
  weights_.resize(n);
  scaled_bounds_.resize(n);
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const FactorSpec& factor = factors_[k];
    const bool is_increasing = k < increasing_count_;
    const bool is_residual = k + 1 == factors_.size();
    const std::string label = "factor " + std::to_string(k + 1);
    check_factor(factor, is_increasing ? Direction::increasing : Direction::decreasing, label);
    scaled_bounds_[static_cast<Eigen::Index>(k)] = factor.transform(factor.bound);
    if (is_residual) {
      if (factor.weight)
        throw ValidationError(label + ": the last decreasing factor takes the residual weight "
                                      "and must not set one");
      continue;
    }
    if (!factor.weight) throw ValidationError(label + ": weight is required");
    const double w = *factor.weight;
    if (!std::isfinite(w) || w < 0.0) throw ValidationError(label + ": weight must be >= 0");
    weights_[static_cast<Eigen::Index>(k)] = w;
    weight_sum += w;
  }
  double residual = 1.0 - beta - weight_sum;
  if (residual < -kWeightSlack)
    throw ValidationError("weights sum to " + std::to_string(weight_sum) +
                          ", more than 1 - beta = " + std::to_string(1.0 - beta));
  weights_[n - 1] = std::max(residual, 0.0);
}

std::vector<FactorSpec> GeneralizedParams::increasing() const {
  return {factors_.begin(), factors_.begin() + static_cast<std::ptrdiff_t>(increasing_count_)};
}

std::vector<FactorSpec> GeneralizedParams::decreasing() const {
  return {factors_.begin() + static_cast<std::ptrdiff_t>(increasing_count_), factors_.end()};
}

std::vector<Variable> GeneralizedParams::variables() const {
  std::vector<Variable> vars;
  vars.reserve(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const bool inc = k < increasing_count_;
    const std::size_t ordinal = inc ? k + 1 : k - increasing_count_ + 1;
    vars.push_back({(inc ? "y" : "x") + std::to_string(ordinal), factors_[k].direction,
                    factors_[k].transform, factors_[k].bound});
  }
  return vars;
}

EfficiencyScore efficiency_generalized(Recovery status, const Eigen::VectorXd& values,
                                       const GeneralizedParams& params) {
  const auto n = static_cast<Eigen::Index>(params.factor_count());
  if (values.size() != n)
    throw ValidationError("expected " + std::to_string(n) + " factor values, got " +
                          std::to_string(values.size()));
  const auto& factors = params.factors();
  const auto& weights = params.weights();
  const auto& scaled = params.scaled_bounds();

  double weighted = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const FactorSpec& factor = factors[static_cast<std::size_t>(k)];
    const double v = values[k];
    if (!(v >= 0.0 && v <= factor.bound))
      throw ValidationError("factor " + std::to_string(k + 1) + " value " + std::to_string(v) +
                            " outside [0, " + std::to_string(factor.bound) + "]");
    const double fv = factor.transform(v);
    const double term = factor.direction == Direction::increasing ? fv / scaled[k]
                                                                  : (scaled[k] - fv) / scaled[k];
    weighted += weights[k] * term;
  }

  const double beta = params.beta();
  if (status == Recovery::recovered) return {std::clamp(beta + weighted, beta, 1.0), status};
  return {std::clamp(beta / (1.0 - beta) * weighted, 0.0, beta), status};
}

LinearFit fit_generalized_coefficients(Recovery status, const GeneralizedParams& params) {
  const auto vars = params.variables();
  return probe_coefficients(
      [&](const Eigen::VectorXd& v) { return efficiency_generalized(status, v, params).value; },
      status, vars);
}

}  // namespace effscore
