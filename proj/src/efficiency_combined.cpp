#include "effscore/efficiency_combined.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace effscore {

CombinedSpec::CombinedSpec(std::vector<CombinedComponent> components, Eigen::VectorXd gammas)
    : components_(std::move(components)), gammas_(std::move(gammas)) {
  if (components_.empty()) throw ValidationError("combination needs at least one component");
  if (static_cast<std::size_t>(gammas_.size()) != components_.size())
    throw ValidationError("expected " + std::to_string(components_.size()) + " gammas, got " +
                          std::to_string(gammas_.size()));
  for (Eigen::Index i = 0; i < gammas_.size(); ++i)
    if (!std::isfinite(gammas_[i]) || gammas_[i] < 0.0)
      throw ValidationError("gamma " + std::to_string(i + 1) + " must be >= 0");
  const double total = gammas_.sum();
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("gammas must sum to 1 (got " + std::to_string(total) + ")");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (static_cast<std::size_t>(c.values.size()) != c.params.factor_count())
      throw ValidationError("component " + std::to_string(i + 1) + ": expected " +
                            std::to_string(c.params.factor_count()) + " values, got " +
                            std::to_string(c.values.size()));
  }
}

bool CombinedSpec::all_recovered() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const CombinedComponent& c) { return c.status == Recovery::recovered; });
}

Eigen::VectorXd component_scores(const CombinedSpec& spec) {
  Eigen::VectorXd scores(static_cast<Eigen::Index>(spec.size()));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& c = spec.components()[i];
    scores[static_cast<Eigen::Index>(i)] = efficiency_generalized(c.status, c.values, c.params).value;
  }
  return scores;
}

double efficiency_combined(const CombinedSpec& spec) {
  const Eigen::VectorXd scores = component_scores(spec);
  std::vector<double> terms(scores.size());
  for (Eigen::Index i = 0; i < scores.size(); ++i) terms[i] = spec.gammas()[i] * scores[i];
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return std::clamp(total, scores.minCoeff(), scores.maxCoeff());
}

bool ratios_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

namespace {

std::vector<RatioTerm<double>> shared_pair_terms(const CombinedSpec& spec) {
  const auto& first = spec.components().front().params;
  std::vector<RatioTerm<double>> terms;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& p = spec.components()[i].params;
    const std::string label = "component " + std::to_string(i + 1);
    if (p.increasing_count() != 1 || p.decreasing_count() != 1)
      throw ValidationError(label + ": coefficient ratios need exactly one increasing and one "
                                    "decreasing factor");
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& f = p.factors()[k];
      const auto& ref = first.factors()[k];
      if (f.bound != ref.bound || !(f.transform == ref.transform))
        throw ValidationError(label + ": factors must share bound and transform across "
                                      "components");
    }
    terms.push_back({spec.gammas()[static_cast<Eigen::Index>(i)], p.beta(), p.weights()[0],
                     p.scaled_bounds()[0], p.scaled_bounds()[1]});
  }
  return terms;
}

}  // namespace

RatioReport combined_coefficient_ratios(const CombinedSpec& spec) {
  const auto terms = shared_pair_terms(spec);
  const auto [rec, nr] = coefficient_ratios<double>(terms);
  return {rec, nr, ratios_equal(rec, nr)};
}

GeneralizedParams combination_to_expanded(const CombinedSpec& spec) {
  if (!spec.all_recovered())
    throw ValidationError("the combination equals a single expanded formula only when every "
                          "component recovered");
  double beta = 0.0;
  std::vector<FactorSpec> increasing;
  std::vector<FactorSpec> decreasing;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& p = spec.components()[i].params;
    const double gamma = spec.gammas()[static_cast<Eigen::Index>(i)];
    beta += gamma * p.beta();
    for (std::size_t k = 0; k < p.factor_count(); ++k) {
      FactorSpec factor = p.factors()[k];
      factor.weight = gamma * p.weights()[static_cast<Eigen::Index>(k)];
      (factor.direction == Direction::increasing ? increasing : decreasing).push_back(factor);
    }
  }
  // The last decreasing factor overall carries the residual; it equals
  // gamma_n times the last component's residual.
  decreasing.back().weight.reset();
  return GeneralizedParams(beta, std::move(increasing), std::move(decreasing));
}

Eigen::VectorXd expanded_values(const CombinedSpec& spec) {
  std::vector<double> inc;
  std::vector<double> dec;
  for (const auto& c : spec.components()) {
    for (std::size_t k = 0; k < c.params.factor_count(); ++k) {
      const double v = c.values[static_cast<Eigen::Index>(k)];
      (k < c.params.increasing_count() ? inc : dec).push_back(v);
    }
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(inc.size() + dec.size()));
  Eigen::Index j = 0;
  for (double v : inc) out[j++] = v;
  for (double v : dec) out[j++] = v;
  return out;
}

namespace {

double combined_at(const CombinedSpec& spec, Recovery status, const Eigen::Vector2d& point) {
  double total = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& p = spec.components()[i].params;
    total += spec.gammas()[static_cast<Eigen::Index>(i)] *
             efficiency_generalized(status, point, p).value;
  }
  return total;
}

}  // namespace

EquivalenceWitness equivalence_witness(const CombinedSpec& spec) {
  EquivalenceWitness witness;
  witness.ratios = combined_coefficient_ratios(spec);
  const auto& first = spec.components().front().params;
  witness.point = {0.5 * first.factors()[0].bound, 0.5 * first.factors()[1].bound};
  witness.score_recovered = combined_at(spec, Recovery::recovered, witness.point);
  witness.score_not_recovered = combined_at(spec, Recovery::not_recovered, witness.point);
  witness.violated = !witness.ratios.equal;
  return witness;
}

}  // namespace effscore
