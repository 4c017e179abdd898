#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "effscore/efficiency_generalized.hpp"
#include "effscore/error.hpp"

namespace effscore {

/// One countermeasure inside a combination, scored on its own recovery status.
struct CombinedComponent {
  GeneralizedParams params;
  Recovery status = Recovery::recovered;
  Eigen::VectorXd values;
};

/// Components with convex weights gamma (nonnegative, summing to 1 within 1e-12).
class CombinedSpec {
 public:
  CombinedSpec(std::vector<CombinedComponent> components, Eigen::VectorXd gammas);

  const std::vector<CombinedComponent>& components() const { return components_; }
  const Eigen::VectorXd& gammas() const { return gammas_; }
  std::size_t size() const { return components_.size(); }
  bool all_recovered() const;

 private:
  std::vector<CombinedComponent> components_;
  Eigen::VectorXd gammas_;
};

/// sum_i gamma_i * E_i, each E_i evaluated on its component's status.
/// The terms are summed in sorted order, so reordering the components does
/// not change the result.
double efficiency_combined(const CombinedSpec& spec);

/// Per-component scores in component order.
Eigen::VectorXd component_scores(const CombinedSpec& spec);

/// Ratio of the combined slope on f(y) to the slope on f(x), per branch.
struct RatioReport {
  double ratio_recovered = 0.0;
  double ratio_not_recovered = 0.0;
  bool equal = false;
};

/// Slope data of a single-increasing, single-decreasing component over the
/// shared pair (y, x): y_scale = f(Y), x_scale = f(X).
template <typename Scalar>
struct RatioTerm {
  Scalar gamma;
  Scalar beta;
  Scalar alpha;
  Scalar y_scale;
  Scalar x_scale;
};

/// Branch ratios of the y and x coefficients of a combination, generic over the
/// scalar so they can be computed exactly. Returns {recovered, not recovered}.
/// Throws ValidationError when a denominator vanishes (no cost-side weight left).
template <typename Scalar>
std::pair<Scalar, Scalar> coefficient_ratios(std::span<const RatioTerm<Scalar>> terms) {
  const Scalar zero(0);
  const Scalar one(1);
  Scalar y_rec = zero, x_rec = zero, y_nr = zero, x_nr = zero;
  for (const auto& term : terms) {
    const Scalar y_slope = term.gamma * term.alpha / term.y_scale;
    const Scalar x_slope = term.gamma * (one - term.beta - term.alpha) / term.x_scale;
    const Scalar scale = term.beta / (one - term.beta);
    y_rec += y_slope;
    x_rec += x_slope;
    y_nr += scale * y_slope;
    x_nr += scale * x_slope;
  }
  if (x_rec == zero || x_nr == zero)
    throw ValidationError("coefficient ratio undefined: every cost-side weight is zero");
  return {-(y_rec / x_rec), -(y_nr / x_nr)};
}

/// True when |a - b| <= 1e-9 * max(|a|, |b|).
bool ratios_equal(double a, double b);

/// Coefficient ratios of a combination whose components each have exactly one
/// increasing factor y and one decreasing factor x, with the same bound and
/// transform across components. Component statuses are ignored; both branches
/// are reported.
RatioReport combined_coefficient_ratios(const CombinedSpec& spec);

/// Single multi-factor formula equal to the combination when every component
/// recovered. beta is sum_i gamma_i beta_i and every factor weight is scaled by
/// its component's gamma. Factor order: the increasing factors of all
/// components, then the decreasing ones, each in component order; see
/// expanded_values(). Throws ValidationError if some component did not recover.
GeneralizedParams combination_to_expanded(const CombinedSpec& spec);

/// Component values rearranged into the factor order of combination_to_expanded.
Eigen::VectorXd expanded_values(const CombinedSpec& spec);

/// Evidence that a combination cannot be written as one multi-factor formula
/// valid on both branches.
struct EquivalenceWitness {
  RatioReport ratios;
  /// Raw (y, x) at which the combined scores were evaluated: the box midpoint.
  Eigen::Vector2d point;
  double score_recovered = 0.0;
  double score_not_recovered = 0.0;
  /// The coefficient ratios differ across branches.
  bool violated = false;
};

/// Evaluates the combination on both branches over the shared (y, x) pair and
/// compares the branch coefficient ratios. Same component shape as
/// combined_coefficient_ratios.
EquivalenceWitness equivalence_witness(const CombinedSpec& spec);

}  // namespace effscore
