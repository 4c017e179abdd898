#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "effscore/affine_fit.hpp"
#include "effscore/recovery.hpp"
#include "effscore/transform.hpp"

namespace effscore {

/// One input of the multi-factor efficiency. Increasing factors contribute
/// weight * f(y) / f(Y); decreasing ones weight * (f(X) - f(x)) / f(X).
/// The last decreasing factor takes the residual weight and leaves `weight` empty.
struct FactorSpec {
  Direction direction = Direction::decreasing;
  MonotoneTransform transform;
  double bound = 1.0;
  std::optional<double> weight;
};

/// Validated parameters of the multi-factor efficiency.
///
/// Factors are stored in value order: all increasing factors, then all
/// decreasing ones. At least one decreasing factor is required; the weights
/// of all factors but the last decreasing one must sum to at most 1 - beta.
class GeneralizedParams {
 public:
  GeneralizedParams(double beta, std::vector<FactorSpec> increasing,
                    std::vector<FactorSpec> decreasing);

  double beta() const { return beta_; }
  std::size_t increasing_count() const { return increasing_count_; }
  std::size_t decreasing_count() const { return factors_.size() - increasing_count_; }
  std::size_t factor_count() const { return factors_.size(); }

  /// Factors in value order.
  const std::vector<FactorSpec>& factors() const { return factors_; }
  std::vector<FactorSpec> increasing() const;
  std::vector<FactorSpec> decreasing() const;

  /// Weights in value order, residual included; they sum to 1 - beta.
  const Eigen::VectorXd& weights() const { return weights_; }
  double residual_weight() const { return weights_[weights_.size() - 1]; }
  /// f(bound) per factor, computed once.
  const Eigen::VectorXd& scaled_bounds() const { return scaled_bounds_; }

  /// Factor layout as harness variables, named y1.. and x1...
  std::vector<Variable> variables() const;

 private:
  double beta_;
  std::size_t increasing_count_;
  std::vector<FactorSpec> factors_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd scaled_bounds_;
};

/// Multi-factor efficiency. `values` are aligned with the factor order and
/// each must lie in [0, bound]. Throws ValidationError otherwise.
EfficiencyScore efficiency_generalized(Recovery status, const Eigen::VectorXd& values,
                                       const GeneralizedParams& params);

/// Intercept and slopes in the transformed variables f(v), recovered by
/// probing the score at the origin and at each factor's bound.
LinearFit fit_generalized_coefficients(Recovery status, const GeneralizedParams& params);

}  // namespace effscore
