#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "effscore/affine_fit.hpp"
#include "effscore/efficiency_generalized.hpp"

namespace effscore {

struct ScoreFunctionPair {
  ScoreFunction recovered;
  ScoreFunction not_recovered;
};

struct HarnessOptions {
  std::uint64_t seed = 0;
  /// Random points per check.
  int samples = 256;
  /// Absolute tolerance on scores (scaled by max(1, |score|)) and relative
  /// tolerance on slope ratios.
  double tolerance = 1e-9;
};

struct ConditionResult {
  std::string condition;
  bool passed = true;
  std::string detail;
  /// Raw variable values at the first failing evaluation.
  std::optional<Eigen::VectorXd> witness;
};

/// Parameters read back from black-box evaluations alone.
struct Reconstruction {
  double beta = 0.0;
  /// Per-variable weights in variable order, residual included.
  Eigen::VectorXd weights;
  /// Largest |closed form - black box| over the sampled points, both branches.
  double max_error = 0.0;
  /// The closed form rebuilt from (beta, weights) matches everywhere sampled.
  bool matches = false;
  std::string detail;
};

/// One entry per characterization condition, in order: one linearity and
/// monotonicity entry per variable, then the coefficient-ratio condition,
/// then the range condition.
struct AxiomReport {
  std::vector<ConditionResult> conditions;
  Reconstruction reconstruction;

  bool conditions_passed() const;
  /// Every condition holds and the reconstruction reproduces the score.
  bool passed() const { return conditions_passed() && reconstruction.matches; }
  const ConditionResult* find(std::string_view condition) const;
};

/// Checks the characterization conditions for a score over `variables` and
/// rebuilds the multi-factor closed form from the probed coefficients.
AxiomReport verify_characterization(const ScoreFunctionPair& score,
                                    std::span<const Variable> variables,
                                    const HarnessOptions& options = {});

/// Two-input case: variables `impact` in [0, B*T] and `total_cost` in [0, C*T],
/// both decreasing with identity transforms. The reconstructed weights are
/// (alpha, 1 - beta - alpha).
AxiomReport verify_theorem1(const ScoreFunctionPair& score, double baseline, double cost_bound,
                            double horizon, const HarnessOptions& options = {});

/// Multi-factor case over the factor layout of `layout`; its weights and beta
/// are not used by the checks.
AxiomReport verify_theorem2(const ScoreFunctionPair& score, const GeneralizedParams& layout,
                            const HarnessOptions& options = {});

}  // namespace effscore
