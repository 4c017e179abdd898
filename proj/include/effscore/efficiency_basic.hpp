#pragma once

#include "effscore/recovery.hpp"
#include "effscore/timeseries.hpp"

namespace effscore {

/// beta splits [0, 1] between the two recovery outcomes; alpha weighs impact
/// against total cost. Valid when 0 < beta < 1 and 0 <= alpha <= 1 - beta.
struct EfficiencyParams {
  double beta = 0.5;
  double alpha = 0.25;

  void validate() const;
};

/// Unchecked two-input efficiency kernel, generic over the scalar type so the
/// same expression can be evaluated in exact arithmetic.
///
/// The recovered branch is beta plus the weighted saved fractions of the impact
/// and cost boxes; the other branch scales the same weighted sum by
/// beta / (1 - beta) so it fills [0, beta].
template <typename Scalar>
Scalar basic_efficiency(Recovery status, const Scalar& impact, const Scalar& total_cost,
                        const Scalar& impact_bound, const Scalar& cost_bound,
                        const Scalar& beta, const Scalar& alpha) {
  const Scalar one(1);
  const Scalar saved_revenue = (impact_bound - impact) / impact_bound;
  const Scalar saved_cost = (cost_bound - total_cost) / cost_bound;
  const Scalar weighted = alpha * saved_revenue + (one - beta - alpha) * saved_cost;
  if (status == Recovery::recovered) return beta + weighted;
  return beta / (one - beta) * weighted;
}

/// Efficiency of a countermeasure from its impact I in [0, impact_bound] and
/// total cost Ct in [0, cost_bound]. Throws ValidationError on out-of-range
/// inputs or invalid parameters.
EfficiencyScore efficiency_basic(Recovery status, double impact, double total_cost,
                                 double impact_bound, double cost_bound,
                                 const EfficiencyParams& params);

/// Same, taking the box bounds B*T, C*T and the branch from the window.
EfficiencyScore efficiency_basic(const WindowMetrics& metrics, const AttackWindow& window,
                                 const EfficiencyParams& params);

}  // namespace effscore
