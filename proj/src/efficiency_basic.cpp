#include "effscore/efficiency_basic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "effscore/error.hpp"

namespace effscore {

void EfficiencyParams::validate() const {
  if (!std::isfinite(beta) || !(beta > 0.0 && beta < 1.0))
    throw ValidationError("beta must lie in the open interval (0, 1)");
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0 - beta)
    throw ValidationError("alpha must lie in [0, 1 - beta]");
}

EfficiencyScore efficiency_basic(Recovery status, double impact, double total_cost,
                                 double impact_bound, double cost_bound,
                                 const EfficiencyParams& params) {
  params.validate();
  if (!std::isfinite(impact_bound) || !(impact_bound > 0.0))
    throw ValidationError("impact bound B*T must be > 0");
  if (!std::isfinite(cost_bound) || !(cost_bound > 0.0))
    throw ValidationError("cost bound C*T must be > 0");
  if (!(impact >= 0.0 && impact <= impact_bound))
    throw ValidationError("impact " + std::to_string(impact) + " outside [0, B*T]");
  if (!(total_cost >= 0.0 && total_cost <= cost_bound))
    throw ValidationError("total cost " + std::to_string(total_cost) + " outside [0, C*T]");

  const double raw = basic_efficiency(status, impact, total_cost, impact_bound, cost_bound,
                                      params.beta, params.alpha);
  // Rounding can leave the value an ulp outside its band.
  const double value = status == Recovery::recovered ? std::clamp(raw, params.beta, 1.0)
                                                     : std::clamp(raw, 0.0, params.beta);
  return {value, status};
}

EfficiencyScore efficiency_basic(const WindowMetrics& metrics, const AttackWindow& window,
                                 const EfficiencyParams& params) {
  window.validate();
  return efficiency_basic(metrics.recovered ? Recovery::recovered : Recovery::not_recovered,
                          metrics.impact, metrics.total_cost, window.impact_bound(),
                          window.cost_total_bound(), params);
}

}  // namespace effscore
