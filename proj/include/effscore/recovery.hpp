#pragma once

#include <string_view>

namespace effscore {

/// Which efficiency band applies: [beta, 1] after recovery, [0, beta] otherwise.
enum class Recovery { recovered, not_recovered };

constexpr std::string_view to_string(Recovery r) {
  return r == Recovery::recovered ? "recovered" : "not_recovered";
}

struct EfficiencyScore {
  double value = 0.0;
  Recovery branch = Recovery::recovered;
};

}  // namespace effscore
