#include "effscore/transform.hpp"

#include <cmath>
#include <string>

#include "effscore/error.hpp"

namespace effscore {

MonotoneTransform MonotoneTransform::power(double exponent) {
  if (!std::isfinite(exponent) || !(exponent > 0.0))
    throw ValidationError("power transform needs an exponent > 0");
  return MonotoneTransform(Kind::power, exponent);
}

MonotoneTransform MonotoneTransform::from_name(std::string_view name,
                                               std::optional<double> exponent) {
  if (name == "power") {
    if (!exponent) throw ValidationError("power transform needs an exponent");
    return power(*exponent);
  }
  if (exponent) throw ValidationError("only the power transform takes an exponent");
  if (name == "identity") return identity();
  if (name == "sqrt") return sqrt();
  if (name == "log1p") return log1p();
  throw ValidationError("unknown transform '" + std::string(name) +
                        "' (expected identity, power, sqrt or log1p)");
}

double MonotoneTransform::operator()(double x) const {
  switch (kind_) {
    case Kind::identity:
      return x;
    case Kind::power:
      return std::pow(x, exponent_);
    case Kind::sqrt:
      return std::sqrt(x);
    case Kind::log1p:
      return std::log1p(x);
  }
  return x;
}

std::string_view MonotoneTransform::name() const {
  switch (kind_) {
    case Kind::identity:
      return "identity";
    case Kind::power:
      return "power";
    case Kind::sqrt:
      return "sqrt";
    case Kind::log1p:
      return "log1p";
  }
  return "identity";
}

}  // namespace effscore
