#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace effscore {

/// Strictly increasing map [0, inf) -> [0, inf) with f(0) = 0, drawn from a
/// closed set of kinds so both properties hold by construction.
class MonotoneTransform {
 public:
  enum class Kind { identity, power, sqrt, log1p };

  MonotoneTransform() = default;

  static MonotoneTransform identity() { return MonotoneTransform(Kind::identity, 1.0); }
  /// x^p for p > 0. Throws ValidationError otherwise.
  static MonotoneTransform power(double exponent);
  static MonotoneTransform sqrt() { return MonotoneTransform(Kind::sqrt, 0.5); }
  static MonotoneTransform log1p() { return MonotoneTransform(Kind::log1p, 1.0); }

  /// Looks a transform up by name ("identity", "power", "sqrt", "log1p").
  /// `power` requires an exponent. Throws ValidationError for unknown names.
  static MonotoneTransform from_name(std::string_view name,
                                     std::optional<double> exponent = std::nullopt);

  double operator()(double x) const;

  Kind kind() const { return kind_; }
  /// Exponent of a power transform; 1 for the other kinds except sqrt (0.5).
  double exponent() const { return exponent_; }
  std::string_view name() const;

  friend bool operator==(const MonotoneTransform&, const MonotoneTransform&) = default;

 private:
  MonotoneTransform(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}

  Kind kind_ = Kind::identity;
  double exponent_ = 1.0;
};

}  // namespace effscore
