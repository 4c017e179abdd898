#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "effscore/recovery.hpp"
#include "effscore/transform.hpp"

namespace effscore {

enum class Direction { increasing, decreasing };

constexpr std::string_view to_string(Direction d) {
  return d == Direction::increasing ? "increasing" : "decreasing";
}

/// One input of a black-box score: raw values range over [0, bound] and the
/// score is expected to be affine in transform(value).
struct Variable {
  std::string name;
  Direction direction = Direction::decreasing;
  MonotoneTransform transform;
  double bound = 1.0;

  double scaled_bound() const { return transform(bound); }
};

/// Score as a function of raw variable values.
using ScoreFunction = std::function<double(const Eigen::VectorXd&)>;

/// Affine model intercept + slopes . f(v) of a score on one branch, in the
/// transformed coordinates f(v).
struct LinearFit {
  double intercept = 0.0;
  Eigen::VectorXd slopes;
  std::vector<std::string> names;
  Recovery branch = Recovery::recovered;

  /// Evaluates the model at raw values, applying each variable's transform.
  double evaluate(std::span<const Variable> variables, const Eigen::VectorXd& values) const;
};

/// Secant coefficients: the value at the origin and, per variable, the slope
/// between the origin and the point where that variable sits at its bound.
/// No affinity validation.
LinearFit probe_coefficients(const ScoreFunction& score, Recovery branch,
                             std::span<const Variable> variables);

/// probe_coefficients, then checks the model at `checks` random interior
/// points. Throws NonAffineError when any check misses by more than
/// 1e-12 * max(1, |score|).
LinearFit fit_affine(const ScoreFunction& score, Recovery branch,
                     std::span<const Variable> variables, std::uint64_t seed = 0,
                     int checks = 32);

/// Seeded sampler. The engine's output sequence is fixed by the standard and
/// the mapping to [0, 1) is done here, so draws are identical across platforms.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform point in the box prod [0, bound_k].
  Eigen::VectorXd point_in(std::span<const Variable> variables);

 private:
  std::mt19937_64 engine_;
};

}  // namespace effscore
