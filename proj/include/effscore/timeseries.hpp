#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace effscore {

struct Sample {
  double t;
  double value;
};

/// Sampled nonnegative function of time, linearly interpolated between samples.
///
/// Construction validates: at least two samples, strictly increasing times,
/// finite nonnegative values.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<Sample> samples);

  /// Constant series `value` sampled at `t0` and `t1`.
  static TimeSeries constant(double value, double t0, double t1);

  std::span<const Sample> samples() const { return samples_; }
  double front_time() const { return samples_.front().t; }
  double back_time() const { return samples_.back().t; }

  /// True when [a, b] lies inside the sampled time range.
  bool covers(double a, double b) const { return front_time() <= a && b <= back_time(); }

  /// Linear interpolation; throws CoverageError outside the sampled range.
  double value_at(double t) const;

  /// Trapezoidal integral over [a, b] on the sample grid, with the endpoints
  /// interpolated linearly. Exact for piecewise-linear data. Requires a <= b.
  double integrate(double a, double b) const;

 private:
  std::size_t segment_of(double t) const;

  std::vector<Sample> samples_;
};

/// Reads the `t,value` CSV format. Accepts LF and CRLF line endings.
/// Throws ParseError on malformed text or an invalid series.
TimeSeries read_csv(std::istream& in);
TimeSeries read_csv_file(const std::string& path);

/// Baseline B, cost-rate bound C, detection time, optional recovery time and horizon T.
struct AttackWindow {
  double baseline = 0.0;
  double cost_bound = 0.0;
  double detect_time = 0.0;
  std::optional<double> recover_time;
  double horizon = 0.0;

  /// Throws ValidationError when an invariant fails.
  void validate() const;

  /// Recovery happened within the horizon.
  bool recovered() const { return recover_time.has_value() && *recover_time <= horizon; }

  double start() const { return detect_time; }
  /// Upper integration limit: the recovery time, clipped at the horizon.
  double end() const;

  /// B*T, the largest admissible impact.
  double impact_bound() const { return baseline * horizon; }
  /// C*T, the largest admissible total cost.
  double cost_total_bound() const { return cost_bound * horizon; }
};

struct IntegralResult {
  double value = 0.0;
  bool clamped = false;
};

enum class CostBoundPolicy { strict, clamp };

struct WindowMetrics {
  double impact = 0.0;
  double total_cost = 0.0;
  bool recovered = false;
  bool impact_clamped = false;
  bool cost_clamped = false;

  bool clamped() const { return impact_clamped || cost_clamped; }
};

/// Integral of the revenue shortfall B - r(t) over the window, clamped into [0, B*T].
IntegralResult compute_impact(const TimeSeries& revenue, const AttackWindow& window);

/// Integral of the cost rate over the window. A result above C*T throws
/// CostBoundError under CostBoundPolicy::strict and is clamped otherwise.
IntegralResult compute_total_cost(const TimeSeries& cost, const AttackWindow& window,
                                  CostBoundPolicy policy = CostBoundPolicy::strict);

WindowMetrics window_metrics(const TimeSeries& revenue, const TimeSeries& cost,
                             const AttackWindow& window,
                             CostBoundPolicy policy = CostBoundPolicy::strict);

}  // namespace effscore
