#include "effscore/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>

#include "effscore/error.hpp"

namespace effscore {

TimeSeries::TimeSeries(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw ValidationError("time series needs at least 2 samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.value))
      throw ValidationError("time series sample " + std::to_string(i) + " is not finite");
    if (s.value < 0.0)
      throw ValidationError("time series sample " + std::to_string(i) + " is negative");
    if (i > 0 && !(samples_[i - 1].t < s.t))
      throw ValidationError("time series times must be strictly increasing (sample " +
                            std::to_string(i) + ")");
  }
}

TimeSeries TimeSeries::constant(double value, double t0, double t1) {
  return TimeSeries({{t0, value}, {t1, value}});
}

std::size_t TimeSeries::segment_of(double t) const {
  // Index i of the segment [t_i, t_{i+1}] containing t.
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double x, const Sample& s) { return x < s.t; });
  auto i = static_cast<std::size_t>(std::distance(samples_.begin(), it));
  if (i == 0) return 0;
  return std::min(i - 1, samples_.size() - 2);
}

double TimeSeries::value_at(double t) const {
  if (t < front_time() || t > back_time())
    throw CoverageError("time " + std::to_string(t) + " outside sampled range [" +
                        std::to_string(front_time()) + ", " + std::to_string(back_time()) +
                        "]");
  const std::size_t i = segment_of(t);
  const Sample& a = samples_[i];
  const Sample& b = samples_[i + 1];
  if (t == a.t) return a.value;
  if (t == b.t) return b.value;
  const double w = (t - a.t) / (b.t - a.t);
  return a.value + w * (b.value - a.value);
}

double TimeSeries::integrate(double a, double b) const {
  if (!(a <= b)) throw ValidationError("integration limits out of order");
  if (!covers(a, b))
    throw CoverageError("series on [" + std::to_string(front_time()) + ", " +
                        std::to_string(back_time()) + "] does not cover [" +
                        std::to_string(a) + ", " + std::to_string(b) + "]");
  if (a == b) return 0.0;

  const std::size_t first = segment_of(a);
  const std::size_t last = segment_of(b);
  double total = 0.0;
  double t_prev = a;
  double v_prev = value_at(a);
  for (std::size_t i = first + 1; i <= last; ++i) {
    const Sample& s = samples_[i];
    if (s.t <= a) continue;
    if (s.t >= b) break;
    total += 0.5 * (v_prev + s.value) * (s.t - t_prev);
    t_prev = s.t;
    v_prev = s.value;
  }
  total += 0.5 * (v_prev + value_at(b)) * (b - t_prev);
  return total;
}

namespace {

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

double parse_number(std::string_view field, std::size_t line_no) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end)
    throw ParseError("line " + std::to_string(line_no) + ": invalid number '" +
                     std::string(field) + "'");
  return value;
}

}  // namespace

TimeSeries read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<Sample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim_cr(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (view.empty()) continue;
    if (!have_header) {
      if (view != "t,value")
        throw ParseError("line " + std::to_string(line_no) + ": expected header 't,value'");
      have_header = true;
      continue;
    }
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected two fields");
    samples.push_back({parse_number(view.substr(0, comma), line_no),
                       parse_number(view.substr(comma + 1), line_no)});
  }
  if (!have_header) throw ParseError("empty CSV: missing 't,value' header");
  try {
    return TimeSeries(std::move(samples));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid series: ") + e.what());
  }
}

TimeSeries read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return read_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void AttackWindow::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(baseline) || !(baseline > 0.0))
    throw ValidationError("window: baseline B must be > 0");
  if (!finite(cost_bound) || !(cost_bound > 0.0))
    throw ValidationError("window: cost bound C must be > 0");
  if (!finite(horizon) || !(horizon > 0.0))
    throw ValidationError("window: horizon T must be > 0");
  if (!finite(detect_time) || detect_time < 0.0 || !(detect_time < horizon))
    throw ValidationError("window: detection time must satisfy 0 <= t_d < T");
  if (recover_time && (!finite(*recover_time) || !(*recover_time > detect_time)))
    throw ValidationError("window: recovery time must be > detection time");
}

double AttackWindow::end() const {
  return recover_time ? std::min(*recover_time, horizon) : horizon;
}

IntegralResult compute_impact(const TimeSeries& revenue, const AttackWindow& window) {
  window.validate();
  const double a = window.start();
  const double b = window.end();
  const double raw = window.baseline * (b - a) - revenue.integrate(a, b);
  const double clamped = std::clamp(raw, 0.0, window.impact_bound());
  return {clamped, clamped != raw};
}

IntegralResult compute_total_cost(const TimeSeries& cost, const AttackWindow& window,
                                  CostBoundPolicy policy) {
  window.validate();
  const double raw = cost.integrate(window.start(), window.end());
  const double bound = window.cost_total_bound();
  if (raw <= bound) return {raw, false};
  if (policy == CostBoundPolicy::strict)
    throw CostBoundError("total cost " + std::to_string(raw) + " exceeds C*T = " +
                         std::to_string(bound) + "; C is not an upper bound on the cost rate");
  return {bound, true};
}

WindowMetrics window_metrics(const TimeSeries& revenue, const TimeSeries& cost,
                             const AttackWindow& window, CostBoundPolicy policy) {
  const auto impact = compute_impact(revenue, window);
  const auto total = compute_total_cost(cost, window, policy);
  return {impact.value, total.value, window.recovered(), impact.clamped, total.clamped};
}

}  // namespace effscore
