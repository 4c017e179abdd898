#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "effscore/error.hpp"
#include "effscore/timeseries.hpp"
#include "support/piecewise_oracle.hpp"

namespace effscore {
namespace {

AttackWindow window(double b, double c, double td, std::optional<double> tr, double t) {
  return {b, c, td, tr, t};
}

TEST(TimeSeries, RejectsInvalidSamples) {
  EXPECT_THROW(TimeSeries({{0, 1}}), ValidationError);
  EXPECT_THROW(TimeSeries({{0, 1}, {0, 2}}), ValidationError);
  EXPECT_THROW(TimeSeries({{1, 1}, {0, 2}}), ValidationError);
  EXPECT_THROW(TimeSeries({{0, -1}, {1, 2}}), ValidationError);
  EXPECT_THROW(TimeSeries({{0, NAN}, {1, 2}}), ValidationError);
}

TEST(TimeSeries, InterpolatesLinearly) {
  const TimeSeries s({{0, 0}, {2, 4}, {4, 0}});
  EXPECT_DOUBLE_EQ(s.value_at(1), 2);
  EXPECT_DOUBLE_EQ(s.value_at(2), 4);
  EXPECT_DOUBLE_EQ(s.value_at(3.5), 1);
  EXPECT_THROW(s.value_at(4.5), CoverageError);
  EXPECT_DOUBLE_EQ(s.integrate(0, 4), 8);
  EXPECT_DOUBLE_EQ(s.integrate(1, 3), 6);
  EXPECT_DOUBLE_EQ(s.integrate(2, 2), 0);
}

TEST(Impact, BaselineRevenueHasNoImpact) {
  const auto r = compute_impact(TimeSeries::constant(10, 0, 10), window(10, 5, 0, 4, 10));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_FALSE(r.clamped);
}

TEST(Impact, ConstantShortfall) {
  const auto r = TimeSeries::constant(5, 0, 10);
  const auto recovered = compute_impact(r, window(10, 5, 0, 4, 10));
  EXPECT_NEAR(recovered.value, 20.0, 1e-12);
  EXPECT_FALSE(recovered.clamped);
  const auto unrecovered = compute_impact(r, window(10, 5, 0, std::nullopt, 10));
  EXPECT_NEAR(unrecovered.value, 50.0, 1e-12);
}

TEST(Impact, RevenueAboveBaselineClampsToZero) {
  const auto r = compute_impact(TimeSeries::constant(12, 0, 10), window(10, 5, 0, 2, 10));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.clamped);
}

TEST(Impact, RecoveryAfterHorizonClipsAtT) {
  const auto r = TimeSeries::constant(5, 0, 20);
  const auto late = compute_impact(r, window(10, 5, 0, 15, 10));
  EXPECT_NEAR(late.value, 50.0, 1e-12);
  EXPECT_FALSE(window(10, 5, 0, 15, 10).recovered());
}

TEST(Impact, WindowMustBeCovered) {
  const auto r = TimeSeries::constant(5, 2, 10);
  EXPECT_THROW(compute_impact(r, window(10, 5, 0, 4, 10)), CoverageError);
  EXPECT_THROW(compute_impact(TimeSeries::constant(5, 0, 8), window(10, 5, 0, std::nullopt, 10)),
               CoverageError);
}

TEST(AttackWindowTest, Validation) {
  EXPECT_THROW(window(0, 5, 0, 4, 10).validate(), ValidationError);
  EXPECT_THROW(window(10, 0, 0, 4, 10).validate(), ValidationError);
  EXPECT_THROW(window(10, 5, 10, std::nullopt, 10).validate(), ValidationError);
  EXPECT_THROW(window(10, 5, -1, std::nullopt, 10).validate(), ValidationError);
  EXPECT_THROW(window(10, 5, 4, 4, 10).validate(), ValidationError);
  EXPECT_NO_THROW(window(10, 5, 4, 12, 10).validate());
}

TEST(TotalCost, Examples) {
  EXPECT_EQ(compute_total_cost(TimeSeries::constant(0, 0, 10), window(10, 5, 0, 4, 10)).value, 0);
  const auto c = compute_total_cost(TimeSeries::constant(2, 0, 10), window(10, 5, 1, 6, 10));
  EXPECT_NEAR(c.value, 10.0, 1e-12);
  EXPECT_FALSE(c.clamped);
}

TEST(TotalCost, BoundViolation) {
  const auto c = TimeSeries::constant(8, 0, 10);
  const auto w = window(10, 5, 0, std::nullopt, 10);
  EXPECT_THROW(compute_total_cost(c, w), CostBoundError);
  const auto clamped = compute_total_cost(c, w, CostBoundPolicy::clamp);
  EXPECT_EQ(clamped.value, 50.0);
  EXPECT_TRUE(clamped.clamped);
}

TEST(WindowMetricsTest, BundlesBothIntegrals) {
  const auto m = window_metrics(TimeSeries::constant(10, 0, 10), TimeSeries::constant(0, 0, 10),
                                window(10, 5, 0, 4, 10));
  EXPECT_EQ(m.impact, 0.0);
  EXPECT_EQ(m.total_cost, 0.0);
  EXPECT_TRUE(m.recovered);

  const auto w = window(10, 5, 0, 4, 10);
  const auto m2 = window_metrics(TimeSeries::constant(5, 0, 10), TimeSeries::constant(2, 0, 10), w);
  EXPECT_NEAR(m2.impact, 20.0, 1e-12);
  EXPECT_NEAR(m2.total_cost, 8.0, 1e-12);

  const auto m3 = window_metrics(TimeSeries::constant(5, 0, 10), TimeSeries::constant(2, 0, 10),
                                 window(10, 5, 0, std::nullopt, 10));
  EXPECT_FALSE(m3.recovered);
}

TEST(Csv, ParsesHeaderAndRows) {
  std::istringstream in("t,value\r\n0,1.5\r\n1,2\r\n\r\n2.5,0\r\n");
  const TimeSeries s = read_csv(in);
  ASSERT_EQ(s.samples().size(), 3u);
  EXPECT_EQ(s.samples()[2].t, 2.5);
  EXPECT_EQ(s.samples()[0].value, 1.5);
}

TEST(Csv, Errors) {
  for (const char* text : {"", "time,value\n0,1\n1,1\n", "t,value\n0,1\n", "t,value\n0;1\n1;2\n",
                           "t,value\n0,1,2\n1,2\n", "t,value\n0,1\n1,1,000\n", "t,value\n0,x\n1,1\n",
                           "t,value\n1,1\n0,1\n", "t,value\n0,-1\n1,1\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_csv(in), ParseError) << text;
  }
}

TEST(Csv, MissingFile) {
  EXPECT_THROW(read_csv_file("/nonexistent/trace.csv"), ParseError);
}

TEST(IntegrationProperties, MatchesAnalyticPiecewiseLinear) {
  SampleStream s(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = testing::random_piecewise(s, 50.0, 0.0, 20.0);
    const TimeSeries series = f.series();
    double a = s.uniform(0.0, 50.0);
    double b = s.uniform(0.0, 50.0);
    if (a > b) std::swap(a, b);
    const double expected = f.integral(a, b);
    EXPECT_NEAR(series.integrate(a, b), expected, 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST(IntegrationProperties, AdditiveAtInteriorSamples) {
  SampleStream s(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = testing::random_piecewise(s, 30.0, 0.0, 10.0);
    if (f.t.size() < 3) continue;
    const TimeSeries series = f.series();
    const double mid = f.t[1 + static_cast<std::size_t>(s.uniform() * (f.t.size() - 2))];
    const double whole = series.integrate(0.0, 30.0);
    const double split = series.integrate(0.0, mid) + series.integrate(mid, 30.0);
    EXPECT_NEAR(whole, split, 1e-12 * std::max(1.0, whole));
  }
}

TEST(IntegrationProperties, DominanceAndBounds) {
  SampleStream s(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto low = testing::random_piecewise(s, 10.0, 0.0, 12.0);
    auto high = low;
    for (auto& v : high.v) v += s.uniform(0.0, 3.0);
    const double tr = s.uniform(0.5, 12.0);
    const auto w = window(10.0, 5.0, s.uniform(0.0, 0.4), tr, 10.0);
    const auto i_low = compute_impact(low.series(), w);
    const auto i_high = compute_impact(high.series(), w);
    EXPECT_LE(i_high.value, i_low.value);
    for (const auto& r : {i_low, i_high}) {
      EXPECT_GE(r.value, 0.0);
      EXPECT_LE(r.value, w.impact_bound());
    }
    const auto c = compute_total_cost(high.series(), w, CostBoundPolicy::clamp);
    EXPECT_GE(c.value, 0.0);
    EXPECT_LE(c.value, w.cost_total_bound());
  }
}

}  // namespace
}  // namespace effscore
