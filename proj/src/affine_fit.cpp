#include "effscore/affine_fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "effscore/error.hpp"

namespace effscore {

namespace {

Eigen::VectorXd transformed(std::span<const Variable> variables, const Eigen::VectorXd& values) {
  Eigen::VectorXd out(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k)
    out[k] = variables[static_cast<std::size_t>(k)].transform(values[k]);
  return out;
}

}  // namespace

double LinearFit::evaluate(std::span<const Variable> variables,
                           const Eigen::VectorXd& values) const {
  return intercept + slopes.dot(transformed(variables, values));
}

Eigen::VectorXd SampleStream::point_in(std::span<const Variable> variables) {
  Eigen::VectorXd point(static_cast<Eigen::Index>(variables.size()));
  for (std::size_t k = 0; k < variables.size(); ++k)
    point[static_cast<Eigen::Index>(k)] = uniform(0.0, variables[k].bound);
  return point;
}

LinearFit probe_coefficients(const ScoreFunction& score, Recovery branch,
                             std::span<const Variable> variables) {
  const auto n = static_cast<Eigen::Index>(variables.size());
  LinearFit fit;
  fit.branch = branch;
  fit.slopes.resize(n);
  Eigen::VectorXd point = Eigen::VectorXd::Zero(n);
  fit.intercept = score(point);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Variable& var = variables[static_cast<std::size_t>(k)];
    point[k] = var.bound;
    fit.slopes[k] = (score(point) - fit.intercept) / var.scaled_bound();
    point[k] = 0.0;
    fit.names.push_back(var.name);
  }
  return fit;
}

LinearFit fit_affine(const ScoreFunction& score, Recovery branch,
                     std::span<const Variable> variables, std::uint64_t seed, int checks) {
  LinearFit fit = probe_coefficients(score, branch, variables);
  SampleStream stream(seed);
  for (int i = 0; i < checks; ++i) {
    const Eigen::VectorXd point = stream.point_in(variables);
    const double actual = score(point);
    const double predicted = fit.evaluate(variables, point);
    if (std::abs(actual - predicted) > 1e-12 * std::max(1.0, std::abs(actual)))
      throw NonAffineError("score is not affine in the transformed variables: model gives " +
                           std::to_string(predicted) + ", score gives " +
                           std::to_string(actual));
  }
  return fit;
}

}  // namespace effscore
