#include "mrprov/error_report.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mrprov/error.hpp"

namespace mrprov {

namespace {

// Summed in ascending order so the result does not depend on run order.
double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

}  // namespace

ErrorReport evaluate(const RegressionModel& model, std::span<const ExperimentRun> runs) {
  if (runs.empty()) throw Error(ErrorCode::EmptyInput, "empty input: no runs to evaluate");

  ErrorReport report;
  std::vector<double> apes;
  std::vector<double> squared_residuals;
  std::vector<double> actuals;
  apes.reserve(runs.size());
  squared_residuals.reserve(runs.size());
  actuals.reserve(runs.size());

  for (std::size_t i = 0; i < runs.size(); ++i) {
    const Prediction p = predict(model, runs[i].config);
    const double actual = runs[i].cpu_total;
    if (p.clamped) ++report.clamped_predictions;
    actuals.push_back(actual);
    squared_residuals.push_back((p.value - actual) * (p.value - actual));
    if (actual > 0.0) {
      const double ape = 100.0 * std::abs(p.value - actual) / actual;
      report.residuals.push_back({i, p.value, actual, ape});
      apes.push_back(ape);
      report.max_ape = std::max(report.max_ape, ape);
    } else {
      ++report.excluded_zero_actuals;
    }
  }
  if (apes.empty()) {
    throw Error(ErrorCode::AllZeroActuals, "all actuals are zero; percentage error undefined");
  }
  // Rounding in the mean must not push it past the largest term.
  report.mape = std::min(sorted_sum(apes) / static_cast<double>(apes.size()), report.max_ape);

  const double mean_actual = sorted_sum(actuals) / static_cast<double>(actuals.size());
  std::vector<double> deviations;
  deviations.reserve(actuals.size());
  for (double a : actuals) deviations.push_back((a - mean_actual) * (a - mean_actual));
  const double ss_tot = sorted_sum(std::move(deviations));
  const double ss_res = sorted_sum(std::move(squared_residuals));
  if (ss_tot > 0.0) {
    report.r_squared = 1.0 - ss_res / ss_tot;
  } else {
    report.r_squared = ss_res == 0.0 ? 1.0 : 0.0;
  }
  return report;
}

}  // namespace mrprov
