#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mrprov/experiment_run.hpp"
#include "mrprov/regression.hpp"

namespace mrprov {

struct Residual {
  std::size_t index = 0;  // position in the evaluated run list
  double predicted = 0.0;
  double actual = 0.0;
  double ape_percent = 0.0;  // 100 * |predicted - actual| / actual

  bool operator==(const Residual&) const = default;
};

struct ErrorReport {
  double mape = 0.0;     // percent
  double max_ape = 0.0;  // percent
  double r_squared = 0.0;
  std::vector<Residual> residuals;  // runs with actual > 0, in input order
  std::size_t excluded_zero_actuals = 0;
  std::size_t clamped_predictions = 0;

  bool operator==(const ErrorReport&) const = default;
};

/// Percentage errors of model predictions (clamped at 0) against observed
/// cpu_total. Runs whose actual is 0 are counted, not divided by. r_squared
/// is taken over all runs against the mean actual; when every actual is
/// equal it is 1 for an exact fit and 0 otherwise.
///
/// Throws Error(EmptyInput) or Error(AllZeroActuals).
ErrorReport evaluate(const RegressionModel& model, std::span<const ExperimentRun> runs);

}  // namespace mrprov
