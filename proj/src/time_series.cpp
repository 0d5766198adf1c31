#include "mrprov/time_series.hpp"

#include <cmath>
#include <numeric>

#include "mrprov/error.hpp"
#include "mrprov/experiment_run.hpp"

namespace mrprov {

TimeSeries::TimeSeries(std::vector<double> values, double interval)
    : values_(std::move(values)), interval_(interval) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "time series needs at least 2 values");
  }
  if (!std::isfinite(interval_) || interval_ <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "time series interval must be finite and > 0");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "time series value " + std::to_string(i) + " must be finite and >= 0");
    }
  }
}

double TimeSeries::integral() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) * interval_;
}

void validate(const ExperimentRun& run) {
  validate(run.config);
  if (!std::isfinite(run.cpu_total) || run.cpu_total < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "cpu_total must be finite and >= 0");
  }
  if (run.trace) {
    const double integral = run.trace->integral();
    const double scale = std::max(run.cpu_total, 1e-300);
    if (std::abs(integral - run.cpu_total) > kTraceIntegralTolerance * scale) {
      throw Error(ErrorCode::InvalidArgument,
                  "trace integrates to " + std::to_string(integral) + " but cpu_total is " +
                      std::to_string(run.cpu_total));
    }
  }
}

}  // namespace mrprov
