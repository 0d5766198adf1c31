#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mrprov {

/// Uniformly sampled CPU-utilization trace. Values are percent of one core
/// per interval, so with a 100 Hz tick clock sum(values) * interval is the
/// total CPU cost in ticks.
class TimeSeries {
public:
  /// Throws Error(InvalidArgument) on fewer than two values, a negative or
  /// non-finite value, or a non-positive interval.
  TimeSeries(std::vector<double> values, double interval);

  std::span<const double> values() const noexcept { return values_; }
  double interval() const noexcept { return interval_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// sum(values) * interval.
  double integral() const noexcept;

  bool operator==(const TimeSeries&) const = default;

private:
  std::vector<double> values_;
  double interval_;
};

}  // namespace mrprov
