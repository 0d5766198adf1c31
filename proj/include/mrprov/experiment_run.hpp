#pragma once

#include <optional>
#include <string>

#include "mrprov/config_point.hpp"
#include "mrprov/time_series.hpp"

namespace mrprov {

struct ExperimentRun {
  ConfigPoint config;
  double cpu_total = 0.0;  // CPU ticks
  std::optional<TimeSeries> trace;
  std::string app_name;

  bool operator==(const ExperimentRun&) const = default;
};

/// Relative tolerance between a trace's integral and cpu_total.
inline constexpr double kTraceIntegralTolerance = 0.01;

/// Checks the config, cpu_total >= 0, and that the trace (when present)
/// integrates to cpu_total. Throws Error(InvalidArgument).
void validate(const ExperimentRun& run);

}  // namespace mrprov
