#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrprov/experiment.hpp"
#include "mrprov/experiment_run.hpp"
#include "mrprov/regression.hpp"

namespace mrprov {

struct TraceShape {
  double map_fraction = 0.5;  // share of CPU spent in the map phase, (0, 1)
  std::size_t samples_per_run = 64;
  double phase_smoothness = 0.1;  // ramp width between phases, fraction of run length

  bool operator==(const TraceShape&) const = default;
};

/// A synthetic application with known cost structure.
///
/// Ground truth at c is
///   poly(c) * (1 + mismatch_amplitude * sin(pi * log2(in_size)))
/// where poly is the nine-term quadratic with true_coefficients applied to
/// the raw design_row. The sinusoid has a period of two octaves of input
/// size, which no quadratic can follow, so a nonzero amplitude leaves an
/// irreducible fitting error.
struct AppProfile {
  std::string app_name;
  Coefficients true_coefficients{};
  double noise_sigma_fraction = 0.0;
  double mismatch_amplitude = 0.0;  // [0, 1)
  TraceShape trace_shape;

  bool operator==(const AppProfile&) const = default;
};

/// Field-level checks plus strict positivity of the noiseless polynomial
/// over `ranges`. The polynomial is separable in the four parameters, so
/// its minimum over the box is found exactly from each 1-D quadratic.
void validate(const AppProfile& profile, const ParameterRanges& ranges = ParameterRanges::defaults());

/// Minimum of the noiseless polynomial (mismatch excluded) over the box.
double min_polynomial_over(const AppProfile& profile, const ParameterRanges& ranges);

double ground_truth_polynomial(const AppProfile& profile, const ConfigPoint& c) noexcept;

/// Polynomial times the mismatch factor; the noiseless cost.
double ground_truth(const AppProfile& profile, const ConfigPoint& c) noexcept;

/// Truncation bound on the multiplicative noise, in standard deviations.
inline constexpr double kNoiseTruncationSigmas = 4.0;

/// Nominal mean utilization used to lay the trace out in time: a run whose
/// cost is T ticks lasts T / kNominalUtilizationPercent seconds.
inline constexpr double kNominalUtilizationPercent = 100.0;

/// One synthetic run: cpu_total = ground_truth * (1 + eps) with eps normal,
/// sd noise_sigma_fraction, truncated at +-4 sd and floored so the total
/// stays positive. The trace is a map plateau followed by a reduce plateau
/// joined by a linear ramp, jittered per sample by the same noise level and
/// rescaled so that its integral equals cpu_total.
///
/// Throws Error(NonPositiveGroundTruth) if the polynomial is <= 0 at c.
ExperimentRun simulate_run(const AppProfile& profile, const ConfigPoint& c, std::uint64_t seed);

/// simulate_run for each config with seed mix_seed(seed, index). Errors are
/// rethrown with the offending index in the message.
std::vector<ExperimentRun> batch_simulate(const AppProfile& profile,
                                          std::span<const ConfigPoint> configs,
                                          std::uint64_t seed);

/// Built-in profiles: "wordcount_like", "logparse_like" (wordcount's
/// coefficients scaled by 1.05) and "dissimilar". Throws
/// Error(InvalidArgument) for any other name.
AppProfile bundled_profile(std::string_view name);

std::vector<std::string> bundled_profile_names();

}  // namespace mrprov
