#include "mrprov/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mrprov/error.hpp"
#include "mrprov/random.hpp"

namespace mrprov {

namespace {

// Phase boundary in normalized run time; the ramp is centred on it.
constexpr double kPhaseSplit = 0.5;
// Floor on cpu_total and on per-sample jitter factors, relative.
constexpr double kPositiveFloor = 1e-6;

template <typename T>
double min_quadratic(double linear, double square, T lo, T hi) {
  auto f = [&](double x) { return linear * x + square * x * x; };
  double best = std::min(f(static_cast<double>(lo)), f(static_cast<double>(hi)));
  if (square > 0.0) {
    const double vertex = -linear / (2.0 * square);
    if constexpr (std::is_integral_v<T>) {
      for (double v : {std::floor(vertex), std::ceil(vertex)}) {
        if (v >= static_cast<double>(lo) && v <= static_cast<double>(hi)) best = std::min(best, f(v));
      }
    } else {
      if (vertex > lo && vertex < hi) best = std::min(best, f(vertex));
    }
  }
  return best;
}

double truncated_normal(Rng& rng) {
  double z;
  do {
    z = rng.normal();
  } while (std::abs(z) > kNoiseTruncationSigmas);
  return z;
}

double shape_at(const TraceShape& shape, double t) {
  const double map_level = shape.map_fraction / kPhaseSplit;
  const double reduce_level = (1.0 - shape.map_fraction) / (1.0 - kPhaseSplit);
  const double half = 0.5 * shape.phase_smoothness;
  if (t <= kPhaseSplit - half) return map_level;
  if (t >= kPhaseSplit + half) return reduce_level;
  const double u = (t - (kPhaseSplit - half)) / shape.phase_smoothness;
  return map_level + u * (reduce_level - map_level);
}

}  // namespace

double ground_truth_polynomial(const AppProfile& profile, const ConfigPoint& c) noexcept {
  const auto row = design_row(c);
  double value = 0.0;
  for (std::size_t j = 0; j < kNumCoefficients; ++j) value += profile.true_coefficients[j] * row[j];
  return value;
}

double ground_truth(const AppProfile& profile, const ConfigPoint& c) noexcept {
  const double poly = ground_truth_polynomial(profile, c);
  if (profile.mismatch_amplitude == 0.0) return poly;
  return poly * (1.0 + profile.mismatch_amplitude * std::sin(std::numbers::pi * std::log2(c.in_size)));
}

double min_polynomial_over(const AppProfile& profile, const ParameterRanges& ranges) {
  const auto& a = profile.true_coefficients;
  return a[0] + min_quadratic(a[1], a[5], ranges.map.lo, ranges.map.hi) +
         min_quadratic(a[2], a[6], ranges.reduce.lo, ranges.reduce.hi) +
         min_quadratic(a[3], a[7], ranges.fs_size.lo, ranges.fs_size.hi) +
         min_quadratic(a[4], a[8], ranges.in_size.lo, ranges.in_size.hi);
}

void validate(const AppProfile& profile, const ParameterRanges& ranges) {
  auto invalid = [&](const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, "profile '" + profile.app_name + "': " + what);
  };
  if (profile.app_name.empty()) invalid("app_name must not be empty");
  if (profile.app_name.find_first_of(",\"\n\r") != std::string::npos) {
    invalid("app_name must not contain commas, quotes or newlines");
  }
  for (double c : profile.true_coefficients) {
    if (!std::isfinite(c)) invalid("true_coefficients must be finite");
  }
  if (!std::isfinite(profile.noise_sigma_fraction) || profile.noise_sigma_fraction < 0.0) {
    invalid("noise_sigma_fraction must be >= 0");
  }
  if (!(profile.mismatch_amplitude >= 0.0 && profile.mismatch_amplitude < 1.0)) {
    invalid("mismatch_amplitude must be in [0, 1)");
  }
  const auto& shape = profile.trace_shape;
  if (!(shape.map_fraction > 0.0 && shape.map_fraction < 1.0)) invalid("map_fraction must be in (0, 1)");
  if (shape.samples_per_run < 4) invalid("samples_per_run must be >= 4");
  if (!(shape.phase_smoothness >= 0.0 && shape.phase_smoothness <= 1.0)) {
    invalid("phase_smoothness must be in [0, 1]");
  }
  validate(ranges);
  const double lowest = min_polynomial_over(profile, ranges);
  if (!(lowest > 0.0)) {
    throw Error(ErrorCode::NonPositiveGroundTruth,
                "profile '" + profile.app_name + "': ground truth reaches " + std::to_string(lowest) +
                    " inside the parameter ranges; it must stay > 0");
  }
}

ExperimentRun simulate_run(const AppProfile& profile, const ConfigPoint& c, std::uint64_t seed) {
  validate(c);
  const double poly = ground_truth_polynomial(profile, c);
  if (!(poly > 0.0)) {
    throw Error(ErrorCode::NonPositiveGroundTruth,
                "ground truth of '" + profile.app_name + "' is " + std::to_string(poly) + " (must be > 0)");
  }
  const double truth = ground_truth(profile, c);
  const double sigma = profile.noise_sigma_fraction;

  Rng rng(seed);
  double total = truth;
  if (sigma > 0.0) {
    total = std::max(truth * (1.0 + sigma * truncated_normal(rng)), truth * kPositiveFloor);
  }

  const auto& shape = profile.trace_shape;
  const std::size_t n = shape.samples_per_run;
  std::vector<double> values(n);
  double shape_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double v = shape_at(shape, (static_cast<double>(k) + 0.5) / static_cast<double>(n));
    if (sigma > 0.0) v *= std::max(1.0 + sigma * truncated_normal(rng), kPositiveFloor);
    values[k] = v;
    shape_sum += v;
  }
  const double interval = total / (kNominalUtilizationPercent * static_cast<double>(n));
  const double scale = kNominalUtilizationPercent * static_cast<double>(n) / shape_sum;
  for (double& v : values) v *= scale;

  ExperimentRun run;
  run.config = c;
  run.cpu_total = total;
  run.trace = TimeSeries(std::move(values), interval);
  run.app_name = profile.app_name;
  return run;
}

std::vector<ExperimentRun> batch_simulate(const AppProfile& profile, std::span<const ConfigPoint> configs,
                                          std::uint64_t seed) {
  std::vector<ExperimentRun> runs;
  runs.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      runs.push_back(simulate_run(profile, configs[i], mix_seed(seed, i)));
    } catch (const Error& e) {
      throw Error(e.code(), "run " + std::to_string(i) + ": " + e.what());
    }
  }
  return runs;
}

namespace {

AppProfile make_wordcount_like() {
  AppProfile p;
  p.app_name = "wordcount_like";
  p.true_coefficients = {2.0e4, 150.0, 220.0, -40.0, 95.0, 2.0, 4.5, 0.12, 0.0015};
  p.noise_sigma_fraction = 0.03;
  p.mismatch_amplitude = 0.03;
  p.trace_shape = {0.6, 64, 0.1};
  return p;
}

}  // namespace

AppProfile bundled_profile(std::string_view name) {
  if (name == "wordcount_like") return make_wordcount_like();
  if (name == "logparse_like") {
    // Wordcount's coefficients scaled by 1.05.
    AppProfile p = make_wordcount_like();
    p.app_name = "logparse_like";
    p.true_coefficients = {21000.0, 157.5, 231.0, -42.0, 99.75, 2.1, 4.725, 0.126, 0.001575};
    p.trace_shape = {0.65, 64, 0.15};
    return p;
  }
  if (name == "dissimilar") {
    AppProfile p;
    p.app_name = "dissimilar";
    p.true_coefficients = {5.0e4, 30.0, 3000.0, 10.0, 20.0, 60.0, 90.0, 0.5, 0.01};
    p.noise_sigma_fraction = 0.03;
    p.mismatch_amplitude = 0.03;
    p.trace_shape = {0.25, 64, 0.3};
    return p;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown bundled profile '" + std::string(name) + "'");
}

std::vector<std::string> bundled_profile_names() { return {"wordcount_like", "logparse_like", "dissimilar"}; }

}  // namespace mrprov
