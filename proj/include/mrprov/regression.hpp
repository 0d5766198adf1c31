#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "mrprov/config_point.hpp"
#include "mrprov/experiment_run.hpp"

namespace mrprov {

/// Per-feature standardization applied to the eight non-intercept features
/// before fitting and prediction.
struct FeatureScaler {
  FeatureVector means{};
  FeatureVector stds{1, 1, 1, 1, 1, 1, 1, 1};

  static FeatureScaler identity() { return {}; }

  /// Population mean and standard deviation of each feature column. A
  /// constant column gets std 0, which validate() rejects.
  static FeatureScaler from_configs(std::span<const ConfigPoint> configs);

  FeatureVector standardize(const FeatureVector& x) const noexcept;
  FeatureVector destandardize(const FeatureVector& z) const noexcept;

  bool operator==(const FeatureScaler&) const = default;
};

struct TrainingSummary {
  std::size_t n_runs = 0;
  double mape_percent = 0.0;

  bool operator==(const TrainingSummary&) const = default;
};

using Coefficients = std::array<double, kNumCoefficients>;

/// Quadratic CPU-cost model. Coefficients live in standardized feature
/// space: prediction = c[0] + sum_k c[k+1] * (x_k - mean_k) / std_k.
struct RegressionModel {
  Coefficients coefficients{};
  FeatureScaler scaler;
  std::string app_name;
  TrainingSummary training_summary;

  bool operator==(const RegressionModel&) const = default;
};

/// Throws Error(InvalidArgument) on a non-finite coefficient or a
/// non-positive scaler std.
void validate(const RegressionModel& model);

/// Standardized design row: [1, z_1, ..., z_8].
DesignRow scaled_design_row(const FeatureScaler& scaler, const ConfigPoint& c) noexcept;

/// Coefficients expressed against the raw (unscaled) design_row, i.e. the
/// alpha_0..alpha_8 of the model equation in original units.
Coefficients raw_coefficients(const RegressionModel& model) noexcept;

/// Unclamped polynomial value.
double evaluate_polynomial(const RegressionModel& model, const ConfigPoint& c) noexcept;

struct Prediction {
  double value = 0.0;    // CPU ticks, >= 0
  bool clamped = false;  // raw polynomial was negative

  bool operator==(const Prediction&) const = default;
};

Prediction predict(const RegressionModel& model, const ConfigPoint& c) noexcept;

/// Relative magnitude below which an R diagonal entry counts as zero.
inline constexpr double kRankTolerance = 1e-10;

/// Least-squares fit of the nine-term quadratic to the runs' cpu_total.
///
/// Uses column-pivoted Householder QR on the standardized design matrix.
/// Throws Error(InsufficientData) for fewer than nine runs and
/// Error(RankDeficient) when the design has rank < 9; the message then
/// names the parameter families that lack variation. The returned model's
/// training_summary holds evaluate() of the model on the same runs.
RegressionModel fit(std::span<const ExperimentRun> runs);

/// Sum of squared residuals of the raw polynomial (no clamping) over runs,
/// evaluated and accumulated in extended precision.
long double sum_squared_residuals(const RegressionModel& model, std::span<const ExperimentRun> runs);

}  // namespace mrprov
