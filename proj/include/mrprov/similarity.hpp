#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mrprov/error_report.hpp"
#include "mrprov/regression.hpp"
#include "mrprov/time_series.hpp"

namespace mrprov {

/// Normalized dynamic time warping distance.
///
/// Warping paths run from (0, 0) to (n-1, m-1) with steps (1,0), (0,1) and
/// (1,1); the local cost is |a_i - b_j|. The result is the smallest mean
/// local cost over all admissible paths, i.e. min over paths of
/// cost(path) / length(path). With `band` set, cells with |i - j| > band are
/// excluded (Sakoe-Chiba corridor).
///
/// Time O(n * m * min(n, m)), memory O(m * (n + m)).
///
/// Throws Error(InvalidArgument) on an empty input and Error(BandTooNarrow)
/// if band < |n - m|.
double dtw_distance(std::span<const double> a, std::span<const double> b,
                    std::optional<std::size_t> band = std::nullopt);
double dtw_distance(const TimeSeries& a, const TimeSeries& b,
                    std::optional<std::size_t> band = std::nullopt);

/// Linear resampling to `length` points spanning the same first and last
/// sample.
std::vector<double> resample_linear(std::span<const double> values, std::size_t length);

/// (x - mean) / std with population std. Throws Error(ZeroVariance) on a
/// constant series.
std::vector<double> z_normalize(std::span<const double> values);

/// Product-moment correlation after resampling the longer series to the
/// shorter length. Throws Error(ZeroVariance) if either is constant.
double pearson_correlation(std::span<const double> a, std::span<const double> b);
double pearson_correlation(const TimeSeries& a, const TimeSeries& b);

inline constexpr double kDefaultSimilarityWeight = 0.5;

struct SimilarityScore {
  double dtw_normalized = 0.0;  // DTW on z-normalized series
  double pearson = 0.0;
  double combined = 0.0;  // weight * max(pearson, 0) + (1 - weight) * exp(-dtw_normalized)
  double weight = kDefaultSimilarityWeight;

  bool operator==(const SimilarityScore&) const = default;
};

/// Throws Error(InvalidArgument) for weight outside [0, 1]; otherwise
/// propagates errors of the two measures.
SimilarityScore similarity_score(const TimeSeries& a, const TimeSeries& b,
                                 double weight = kDefaultSimilarityWeight,
                                 std::optional<std::size_t> band = std::nullopt);

struct TransferReport {
  ErrorReport report;
  std::string model_app;
  std::string runs_app;  // distinct run app names, sorted, comma-joined
  bool app_mismatch = false;

  bool operator==(const TransferReport&) const = default;
};

/// evaluate() of one application's model on another application's runs.
TransferReport transfer_error(const RegressionModel& model, std::span<const ExperimentRun> runs);

}  // namespace mrprov
