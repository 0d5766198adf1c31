#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace mrprov {

/// One setting of the four tuned parameters of a MapReduce job.
struct ConfigPoint {
  std::int64_t map_count = 1;
  std::int64_t reduce_count = 1;
  double fs_size = 1.0;  // file-system block size, MB
  double in_size = 1.0;  // input data size, MB

  bool operator==(const ConfigPoint&) const = default;
};

/// Throws Error(InvalidArgument) unless every field is finite and strictly
/// positive.
void validate(const ConfigPoint& c);

inline constexpr std::size_t kNumParameters = 4;
inline constexpr std::size_t kNumFeatures = 8;
inline constexpr std::size_t kNumCoefficients = kNumFeatures + 1;

using DesignRow = std::array<double, kNumCoefficients>;
using FeatureVector = std::array<double, kNumFeatures>;

/// Term order of the quadratic model. Stable; model files depend on it.
inline constexpr std::array<const char*, kNumCoefficients> kTermNames = {
    "1", "Map", "Reduce", "FS_Size", "IN_Size", "Map^2", "Reduce^2", "FS_Size^2", "IN_Size^2"};

/// Parameter family names, one per tuned parameter, as used in diagnostics.
inline constexpr std::array<const char*, kNumParameters> kParameterNames = {
    "map_count", "reduce_count", "fs_size", "in_size"};

std::array<double, kNumParameters> parameters(const ConfigPoint& c) noexcept;

/// [1, Map, Reduce, FS_Size, IN_Size, Map^2, Reduce^2, FS_Size^2, IN_Size^2],
/// unscaled. Defined for any numeric input, including the all-zero point.
DesignRow design_row(const ConfigPoint& c) noexcept;

/// The eight non-intercept entries of design_row.
FeatureVector features(const ConfigPoint& c) noexcept;

}  // namespace mrprov
