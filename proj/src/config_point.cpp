#include "mrprov/config_point.hpp"

#include <cmath>
#include <string>

#include "mrprov/error.hpp"

namespace mrprov {

void validate(const ConfigPoint& c) {
  if (c.map_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "map_count must be >= 1, got " + std::to_string(c.map_count));
  }
  if (c.reduce_count < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "reduce_count must be >= 1, got " + std::to_string(c.reduce_count));
  }
  if (!std::isfinite(c.fs_size) || c.fs_size <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "fs_size must be finite and > 0");
  }
  if (!std::isfinite(c.in_size) || c.in_size <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "in_size must be finite and > 0");
  }
}

std::array<double, kNumParameters> parameters(const ConfigPoint& c) noexcept {
  return {static_cast<double>(c.map_count), static_cast<double>(c.reduce_count), c.fs_size, c.in_size};
}

FeatureVector features(const ConfigPoint& c) noexcept {
  const auto p = parameters(c);
  return {p[0], p[1], p[2], p[3], p[0] * p[0], p[1] * p[1], p[2] * p[2], p[3] * p[3]};
}

DesignRow design_row(const ConfigPoint& c) noexcept {
  const auto f = features(c);
  DesignRow row;
  row[0] = 1.0;
  for (std::size_t k = 0; k < kNumFeatures; ++k) row[k + 1] = f[k];
  return row;
}

}  // namespace mrprov
