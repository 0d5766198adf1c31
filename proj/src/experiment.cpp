#include "mrprov/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "mrprov/error.hpp"
#include "mrprov/random.hpp"

namespace mrprov {

namespace {

template <typename T>
void check_interval(const Interval<T>& iv, const char* name) {
  if (!(iv.lo <= iv.hi)) {
    throw Error(ErrorCode::InvalidRange, std::string("invalid range for ") + name + ": lo > hi");
  }
  if (!(iv.lo > 0)) {
    throw Error(ErrorCode::InvalidRange, std::string("invalid range for ") + name + ": lo must be > 0");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(iv.hi)) {
      throw Error(ErrorCode::InvalidRange, std::string("invalid range for ") + name + ": not finite");
    }
  }
}

}  // namespace

bool ParameterRanges::contains(const ConfigPoint& c) const noexcept {
  return map.contains(c.map_count) && reduce.contains(c.reduce_count) && fs_size.contains(c.fs_size) &&
         in_size.contains(c.in_size);
}

void validate(const ParameterRanges& ranges) {
  check_interval(ranges.map, "map");
  check_interval(ranges.reduce, "reduce");
  check_interval(ranges.fs_size, "fs_size_mb");
  check_interval(ranges.in_size, "in_size_mb");
}

std::vector<ConfigPoint> sample_configs(std::size_t n, const ParameterRanges& ranges, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  validate(ranges);

  const double log_lo = std::log(ranges.in_size.lo);
  const double log_hi = std::log(ranges.in_size.hi);

  Rng rng(seed);
  std::vector<ConfigPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ConfigPoint c;
    c.map_count = rng.uniform_int(ranges.map.lo, ranges.map.hi);
    c.reduce_count = rng.uniform_int(ranges.reduce.lo, ranges.reduce.hi);
    c.fs_size = rng.uniform(ranges.fs_size.lo, ranges.fs_size.hi);
    if (ranges.in_size_log_uniform) {
      c.in_size = std::exp(rng.uniform(log_lo, log_hi));
    } else {
      c.in_size = rng.uniform(ranges.in_size.lo, ranges.in_size.hi);
    }
    // exp(log(x)) may land an ulp outside the interval.
    c.in_size = std::clamp(c.in_size, ranges.in_size.lo, ranges.in_size.hi);
    out.push_back(c);
  }
  return out;
}

}  // namespace mrprov
