#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mrprov/config_point.hpp"

namespace mrprov {

template <typename T>
struct Interval {
  T lo;
  T hi;

  bool contains(T v) const noexcept { return lo <= v && v <= hi; }
  bool operator==(const Interval&) const = default;
};

struct ParameterRanges {
  Interval<std::int64_t> map{1, 64};
  Interval<std::int64_t> reduce{1, 32};
  Interval<double> fs_size{16.0, 256.0};    // MB
  Interval<double> in_size{64.0, 16384.0};  // MB
  bool in_size_log_uniform = true;

  static ParameterRanges defaults() { return {}; }

  bool contains(const ConfigPoint& c) const noexcept;
  bool operator==(const ParameterRanges&) const = default;
};

/// Throws Error(InvalidRange) if any interval has lo > hi or lo <= 0.
void validate(const ParameterRanges& ranges);

/// n independent random configurations. Integer parameters are uniform on
/// their closed interval, fs_size uniform, in_size uniform or log-uniform.
/// A single Rng seeded with `seed` draws map, reduce, fs_size, in_size per
/// point in that order, so the output is a pure function of the arguments.
std::vector<ConfigPoint> sample_configs(std::size_t n, const ParameterRanges& ranges,
                                        std::uint64_t seed);

}  // namespace mrprov
