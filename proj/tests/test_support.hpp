#pragma once

// Test-only helpers and independent oracles. Nothing here calls the code
// paths it is used to check.

#include <cstddef>
#include <cstdint>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mrprov/config_point.hpp"

namespace mrprov::testing {

#ifndef MRPROV_DATA_DIR
#error "MRPROV_DATA_DIR must be defined"
#endif

inline std::filesystem::path data_dir() { return MRPROV_DATA_DIR; }

class TempDir {
public:
  TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("mrprov_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

/// Enumerates every monotone warping path (steps (1,0), (0,1), (1,1)) and
/// returns min over paths of cost / length, with |a_i - b_j| summed from the
/// start of the path.
inline double brute_force_dtw(std::span<const double> a, std::span<const double> b,
                              std::optional<std::size_t> band = std::nullopt) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  auto recurse = [&](auto&& self, std::size_t i, std::size_t j, double cost, std::size_t len) -> void {
    const std::size_t d = i > j ? i - j : j - i;
    if (band && d > *band) return;
    cost += std::abs(a[i] - b[j]);
    ++len;
    if (i == n - 1 && j == m - 1) {
      best = std::min(best, cost / static_cast<double>(len));
      return;
    }
    if (i + 1 < n) self(self, i + 1, j, cost, len);
    if (j + 1 < m) self(self, i, j + 1, cost, len);
    if (i + 1 < n && j + 1 < m) self(self, i + 1, j + 1, cost, len);
  };
  recurse(recurse, 0, 0, 0.0, 0);
  return best;
}

/// The model equation written out term by term.
inline double quadratic_oracle(const std::array<double, 9>& alpha, const ConfigPoint& c) {
  const double map = static_cast<double>(c.map_count);
  const double red = static_cast<double>(c.reduce_count);
  return alpha[0] + alpha[1] * map + alpha[2] * red + alpha[3] * c.fs_size + alpha[4] * c.in_size +
         alpha[5] * map * map + alpha[6] * red * red + alpha[7] * c.fs_size * c.fs_size +
         alpha[8] * c.in_size * c.in_size;
}

inline double relative_error(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
  return count;
}

}  // namespace mrprov::testing
