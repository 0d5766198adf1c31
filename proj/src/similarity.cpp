#include "mrprov/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "mrprov/error.hpp"

namespace mrprov {

double dtw_distance(std::span<const double> a, std::span<const double> b, std::optional<std::size_t> band) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "dtw: series must be non-empty");
  // The recurrence is symmetric, so keep the shorter series on the inner axis.
  if (b.size() > a.size()) std::swap(a, b);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t diff = n - m;
  if (band && *band < diff) {
    throw Error(ErrorCode::BandTooNarrow, "dtw: band " + std::to_string(*band) +
                                              " is narrower than the length difference " +
                                              std::to_string(diff));
  }
  const std::size_t width = band.value_or(n);

  // cost[j][len] for the current and previous row: minimum cumulative cost
  // of a path from (0, 0) to (i, j) visiting exactly len cells.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t max_len = n + m;
  std::vector<double> prev(m * max_len, kInf);
  std::vector<double> curr(m * max_len, kInf);
  auto at = [max_len](std::vector<double>& row, std::size_t j, std::size_t len) -> double& {
    return row[j * max_len + len];
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j_lo = i > width ? i - width : 0;
    const std::size_t j_hi = std::min(m - 1, i + width);
    std::fill(curr.begin(), curr.end(), kInf);
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      const double local = std::abs(a[i] - b[j]);
      if (i == 0 && j == 0) {
        at(curr, 0, 1) = local;
        continue;
      }
      const std::size_t len_lo = std::max(i, j) + 1;
      const std::size_t len_hi = i + j + 1;
      for (std::size_t len = len_lo; len <= len_hi; ++len) {
        double best = kInf;
        if (i > 0) best = std::min(best, at(prev, j, len - 1));
        if (j > 0) best = std::min(best, at(curr, j - 1, len - 1));
        if (i > 0 && j > 0) best = std::min(best, at(prev, j - 1, len - 1));
        if (best < kInf) at(curr, j, len) = best + local;
      }
    }
    std::swap(prev, curr);
  }

  double result = kInf;
  for (std::size_t len = n; len < max_len; ++len) {
    const double cost = at(prev, m - 1, len);
    if (cost < kInf) result = std::min(result, cost / static_cast<double>(len));
  }
  return result;
}

double dtw_distance(const TimeSeries& a, const TimeSeries& b, std::optional<std::size_t> band) {
  return dtw_distance(a.values(), b.values(), band);
}

std::vector<double> resample_linear(std::span<const double> values, std::size_t length) {
  if (values.empty() || length == 0) {
    throw Error(ErrorCode::InvalidArgument, "resample: empty input or target length");
  }
  if (length == values.size()) return {values.begin(), values.end()};
  std::vector<double> out(length);
  if (length == 1 || values.size() == 1) {
    std::fill(out.begin(), out.end(), values.front());
    return out;
  }
  const double step = static_cast<double>(values.size() - 1) / static_cast<double>(length - 1);
  for (std::size_t k = 0; k + 1 < length; ++k) {
    const double pos = static_cast<double>(k) * step;
    const auto i0 = std::min(static_cast<std::size_t>(pos), values.size() - 2);
    const double frac = pos - static_cast<double>(i0);
    out[k] = values[i0] + frac * (values[i0 + 1] - values[i0]);
  }
  out.back() = values.back();
  return out;
}

namespace {

bool is_constant(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo == *hi;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> z_normalize(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "z_normalize: empty series");
  if (is_constant(values)) throw Error(ErrorCode::ZeroVariance, "zero variance: series is constant");
  const double mean = mean_of(values);
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(values.size()));
  std::vector<double> out;
  out.reserve(values.size());
  for (double x : values) out.push_back((x - mean) / sd);
  return out;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  const std::size_t len = std::min(a.size(), b.size());
  if (len < 2) throw Error(ErrorCode::InvalidArgument, "pearson: series need at least 2 values");
  const auto x = resample_linear(a, len);
  const auto y = resample_linear(b, len);
  if (is_constant(x) || is_constant(y)) {
    throw Error(ErrorCode::ZeroVariance, "zero variance: correlation undefined for a constant series");
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson_correlation(const TimeSeries& a, const TimeSeries& b) {
  return pearson_correlation(a.values(), b.values());
}

SimilarityScore similarity_score(const TimeSeries& a, const TimeSeries& b, double weight,
                                 std::optional<std::size_t> band) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "similarity weight must be in [0, 1]");
  }
  SimilarityScore score;
  score.weight = weight;
  score.pearson = pearson_correlation(a, b);
  score.dtw_normalized = dtw_distance(z_normalize(a.values()), z_normalize(b.values()), band);
  score.combined = weight * std::max(score.pearson, 0.0) + (1.0 - weight) * std::exp(-score.dtw_normalized);
  return score;
}

TransferReport transfer_error(const RegressionModel& model, std::span<const ExperimentRun> runs) {
  TransferReport out;
  out.report = evaluate(model, runs);
  out.model_app = model.app_name;
  std::set<std::string> names;
  for (const auto& run : runs) names.insert(run.app_name);
  for (const auto& name : names) {
    if (!out.runs_app.empty()) out.runs_app += ",";
    out.runs_app += name;
  }
  out.app_mismatch = out.runs_app != out.model_app;
  return out;
}

}  // namespace mrprov
