#include "mrprov/regression.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mrprov/error.hpp"
#include "mrprov/error_report.hpp"

namespace mrprov {

FeatureScaler FeatureScaler::from_configs(std::span<const ConfigPoint> configs) {
  FeatureScaler scaler;
  if (configs.empty()) return scaler;
  const double n = static_cast<double>(configs.size());
  std::vector<FeatureVector> rows;
  rows.reserve(configs.size());
  for (const auto& c : configs) rows.push_back(features(c));

  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    double sum = 0.0;
    double lo = rows.front()[k];
    double hi = lo;
    for (const auto& r : rows) {
      sum += r[k];
      lo = std::min(lo, r[k]);
      hi = std::max(hi, r[k]);
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : rows) ss += (r[k] - mean) * (r[k] - mean);
    scaler.means[k] = mean;
    // A constant column must report exactly zero spread, whatever rounding
    // the mean picked up.
    scaler.stds[k] = lo == hi ? 0.0 : std::sqrt(ss / n);
  }
  return scaler;
}

FeatureVector FeatureScaler::standardize(const FeatureVector& x) const noexcept {
  FeatureVector z;
  for (std::size_t k = 0; k < kNumFeatures; ++k) z[k] = (x[k] - means[k]) / stds[k];
  return z;
}

FeatureVector FeatureScaler::destandardize(const FeatureVector& z) const noexcept {
  FeatureVector x;
  for (std::size_t k = 0; k < kNumFeatures; ++k) x[k] = z[k] * stds[k] + means[k];
  return x;
}

void validate(const RegressionModel& model) {
  for (double c : model.coefficients) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "model coefficient is not finite");
  }
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    if (!std::isfinite(model.scaler.means[k])) {
      throw Error(ErrorCode::InvalidArgument, "scaler mean is not finite");
    }
    if (!std::isfinite(model.scaler.stds[k]) || model.scaler.stds[k] <= 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("scaler std for ") + kTermNames[k + 1] + " must be > 0");
    }
  }
}

DesignRow scaled_design_row(const FeatureScaler& scaler, const ConfigPoint& c) noexcept {
  const auto z = scaler.standardize(features(c));
  DesignRow row;
  row[0] = 1.0;
  for (std::size_t k = 0; k < kNumFeatures; ++k) row[k + 1] = z[k];
  return row;
}

Coefficients raw_coefficients(const RegressionModel& model) noexcept {
  Coefficients raw;
  raw[0] = model.coefficients[0];
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    raw[k + 1] = model.coefficients[k + 1] / model.scaler.stds[k];
    raw[0] -= raw[k + 1] * model.scaler.means[k];
  }
  return raw;
}

double evaluate_polynomial(const RegressionModel& model, const ConfigPoint& c) noexcept {
  const auto row = scaled_design_row(model.scaler, c);
  double value = 0.0;
  for (std::size_t j = 0; j < kNumCoefficients; ++j) value += model.coefficients[j] * row[j];
  return value;
}

Prediction predict(const RegressionModel& model, const ConfigPoint& c) noexcept {
  const double raw = evaluate_polynomial(model, c);
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

namespace {

// A parameter with fewer than three distinct values makes its linear and
// squared columns affinely dependent on the intercept.
std::string families_lacking_variation(std::span<const ExperimentRun> runs) {
  std::string names;
  for (std::size_t p = 0; p < kNumParameters; ++p) {
    std::set<double> distinct;
    for (const auto& run : runs) {
      distinct.insert(parameters(run.config)[p]);
      if (distinct.size() >= 3) break;
    }
    if (distinct.size() < 3) {
      if (!names.empty()) names += ", ";
      names += std::string(kParameterNames[p]) + " (" + kTermNames[p + 1] + ", " + kTermNames[p + 5] +
               ")";
    }
  }
  return names;
}

[[noreturn]] void throw_rank_deficient(std::span<const ExperimentRun> runs, std::size_t rank) {
  const std::string families = families_lacking_variation(runs);
  std::string msg = "rank deficient: design matrix rank " + std::to_string(rank) + " < " +
                    std::to_string(kNumCoefficients) + "; ";
  if (!families.empty()) {
    msg += "too few distinct values in " + families + "; vary these parameters";
  } else {
    msg += "columns are linearly dependent; vary the parameters more widely";
  }
  throw Error(ErrorCode::RankDeficient, msg);
}

}  // namespace

RegressionModel fit(std::span<const ExperimentRun> runs) {
  if (runs.size() < kNumCoefficients) {
    throw Error(ErrorCode::InsufficientData, "insufficient data: need at least " +
                                                 std::to_string(kNumCoefficients) + " runs, got " +
                                                 std::to_string(runs.size()));
  }
  std::vector<ConfigPoint> configs;
  configs.reserve(runs.size());
  for (const auto& run : runs) {
    validate(run);
    configs.push_back(run.config);
  }

  RegressionModel model;
  model.scaler = FeatureScaler::from_configs(configs);
  model.app_name = runs.front().app_name;
  // A constant feature is centred to an all-zero column so the QR below
  // reports the true rank instead of dividing by zero.
  FeatureScaler design_scaler = model.scaler;
  for (double& s : design_scaler.stds) {
    if (s <= 0.0) s = 1.0;
  }

  const auto n = static_cast<Eigen::Index>(runs.size());
  Eigen::MatrixXd design(n, static_cast<Eigen::Index>(kNumCoefficients));
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = scaled_design_row(design_scaler, configs[static_cast<std::size_t>(i)]);
    for (std::size_t j = 0; j < kNumCoefficients; ++j) design(i, static_cast<Eigen::Index>(j)) = row[j];
    target(i) = runs[static_cast<std::size_t>(i)].cpu_total;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(kRankTolerance);
  const auto rank = static_cast<std::size_t>(qr.rank());
  if (rank < kNumCoefficients) throw_rank_deficient(runs, rank);

  const Eigen::VectorXd solution = qr.solve(target);
  for (std::size_t j = 0; j < kNumCoefficients; ++j) {
    model.coefficients[j] = solution(static_cast<Eigen::Index>(j));
  }

  model.training_summary.n_runs = runs.size();
  model.training_summary.mape_percent = evaluate(model, runs).mape;
  return model;
}

long double sum_squared_residuals(const RegressionModel& model, std::span<const ExperimentRun> runs) {
  // Residuals and squares in extended precision, so that an SSE change many
  // orders below the SSE itself (a 1e-3 coefficient nudge) is resolvable.
  long double sse = 0.0L;
  long double carry = 0.0L;
  for (const auto& run : runs) {
    const auto x = features(run.config);
    long double value = model.coefficients[0];
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      const long double z = (static_cast<long double>(x[k]) - model.scaler.means[k]) / model.scaler.stds[k];
      value += static_cast<long double>(model.coefficients[k + 1]) * z;
    }
    const long double r = value - run.cpu_total;
    // Kahan summation.
    const long double term = r * r - carry;
    const long double next = sse + term;
    carry = (next - sse) - term;
    sse = next;
  }
  return sse;
}

}  // namespace mrprov
