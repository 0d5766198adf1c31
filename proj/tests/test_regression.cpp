#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "mrprov/error.hpp"
#include "mrprov/error_report.hpp"
#include "mrprov/experiment.hpp"
#include "mrprov/regression.hpp"
#include "test_support.hpp"

namespace mrprov {
namespace {

using testing::quadratic_oracle;
using testing::relative_error;

constexpr Coefficients kAlpha = {2.0e4, 150.0, 220.0, -40.0, 95.0, 2.0, 4.5, 0.12, 0.0015};

std::vector<ExperimentRun> runs_from(const Coefficients& alpha, const std::vector<ConfigPoint>& configs,
                                     double noise = 0.0, std::uint64_t seed = 7) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> eps(0.0, noise > 0.0 ? noise : 1.0);
  std::vector<ExperimentRun> runs;
  for (const auto& c : configs) {
    const double truth = quadratic_oracle(alpha, c);
    runs.push_back({c, noise > 0.0 ? truth * (1.0 + eps(gen)) : truth, std::nullopt, "oracle"});
  }
  return runs;
}

TEST(Fit, NoiselessRecoveryOnTrainingSet) {
  const auto configs = sample_configs(100, ParameterRanges::defaults(), 42);
  const auto runs = runs_from(kAlpha, configs);
  const RegressionModel model = fit(runs);
  for (const auto& run : runs) {
    EXPECT_LT(relative_error(predict(model, run.config).value, run.cpu_total), 1e-8);
  }
  EXPECT_LT(model.training_summary.mape_percent, 1e-6);
  EXPECT_EQ(model.training_summary.n_runs, 100u);
  EXPECT_EQ(model.app_name, "oracle");
}

TEST(Fit, NoiselessRecoveryOfRawCoefficients) {
  const auto runs = runs_from(kAlpha, sample_configs(100, ParameterRanges::defaults(), 3));
  const Coefficients raw = raw_coefficients(fit(runs));
  for (std::size_t j = 0; j < kNumCoefficients; ++j) {
    EXPECT_LT(relative_error(raw[j], kAlpha[j]), 1e-6) << kTermNames[j];
  }
}

TEST(Predict, HeldOutMatchesGroundTruth) {
  const auto model = fit(runs_from(kAlpha, sample_configs(100, ParameterRanges::defaults(), 42)));
  for (const auto& c : sample_configs(50, ParameterRanges::defaults(), 9001)) {
    EXPECT_LT(relative_error(predict(model, c).value, quadratic_oracle(kAlpha, c)), 1e-6);
  }
}

TEST(Fit, InsufficientData) {
  const auto runs = runs_from(kAlpha, sample_configs(8, ParameterRanges::defaults(), 1));
  try {
    fit(runs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientData);
    EXPECT_NE(std::string(e.what()).find("insufficient data"), std::string::npos);
  }
}

TEST(Fit, ConstantMapCountIsRankDeficient) {
  ParameterRanges ranges;
  ranges.map = {4, 4};
  const auto configs = sample_configs(100, ranges, 5);
  // Map and Map^2 columns are constant, hence multiples of the intercept.
  for (const auto& c : configs) {
    EXPECT_EQ(design_row(c)[1], 4.0);
    EXPECT_EQ(design_row(c)[5], 16.0);
  }
  try {
    fit(runs_from(kAlpha, configs));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("map_count"), std::string::npos) << msg;
    EXPECT_EQ(msg.find("reduce_count"), std::string::npos) << msg;
  }
}

TEST(Fit, TwoDistinctValuesIsRankDeficient) {
  auto configs = sample_configs(100, ParameterRanges::defaults(), 6);
  for (std::size_t i = 0; i < configs.size(); ++i) configs[i].reduce_count = i % 2 ? 3 : 8;
  try {
    fit(runs_from(kAlpha, configs));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
    EXPECT_NE(std::string(e.what()).find("reduce_count"), std::string::npos);
  }
}

TEST(Fit, ThreeDistinctValuesSuffice) {
  auto configs = sample_configs(100, ParameterRanges::defaults(), 6);
  for (std::size_t i = 0; i < configs.size(); ++i) configs[i].reduce_count = 2 + static_cast<std::int64_t>(i % 3);
  const auto runs = runs_from(kAlpha, configs);
  EXPECT_LT(fit(runs).training_summary.mape_percent, 1e-6);
}

TEST(Predict, InterceptOnly) {
  RegressionModel model;
  model.coefficients = {10, 0, 0, 0, 0, 0, 0, 0, 0};
  for (const ConfigPoint& c : {ConfigPoint{1, 1, 1, 1}, ConfigPoint{64, 32, 256, 16384}}) {
    EXPECT_EQ(predict(model, c), (Prediction{10.0, false}));
  }
}

TEST(Predict, LinearMapTerm) {
  RegressionModel model;
  model.coefficients = {1, 1, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(predict(model, {3, 1, 1, 1}).value, 4.0);
}

TEST(Predict, NegativeValuesAreClampedAndFlagged) {
  RegressionModel model;
  model.coefficients = {-5, 0, 0, 0, 0, 0, 0, 0, 0};
  const Prediction p = predict(model, {1, 1, 1, 1});
  EXPECT_EQ(p.value, 0.0);
  EXPECT_TRUE(p.clamped);
  EXPECT_EQ(evaluate_polynomial(model, {1, 1, 1, 1}), -5.0);
}

TEST(Predict, BitIdenticalAcrossCalls) {
  const auto model = fit(runs_from(kAlpha, sample_configs(60, ParameterRanges::defaults(), 11), 0.05));
  for (const auto& c : sample_configs(20, ParameterRanges::defaults(), 12)) {
    const double first = predict(model, c).value;
    EXPECT_EQ(std::bit_cast<std::uint64_t>(first), std::bit_cast<std::uint64_t>(predict(model, c).value));
  }
}

TEST(Fit, Deterministic) {
  const auto runs = runs_from(kAlpha, sample_configs(100, ParameterRanges::defaults(), 13), 0.03);
  EXPECT_EQ(fit(runs), fit(runs));
}

TEST(Scaler, RoundTripProperty) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> mag(-6.0, 9.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    FeatureScaler scaler;
    FeatureVector x;
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      scaler.means[k] = unit(gen) * std::pow(10.0, mag(gen));
      scaler.stds[k] = std::pow(10.0, mag(gen));
      x[k] = scaler.means[k] + unit(gen) * scaler.stds[k] * 3.0;
    }
    const FeatureVector back = scaler.destandardize(scaler.standardize(x));
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      // Relative to the larger of the value and the scaler's magnitude.
      const double scale = std::max({std::abs(x[k]), std::abs(scaler.means[k]), scaler.stds[k]});
      EXPECT_LE(std::abs(back[k] - x[k]), 1e-12 * scale);
    }
  }
}

TEST(Scaler, ConstantColumnHasZeroStd) {
  std::vector<ConfigPoint> configs(10, ConfigPoint{4, 2, 0.1, 3.3});
  const auto scaler = FeatureScaler::from_configs(configs);
  for (double s : scaler.stds) EXPECT_EQ(s, 0.0);
}

TEST(Fit, LeastSquaresOptimalityProbe) {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto runs = runs_from(kAlpha, sample_configs(100, ParameterRanges::defaults(), gen()), 0.05, gen());
    const RegressionModel model = fit(runs);
    const long double sse = sum_squared_residuals(model, runs);
    for (std::size_t j = 0; j < kNumCoefficients; ++j) {
      for (double delta : {1e-3, -1e-3}) {
        RegressionModel perturbed = model;
        perturbed.coefficients[j] += delta;
        EXPECT_GE(sum_squared_residuals(perturbed, runs), sse) << "coefficient " << j;
      }
    }
  }
}

TEST(Model, ValidateRejectsBadScaler) {
  RegressionModel model;
  EXPECT_NO_THROW(validate(model));
  model.scaler.stds[3] = 0.0;
  EXPECT_THROW(validate(model), Error);
  model.scaler.stds[3] = 1.0;
  model.coefficients[2] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(validate(model), Error);
}

}  // namespace
}  // namespace mrprov
