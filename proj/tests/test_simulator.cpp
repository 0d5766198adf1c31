#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mrprov/error.hpp"
#include "mrprov/experiment.hpp"
#include "mrprov/io.hpp"
#include "mrprov/random.hpp"
#include "mrprov/simulator.hpp"
#include "test_support.hpp"

namespace mrprov {
namespace {

using testing::quadratic_oracle;
using testing::relative_error;

AppProfile noiseless(std::string_view name) {
  AppProfile p = bundled_profile(name);
  p.noise_sigma_fraction = 0.0;
  p.mismatch_amplitude = 0.0;
  return p;
}

TEST(Simulator, ZeroNoiseMatchesGroundTruth) {
  const AppProfile p = noiseless("wordcount_like");
  for (const auto& c : sample_configs(200, ParameterRanges::defaults(), 8)) {
    const ExperimentRun run = simulate_run(p, c, 99);
    EXPECT_LE(relative_error(run.cpu_total, quadratic_oracle(p.true_coefficients, c)), 1e-12);
    EXPECT_EQ(run.app_name, "wordcount_like");
    EXPECT_EQ(run.config, c);
  }
}

TEST(Simulator, InterceptOnlyProfile) {
  AppProfile p = noiseless("wordcount_like");
  p.true_coefficients = {100, 0, 0, 0, 0, 0, 0, 0, 0};
  for (const auto& c : sample_configs(20, ParameterRanges::defaults(), 1)) {
    EXPECT_EQ(simulate_run(p, c, 5).cpu_total, 100.0);
  }
}

TEST(Simulator, NoiseMeanWithinThreeStandardErrors) {
  AppProfile p = bundled_profile("wordcount_like");
  p.noise_sigma_fraction = 0.05;
  p.mismatch_amplitude = 0.0;
  const ConfigPoint c{16, 8, 128.0, 2048.0};
  const double truth = quadratic_oracle(p.true_coefficients, c);
  std::vector<double> totals;
  for (std::uint64_t i = 0; i < 10000; ++i) totals.push_back(simulate_run(p, c, mix_seed(31337, i)).cpu_total);
  double mean = 0.0;
  for (double t : totals) mean += t;
  mean /= static_cast<double>(totals.size());
  double var = 0.0;
  for (double t : totals) var += (t - mean) * (t - mean);
  var /= static_cast<double>(totals.size() - 1);
  const double se = std::sqrt(var / static_cast<double>(totals.size()));
  // Truncation at +-4 sd is symmetric, so the mean stays at the noiseless value.
  EXPECT_LT(std::abs(mean - truth), 3.0 * se);
  const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
  EXPECT_GE(*lo, truth * (1.0 - 4.0 * 0.05) * (1 - 1e-12));
  EXPECT_LE(*hi, truth * (1.0 + 4.0 * 0.05) * (1 + 1e-12));
}

TEST(Simulator, TraceIntegratesToTotal) {
  for (const auto& name : bundled_profile_names()) {
    const AppProfile p = bundled_profile(name);
    const auto runs = batch_simulate(p, sample_configs(100, ParameterRanges::defaults(), 3), 3);
    for (const auto& run : runs) {
      ASSERT_TRUE(run.trace);
      EXPECT_EQ(run.trace->size(), p.trace_shape.samples_per_run);
      EXPECT_LT(relative_error(run.trace->integral(), run.cpu_total), 1e-3);
      EXPECT_NO_THROW(validate(run));
    }
  }
}

TEST(Simulator, TraceHasTwoPlateaus) {
  AppProfile p = noiseless("wordcount_like");
  p.trace_shape = {0.7, 40, 0.0};
  const auto run = simulate_run(p, {8, 4, 64.0, 512.0}, 1);
  const auto v = run.trace->values();
  // Without a ramp the map half carries exactly map_fraction of the CPU.
  double first = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    total += v[k];
    if (k < v.size() / 2) first += v[k];
  }
  EXPECT_NEAR(first / total, 0.7, 1e-12);
  EXPECT_EQ(v[0], v[19]);
  EXPECT_EQ(v[20], v[39]);
  EXPECT_GT(v[0], v[39]);
}

TEST(Simulator, MismatchPerturbsOnlyInInputSize) {
  AppProfile p = noiseless("wordcount_like");
  p.mismatch_amplitude = 0.2;
  // sin(pi * log2(x)) vanishes at powers of two and peaks at 2^(k + 1/2).
  const ConfigPoint at_power{4, 4, 64.0, 1024.0};
  EXPECT_LE(relative_error(simulate_run(p, at_power, 1).cpu_total, quadratic_oracle(p.true_coefficients, at_power)),
            1e-12);
  const ConfigPoint at_peak{4, 4, 64.0, std::exp2(10.5)};
  EXPECT_LE(relative_error(simulate_run(p, at_peak, 1).cpu_total, 1.2 * quadratic_oracle(p.true_coefficients, at_peak)),
            1e-12);
}

TEST(Simulator, DeterministicAndPerIndexSeeded) {
  const AppProfile p = bundled_profile("logparse_like");
  const auto configs = sample_configs(30, ParameterRanges::defaults(), 4);
  const auto a = batch_simulate(p, configs, 77);
  EXPECT_EQ(a, batch_simulate(p, configs, 77));
  EXPECT_NE(a, batch_simulate(p, configs, 78));
  for (std::size_t i = 0; i < configs.size(); ++i) EXPECT_EQ(a[i], simulate_run(p, configs[i], mix_seed(77, i)));
  EXPECT_TRUE(batch_simulate(p, {}, 77).empty());
}

TEST(Simulator, ReorderingConfigsPermutesNoiselessOutputs) {
  const AppProfile p = noiseless("dissimilar");
  auto configs = sample_configs(40, ParameterRanges::defaults(), 6);
  const auto base = batch_simulate(p, configs, 1);
  std::vector<std::size_t> perm(configs.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::mt19937_64 gen(3);
  std::shuffle(perm.begin(), perm.end(), gen);
  std::vector<ConfigPoint> shuffled;
  for (auto i : perm) shuffled.push_back(configs[i]);
  const auto out = batch_simulate(p, shuffled, 1);
  for (std::size_t k = 0; k < perm.size(); ++k) EXPECT_EQ(out[k], base[perm[k]]);
}

TEST(Simulator, NonPositiveGroundTruth) {
  AppProfile p = noiseless("wordcount_like");
  p.true_coefficients = {-1e9, 0, 0, 0, 0, 0, 0, 0, 0};
  try {
    simulate_run(p, {1, 1, 1, 1}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveGroundTruth);
  }
  std::vector<ConfigPoint> configs{{1, 1, 1, 1}, {2, 2, 2, 2}};
  try {
    batch_simulate(p, configs, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveGroundTruth);
    EXPECT_NE(std::string(e.what()).find("run 0"), std::string::npos);
  }
}

TEST(Profile, MinimumOverBoxMatchesGridSearch) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ParameterRanges r;
  r.map = {1, 12};
  r.reduce = {2, 9};
  r.fs_size = {3.0, 40.0};
  r.in_size = {1.0, 30.0};
  for (int trial = 0; trial < 40; ++trial) {
    AppProfile p = bundled_profile("wordcount_like");
    for (double& a : p.true_coefficients) a = 10.0 * u(gen);
    // Oracle: dense search; integer parameters exhaustively.
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t m = r.map.lo; m <= r.map.hi; ++m) {
      for (std::int64_t q = r.reduce.lo; q <= r.reduce.hi; ++q) {
        for (int i = 0; i <= 400; ++i) {
          const double fsz = r.fs_size.lo + (r.fs_size.hi - r.fs_size.lo) * i / 400.0;
          const ConfigPoint c{m, q, fsz, r.in_size.lo};
          best = std::min(best, quadratic_oracle(p.true_coefficients, c) -
                                    p.true_coefficients[4] * c.in_size - p.true_coefficients[8] * c.in_size * c.in_size);
        }
      }
    }
    double in_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 4000; ++i) {
      const double x = r.in_size.lo + (r.in_size.hi - r.in_size.lo) * i / 4000.0;
      in_best = std::min(in_best, p.true_coefficients[4] * x + p.true_coefficients[8] * x * x);
    }
    const double exact = min_polynomial_over(p, r);
    EXPECT_LE(exact, best + in_best + 1e-9);
    EXPECT_GT(exact, best + in_best - 0.05);
  }
}

TEST(Profile, BundledProfilesAreValidAndMatchDataFiles) {
  for (const auto& name : bundled_profile_names()) {
    const AppProfile p = bundled_profile(name);
    EXPECT_NO_THROW(validate(p));
    EXPECT_EQ(io::read_profile(testing::data_dir() / "profiles" / (name + ".json")), p) << name;
  }
  EXPECT_EQ(io::read_ranges(testing::data_dir() / "ranges" / "default.json"), ParameterRanges::defaults());
  EXPECT_THROW(bundled_profile("nope"), Error);
}

TEST(Profile, LogparseIsWordcountScaled) {
  const auto wc = bundled_profile("wordcount_like").true_coefficients;
  const auto lp = bundled_profile("logparse_like").true_coefficients;
  for (std::size_t j = 0; j < wc.size(); ++j) EXPECT_LT(relative_error(lp[j], 1.05 * wc[j]), 1e-12);
}

TEST(Profile, ValidationRejectsBadFields) {
  auto expect_bad = [](AppProfile p) { EXPECT_THROW(validate(p), Error); };
  AppProfile base = bundled_profile("wordcount_like");
  AppProfile p = base;
  p.trace_shape.map_fraction = 1.0;
  expect_bad(p);
  p = base;
  p.trace_shape.samples_per_run = 3;
  expect_bad(p);
  p = base;
  p.noise_sigma_fraction = -0.1;
  expect_bad(p);
  p = base;
  p.mismatch_amplitude = 1.0;
  expect_bad(p);
  p = base;
  p.app_name = "a,b";
  expect_bad(p);
  p = base;
  p.true_coefficients[3] = -400.0;  // FS term goes negative inside the default box
  try {
    validate(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveGroundTruth);
  }
}

}  // namespace
}  // namespace mrprov
