#include <gtest/gtest.h>

#include <regex>

#include "mrprov/error.hpp"
#include "mrprov/error_report.hpp"
#include "mrprov/experiment.hpp"
#include "mrprov/plot.hpp"
#include "mrprov/simulator.hpp"
#include "test_support.hpp"

namespace mrprov {
namespace {

using testing::count_occurrences;

TEST(Plot, ActualVsModelHasTwoPolylines) {
  const auto runs = batch_simulate(bundled_profile("wordcount_like"),
                                   sample_configs(100, ParameterRanges::defaults(), 42), 42);
  const RegressionModel m = fit(runs);
  std::vector<double> actual;
  std::vector<double> predicted;
  for (const auto& r : runs) {
    actual.push_back(r.cpu_total);
    predicted.push_back(predict(m, r.config).value);
  }
  const std::string svg = plot::actual_vs_model_svg(actual, predicted, "fit");
  EXPECT_EQ(count_occurrences(svg, "<polyline"), 2u);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  // 100 points per line.
  const auto first = svg.find("points=\"");
  const auto end = svg.find('"', first + 8);
  EXPECT_EQ(count_occurrences(svg.substr(first, end - first), ","), 100u);
  EXPECT_EQ(svg, plot::actual_vs_model_svg(actual, predicted, "fit"));
}

TEST(Plot, PerfectModelResidualIsFlatZero) {
  std::vector<Residual> residuals;
  for (std::size_t i = 0; i < 10; ++i) residuals.push_back({i, 5.0, 5.0, 0.0});
  const std::string svg = plot::residual_svg(residuals, 0.0, "residual");
  EXPECT_NE(svg.find("MAPE = 0.00%"), std::string::npos);
  EXPECT_EQ(count_occurrences(svg, "<polyline"), 1u);
  // Every error point and the mean line sit on the same (zero) height.
  std::smatch m;
  const std::string line = svg.substr(svg.find("<line class=\"mean\""));
  ASSERT_TRUE(std::regex_search(line, m, std::regex("y1=\"([0-9.]+)\"")));
  const std::string zero_y = m[1];
  const std::string pts = svg.substr(svg.find("points=\""));
  EXPECT_EQ(count_occurrences(pts.substr(0, pts.find("\"/>")), "," + zero_y), 10u);
}

TEST(Plot, RejectsEmptyInput) {
  EXPECT_THROW(plot::residual_svg({}, 0.0, "x"), Error);
  EXPECT_THROW(plot::actual_vs_model_svg({}, {}, "x"), Error);
}

TEST(Plot, EscapesTitle) {
  const std::vector<double> v{1, 2};
  EXPECT_NE(plot::actual_vs_model_svg(v, v, "a<b & c").find("a&lt;b &amp; c"), std::string::npos);
}

}  // namespace
}  // namespace mrprov
