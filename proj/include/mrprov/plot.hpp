#pragma once

#include <span>
#include <string>
#include <string_view>

#include "mrprov/error_report.hpp"

namespace mrprov::plot {

/// Actual and modelled CPU cost per experiment: exactly two <polyline>
/// elements, x = experiment number (1-based).
std::string actual_vs_model_svg(std::span<const double> actual, std::span<const double> predicted,
                                std::string_view title);

/// Absolute percent error per experiment as one polyline, plus a
/// horizontal line at `mape` labelled "MAPE = X.XX%".
std::string residual_svg(std::span<const Residual> residuals, double mape, std::string_view title);

}  // namespace mrprov::plot
