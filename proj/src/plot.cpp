#include "mrprov/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "mrprov/error.hpp"

namespace mrprov::plot {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Maps experiment numbers [1, count] and values [lo, hi] onto the plot area.
struct Frame {
  double x_max;
  double y_lo;
  double y_hi;

  double x(double experiment) const {
    const double span = x_max > 1.0 ? x_max - 1.0 : 1.0;
    return kLeft + (experiment - 1.0) / span * (kWidth - kLeft - kRight);
  }
  double y(double value) const {
    return kHeight - kBottom - (value - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
  }
};

Frame make_frame(std::size_t count, double lo, double hi) {
  if (hi <= lo) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  return {static_cast<double>(count), lo > 0.0 && lo - pad < 0.0 ? 0.0 : lo - pad, hi + pad};
}

std::string header(std::string_view title) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" +
                  fmt("%.0f", kHeight) + "\" viewBox=\"0 0 " + fmt("%.0f", kWidth) + " " + fmt("%.0f", kHeight) +
                  "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" + fmt("%.0f", kHeight) +
       "\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt("%.1f", kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">" + escape(title) + "</text>\n";
  return s;
}

std::string axes(const Frame& f, std::string_view y_label) {
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  std::string s;
  s += "<g stroke=\"black\" stroke-width=\"1\">\n";
  s += "<path d=\"M" + fmt("%.2f", x0) + " " + fmt("%.2f", kTop) + " L" + fmt("%.2f", x0) + " " +
       fmt("%.2f", y0) + " L" + fmt("%.2f", x1) + " " + fmt("%.2f", y0) + "\" fill=\"none\"/>\n";
  s += "</g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = f.y_lo + (f.y_hi - f.y_lo) * k / 4.0;
    s += "<text x=\"" + fmt("%.2f", x0 - 6) + "\" y=\"" + fmt("%.2f", f.y(v) + 4) +
         "\" text-anchor=\"end\">" + fmt("%.4g", v) + "</text>\n";
  }
  s += "<text x=\"" + fmt("%.2f", (x0 + x1) / 2) + "\" y=\"" + fmt("%.2f", kHeight - 12) +
       "\" text-anchor=\"middle\">experiment</text>\n";
  s += "<text x=\"16\" y=\"" + fmt("%.2f", (kTop + y0) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       fmt("%.2f", (kTop + y0) / 2) + ")\">" + escape(y_label) + "</text>\n";
  s += "</g>\n";
  return s;
}

std::string polyline(const Frame& f, std::span<const double> xs, std::span<const double> ys, const char* color,
                     const char* label) {
  std::string pts;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (i) pts += ' ';
    pts += fmt("%.2f", f.x(xs[i])) + "," + fmt("%.2f", f.y(ys[i]));
  }
  return "<polyline class=\"" + std::string(label) + "\" fill=\"none\" stroke=\"" + color +
         "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
}

std::string legend_entry(double y, const char* color, const char* label) {
  return "<g font-family=\"sans-serif\" font-size=\"12\"><line x1=\"" + fmt("%.2f", kWidth - 170) + "\" y1=\"" +
         fmt("%.2f", y) + "\" x2=\"" + fmt("%.2f", kWidth - 145) + "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"" +
         color + "\" stroke-width=\"2\"/><text x=\"" + fmt("%.2f", kWidth - 140) + "\" y=\"" + fmt("%.2f", y + 4) +
         "\">" + label + "</text></g>\n";
}

}  // namespace

std::string actual_vs_model_svg(std::span<const double> actual, std::span<const double> predicted,
                                std::string_view title) {
  if (actual.empty() || actual.size() != predicted.size()) {
    throw Error(ErrorCode::InvalidArgument, "plot: actual and predicted must be non-empty and equal length");
  }
  double lo = std::min(*std::min_element(actual.begin(), actual.end()),
                       *std::min_element(predicted.begin(), predicted.end()));
  double hi = std::max(*std::max_element(actual.begin(), actual.end()),
                       *std::max_element(predicted.begin(), predicted.end()));
  const Frame f = make_frame(actual.size(), lo, hi);
  std::vector<double> xs(actual.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i + 1);

  std::string s = header(title) + axes(f, "CPU cost (ticks)");
  s += polyline(f, xs, actual, "#1f77b4", "actual");
  s += polyline(f, xs, predicted, "#d62728", "model");
  s += legend_entry(kTop + 8, "#1f77b4", "actual");
  s += legend_entry(kTop + 26, "#d62728", "model");
  s += "</svg>\n";
  return s;
}

std::string residual_svg(std::span<const Residual> residuals, double mape, std::string_view title) {
  if (residuals.empty()) throw Error(ErrorCode::InvalidArgument, "plot: no residuals to draw");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : residuals) {
    xs.push_back(static_cast<double>(r.index + 1));
    ys.push_back(r.ape_percent);
  }
  const double hi = std::max(*std::max_element(ys.begin(), ys.end()), mape);
  const double x_max = std::max(*std::max_element(xs.begin(), xs.end()), 1.0);
  Frame f = make_frame(static_cast<std::size_t>(x_max), 0.0, hi);
  f.y_lo = 0.0;

  std::string s = header(title) + axes(f, "absolute error (%)");
  s += polyline(f, xs, ys, "#1f77b4", "error");
  const double ym = f.y(mape);
  s += "<line class=\"mean\" x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", ym) + "\" x2=\"" +
       fmt("%.2f", kWidth - kRight) + "\" y2=\"" + fmt("%.2f", ym) +
       "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
  s += "<text class=\"mean-label\" x=\"" + fmt("%.2f", kWidth - kRight - 4) + "\" y=\"" + fmt("%.2f", ym - 6) +
       "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d62728\">MAPE = " +
       fmt("%.2f", mape) + "%</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace mrprov::plot
