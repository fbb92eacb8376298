#include "barronlab/stats.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "barronlab/common.hpp"

namespace barronlab {

LogLogFit fit_line(const std::vector<std::pair<double, double>>& xy) {
  const std::size_t n = xy.size();
  if (n < 2) throw DegenerateError("a line fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw DegenerateError("all abscissae are equal");
  LogLogFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (const auto& [x, y] : xy) {
      const double r = y - (fit.intercept + fit.slope * x);
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

LogLogFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DegenerateError("log-log fit needs at least three points");
  std::vector<std::pair<double, double>> xy;
  xy.reserve(points.size());
  for (const auto& [m, err] : points) {
    if (!(m > 0.0) || !(err > 0.0))
      throw DegenerateError(fmt::format("log-log fit needs positive values, got ({}, {})", m, err));
    xy.emplace_back(std::log(m), std::log(err));
  }
  return fit_line(xy);
}

double median(std::vector<double> values) {
  if (values.empty()) throw DegenerateError("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace barronlab
