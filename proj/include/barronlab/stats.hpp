#pragma once

#include <utility>
#include <vector>

namespace barronlab {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of ln(error) on ln(m). Needs >= 3 points, distinct m,
/// and positive errors (DegenerateError otherwise).
LogLogFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

/// Same fit without the point-count requirement (>= 2 points).
LogLogFit fit_line(const std::vector<std::pair<double, double>>& xy);

double median(std::vector<double> values);

}  // namespace barronlab
