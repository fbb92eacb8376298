#include "barronlab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace barronlab {

GaussRule gauss_legendre(int order) {
  if (order < 1) throw RangeError("gauss_legendre: order must be positive");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_order starting from the Chebyshev-like guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    // map [-1,1] -> [0,1]
    rule.nodes[i] = 0.5 * (1.0 - z);
    rule.nodes[order - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[i] = 0.5 * w;
    rule.weights[order - 1 - i] = 0.5 * w;
  }
  return rule;
}

GaussRule composite_gauss(double lo, double hi, int panels, int order) {
  if (panels < 1) throw RangeError("composite_gauss: panels must be positive");
  const GaussRule base = gauss_legendre(order);
  GaussRule out;
  out.nodes.reserve(static_cast<std::size_t>(panels) * order);
  out.weights.reserve(out.nodes.capacity());
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    for (int k = 0; k < order; ++k) {
      out.nodes.push_back(a + width * base.nodes[k]);
      out.weights.push_back(width * base.weights[k]);
    }
  }
  return out;
}

std::string describe(const Integrator& integrator) {
  if (const auto* g = std::get_if<GridRule>(&integrator)) return fmt::format("grid({})", g->resolution);
  const auto& mc = std::get<MonteCarloRule>(integrator);
  return fmt::format("monte_carlo({}, seed={})", mc.samples, mc.seed);
}

namespace {

// Sum of w(node) * f(node) over a tensor product of a 1-D rule.
double tensor_sum(std::size_t dim, const RealFn& f, const std::vector<double>& nodes,
                  const std::vector<double>& weights) {
  if (dim == 0) {
    Point empty;
    return f(empty);
  }
  const std::size_t n = nodes.size();
  std::vector<std::size_t> idx(dim, 0);
  Point x(dim, nodes[0]);
  double total = 0.0;
  while (true) {
    // innermost axis is the last coordinate
    double inner = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      x[dim - 1] = nodes[k];
      inner += weights[k] * f(x);
    }
    double w = 1.0;
    for (std::size_t a = 0; a + 1 < dim; ++a) w *= weights[idx[a]];
    total += w * inner;
    std::size_t a = dim - 1;
    while (a > 0) {
      --a;
      if (++idx[a] < n) {
        x[a] = nodes[idx[a]];
        break;
      }
      idx[a] = 0;
      x[a] = nodes[0];
      if (a == 0) return total;
    }
    if (dim == 1) return total;
  }
}

}  // namespace

Estimate integrate(std::size_t dim, const RealFn& f, const Integrator& integrator) {
  if (const auto* g = std::get_if<GridRule>(&integrator)) {
    if (g->resolution < 1) throw RangeError("grid resolution must be positive");
    const int r = g->resolution;
    std::vector<double> nodes(r), weights(r, 1.0 / r);
    for (int i = 0; i < r; ++i) nodes[i] = (i + 0.5) / r;
    return {tensor_sum(dim, f, nodes, weights), 0.0};
  }
  const auto& mc = std::get<MonteCarloRule>(integrator);
  if (mc.samples < 2) throw RangeError("monte carlo needs at least two samples");
  Rng rng = make_rng(mc.seed, 0x1A7E);
  Point x(dim);
  double mean = 0.0, m2 = 0.0;
  for (std::int64_t i = 0; i < mc.samples; ++i) {
    for (auto& v : x) v = uniform01(rng);
    const double y = f(x);
    const double delta = y - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (y - mean);
  }
  const double var = m2 / static_cast<double>(mc.samples - 1);
  return {mean, kZ95 * std::sqrt(var / static_cast<double>(mc.samples))};
}

double integrate_gauss(std::size_t dim, const RealFn& f, int panels, int order) {
  const GaussRule rule = composite_gauss(0.0, 1.0, panels, order);
  return tensor_sum(dim, f, rule.nodes, rule.weights);
}

double binomial_half_width(double p, std::int64_t n) {
  if (n <= 0) return 0.0;
  return kZ95 * std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace barronlab
