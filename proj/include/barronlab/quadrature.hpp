#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "barronlab/common.hpp"

namespace barronlab {

/// Gauss-Legendre rule of the given order mapped to [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int order);

/// Composite Gauss-Legendre rule on [lo, hi] with `panels` equal panels.
GaussRule composite_gauss(double lo, double hi, int panels, int order);

/// Tensor-product midpoint rule with `resolution` nodes per axis.
struct GridRule {
  int resolution = 1024;
};

/// Plain Monte Carlo over the unit cube; reports a 95% half-width.
struct MonteCarloRule {
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
};

using Integrator = std::variant<GridRule, MonteCarloRule>;

struct Estimate {
  double value = 0.0;
  double half_width = 0.0;  // zero for deterministic rules
};

inline constexpr double kZ95 = 1.959963984540054;

std::string describe(const Integrator& integrator);

/// Integral of f over [0,1]^dim.
Estimate integrate(std::size_t dim, const RealFn& f, const Integrator& integrator);

/// Tensor Gauss-Legendre integral over [0,1]^dim (composite, panels per axis).
double integrate_gauss(std::size_t dim, const RealFn& f, int panels, int order);

/// 95% binomial half-width for a proportion estimated from n draws.
double binomial_half_width(double p, std::int64_t n);

}  // namespace barronlab
