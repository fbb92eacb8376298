#include "barronlab/density.hpp"

#include <cmath>
#include <limits>

namespace barronlab {

BinaryDensity BinaryDensity::lift(std::size_t dim, RealFn f) {
  BinaryDensity p;
  p.dim_ = dim;
  p.pair_ = [f = std::move(f)](std::span<const double> x) -> std::array<double, 2> {
    const double v = clamp_unit(f(x));
    return {2.0 - 2.0 * v, 2.0 * v};
  };
  return p;
}

BinaryDensity BinaryDensity::lift(const Classifier& h) {
  return lift(h.dim(), [h](std::span<const double> x) { return static_cast<double>(h(x)); });
}

BinaryDensity BinaryDensity::from_pair(std::size_t dim, PairFn p) {
  BinaryDensity out;
  out.dim_ = dim;
  out.pair_ = std::move(p);
  return out;
}

namespace {

void check_same_dim(const BinaryDensity& p, const BinaryDensity& q) {
  if (p.dim() != q.dim()) throw DomainError("densities differ in dimension");
}

}  // namespace

// The label measure is uniform on {0,1}, so every integral over the product
// space is the average of the two label slices.

Estimate total_mass(const BinaryDensity& p, const Integrator& integrator) {
  return integrate(p.dim(), [&](std::span<const double> x) {
    const auto v = p.pair(x);
    return 0.5 * (v[0] + v[1]);
  }, integrator);
}

Estimate l1_distance(const BinaryDensity& p, const BinaryDensity& q, const Integrator& integrator) {
  check_same_dim(p, q);
  return integrate(p.dim(), [&](std::span<const double> x) {
    const auto a = p.pair(x);
    const auto b = q.pair(x);
    return 0.5 * (std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]));
  }, integrator);
}

Estimate hellinger_squared(const BinaryDensity& p, const BinaryDensity& q,
                           const Integrator& integrator) {
  check_same_dim(p, q);
  return integrate(p.dim(), [&](std::span<const double> x) {
    const auto a = p.pair(x);
    const auto b = q.pair(x);
    const double d0 = std::sqrt(a[0]) - std::sqrt(b[0]);
    const double d1 = std::sqrt(a[1]) - std::sqrt(b[1]);
    return 0.5 * (d0 * d0 + d1 * d1);
  }, integrator);
}

Estimate hellinger(const BinaryDensity& p, const BinaryDensity& q, const Integrator& integrator) {
  const Estimate sq = hellinger_squared(p, q, integrator);
  const double v = std::sqrt(std::max(0.0, sq.value));
  double hw = 0.0;
  if (sq.half_width > 0.0) hw = v > 0.0 ? sq.half_width / (2.0 * v) : std::sqrt(sq.half_width);
  return {v, hw};
}

Estimate kl_divergence(const BinaryDensity& p, const BinaryDensity& q, const Integrator& integrator) {
  check_same_dim(p, q);
  bool infinite = false;
  const Estimate e = integrate(p.dim(), [&](std::span<const double> x) {
    const auto a = p.pair(x);
    const auto b = q.pair(x);
    double s = 0.0;
    for (int k = 0; k < 2; ++k) {
      if (a[k] <= 0.0) continue;
      if (b[k] <= 0.0) {
        infinite = true;
        return 0.0;
      }
      s += a[k] * std::log(a[k] / b[k]);
    }
    return 0.5 * s;
  }, integrator);
  if (infinite) return {std::numeric_limits<double>::infinity(), 0.0};
  return e;
}

double hellinger_from_classifiers(const Classifier& h1, const Classifier& h2,
                                  const DisagreementMethod& method) {
  return std::sqrt(2.0 * disagreement(h1, h2, method).value);
}

double hellinger_from_classifiers(const Classifier& h1, const Classifier& h2) {
  if (h1.as_horizon() && h2.as_horizon())
    return hellinger_from_classifiers(h1, h2, ExactHorizonRule{});
  return hellinger_from_classifiers(h1, h2, GridRule{1024});
}

}  // namespace barronlab
