#pragma once

#include <array>
#include <functional>
#include <span>

#include "barronlab/classifiers.hpp"
#include "barronlab/quadrature.hpp"

namespace barronlab {

/// Psi(x) = min{1, max{0, x}}.
inline double clamp_unit(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

/// Density on [0,1]^d x {0,1} w.r.t. Lebesgue x uniform{0,1}:
/// p(x, 1) = 2 Psi(f(x)), p(x, 0) = 2 - 2 Psi(f(x)).
class BinaryDensity {
 public:
  using PairFn = std::function<std::array<double, 2>(std::span<const double>)>;

  static BinaryDensity lift(std::size_t dim, RealFn f);
  static BinaryDensity lift(const Classifier& h);
  /// Raw evaluator (label 0, label 1), no invariants enforced; used for negative controls.
  static BinaryDensity from_pair(std::size_t dim, PairFn p);

  std::size_t dim() const { return dim_; }
  double operator()(std::span<const double> x, int label) const { return pair_(x)[label ? 1 : 0]; }
  /// (p(x,0), p(x,1)) from a single evaluation of the source.
  std::array<double, 2> pair(std::span<const double> x) const { return pair_(x); }

 private:
  std::size_t dim_ = 0;
  PairFn pair_;
};

/// Integral of p over the product space (1 for every lift).
Estimate total_mass(const BinaryDensity& p, const Integrator& integrator);

Estimate l1_distance(const BinaryDensity& p, const BinaryDensity& q, const Integrator& integrator);

/// d_H^2(p, q) = int (sqrt p - sqrt q)^2.
Estimate hellinger_squared(const BinaryDensity& p, const BinaryDensity& q, const Integrator& integrator);

/// d_H(p, q); the half-width is propagated from the squared estimate.
Estimate hellinger(const BinaryDensity& p, const BinaryDensity& q, const Integrator& integrator);

/// D(p || q) = int p ln(p / q), with 0 ln(0/q) = 0 and +inf when p > 0 = q at a node.
Estimate kl_divergence(const BinaryDensity& p, const BinaryDensity& q, const Integrator& integrator);

/// sqrt(2 * disagreement(h1, h2)); exact_horizon for two horizon classifiers,
/// grid(1024) otherwise unless a method is given.
double hellinger_from_classifiers(const Classifier& h1, const Classifier& h2);
double hellinger_from_classifiers(const Classifier& h1, const Classifier& h2,
                                  const DisagreementMethod& method);

}  // namespace barronlab
