#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "barronlab/common.hpp"

namespace barronlab {

using Frequency = std::vector<int>;
using Complex = std::complex<double>;

/// Finite Fourier sum f(x) = sum_n c_n exp(2 pi i <n/2, x>) on [0,1]^d.
///
/// Invariants checked on construction: Hermitian symmetry c_{-n} = conj(c_n)
/// (exact), and sum_n (1 + |n|) |c_n| <= kappa_rep * budget. Immutable.
class BarronFourierRep {
 public:
  using CoeffMap = std::map<Frequency, Complex>;

  static BarronFourierRep create(std::size_t dim, double budget, CoeffMap coeffs,
                                 double kappa_rep = 1.0);

  std::size_t dim() const { return dim_; }
  double budget() const { return budget_; }
  double kappa_rep() const { return kappa_rep_; }
  const CoeffMap& coeffs() const { return coeffs_; }

  /// Throws DomainError outside [0,1]^d.
  double operator()(std::span<const double> x) const;

  /// Complex value without the domain check; used by tests and the oracle paths.
  Complex eval_complex(std::span<const double> x) const;

 private:
  BarronFourierRep() = default;

  struct Term {
    std::vector<double> freq;
    Complex c;
  };

  std::size_t dim_ = 0;
  double budget_ = 0.0;
  double kappa_rep_ = 1.0;
  CoeffMap coeffs_;
  std::vector<Term> terms_;
  // One term per conjugate pair (coefficient doubled) plus the constant term.
  std::vector<Term> half_terms_;
};

/// sum_n (1 + |n|_2) |c_n|.
double weighted_fourier_moment(const BarronFourierRep& rep);
double weighted_fourier_moment(const BarronFourierRep::CoeffMap& coeffs);

/// sum_{n != 0} |c_n|.
double offset_l1_mass(const BarronFourierRep::CoeffMap& coeffs);

/// Random boundary function: constant term 1/2 plus `num_terms` Hermitian pairs
/// with frequencies in [-max_freq, max_freq]^d. Off-constant l1 mass stays
/// <= 1/2 and the weighted moment <= budget, so values stay in [0,1].
BarronFourierRep sample_boundary_rep(std::size_t dim, double budget, int num_terms, int max_freq,
                                     std::uint64_t seed);

nlohmann::json to_json(const BarronFourierRep& rep);
BarronFourierRep barron_rep_from_json(const nlohmann::json& j);

}  // namespace barronlab
