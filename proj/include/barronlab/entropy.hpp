#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "barronlab/barron.hpp"
#include "barronlab/bump.hpp"
#include "barronlab/common.hpp"

namespace barronlab {

// ------------------------------------------------------------ packings

struct CloudMetric {
  enum class Kind { L1Grid, LinfGrid };
  Kind kind = Kind::L1Grid;
  int resolution = 256;
};

/// Finite set of functions together with its pairwise distance matrix.
class FunctionCloud {
 public:
  /// Validates symmetry, zero diagonal and nonnegativity.
  static FunctionCloud from_matrix(std::vector<std::vector<double>> distances);
  /// Distances by a midpoint grid on [0,1]^dim.
  static FunctionCloud from_functions(std::size_t dim, const std::vector<RealFn>& members,
                                      CloudMetric metric);
  /// Exact disjoint-support distances.
  static FunctionCloud from_bump_members(const std::vector<BumpMember>& members);

  std::size_t size() const { return dist_.size(); }
  double distance(std::size_t i, std::size_t j) const { return dist_[i][j]; }

 private:
  std::vector<std::vector<double>> dist_;
};

/// Greedy maximal eps-packing in member-index order: selected members are
/// pairwise > eps apart and every other member is within eps of one of them.
std::vector<std::size_t> greedy_packing(const FunctionCloud& cloud, double eps);

/// Internal eps-net size: the smaller of greedy set cover and the greedy packing.
std::size_t covering_estimate(const FunctionCloud& cloud, double eps);

struct EntropyPoint {
  double eps = 0.0;
  double ln_packing = 0.0;
};

/// (eps, ln packing size) for a descending eps list; a packing found at a
/// larger eps also packs every smaller one, so the curve is nonincreasing in eps.
std::vector<EntropyPoint> packing_entropy_curve(const FunctionCloud& cloud,
                                                const std::vector<double>& eps_list);

// ------------------------------------------------- sparse Fourier net

/// f(x) = sum_k c_k exp(2 pi i <k, x>) with integer frequencies.
class TrigSeries {
 public:
  using CoeffMap = std::map<Frequency, Complex>;
  TrigSeries(std::size_t dim, CoeffMap coeffs);

  std::size_t dim() const { return dim_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  Complex operator()(std::span<const double> x) const;
  /// sum_k (1 + |k|_inf) |c_k|.
  double weighted_mass() const;

 private:
  std::size_t dim_;
  CoeffMap coeffs_;
};

/// Random member of the class {sum (1 + |k|_inf)|c_k| <= budget}: `num_terms`
/// frequencies from [-max_freq, max_freq]^d, mass filled to a random fraction in [1/2, 1].
TrigSeries sample_trig_series(std::size_t dim, double budget, int num_terms, int max_freq,
                              std::uint64_t seed);

struct FourierNetPlan {
  double eps = 0.0;
  std::size_t dim = 1;
  double c1 = 1.0;
  double budget = 1.0;            // class constant C; the net is built for f / C at eps / C
  int truncation = 0;             // N = ceil(3 / eps)
  double lambda = 0.0;            // 1/2 + 1/d
  std::int64_t terms = 0;         // n = ceil((3^{d+1} C1 / eps)^{1/lambda})
  double box_size = 0.0;          // |I_N| = (4N + 1)^d
  double quantization_step = 0.0; // eps / (3 n)
  double coefficient_radius = 2.0;
  double ln_support_sets = 0.0;   // ln sum_{l <= n} binom(|I_N|, l)
  double ln_cardinality_bound = 0.0;  // ln_support_sets + 2 n ln(7 n / eps)
};

/// RangeError unless 0 < eps < 1/2 (after dividing by the budget).
FourierNetPlan fourier_net_plan(double eps, std::size_t dim, double c1 = 1.0, double budget = 1.0);

/// Truncate to |k|_inf <= N, keep the n largest coefficients (ties by frequency
/// order), round real and imaginary parts to the quantization lattice.
TrigSeries net_approximant(const FourierNetPlan& plan, const TrigSeries& f);

struct CoverRecord {
  double sup_distance = 0.0;
  std::size_t kept_terms = 0;
  bool pass = false;
};

struct CoverReport {
  FourierNetPlan plan;
  int grid_resolution = 0;
  std::vector<CoverRecord> records;
  std::size_t passed = 0;
  double pass_rate = 0.0;
  double max_distance = 0.0;
};

/// MembershipError if a test series has weighted mass above the plan's budget.
CoverReport cover_with_fourier_net(const FourierNetPlan& plan, const std::vector<TrigSeries>& members,
                                   int grid_resolution = 4096);

// ---------------------------------------------------- separated subsets

using Bitset = std::vector<std::uint64_t>;

std::size_t popcount(const Bitset& a);
std::size_t symmetric_difference(const Bitset& a, const Bitset& b);
std::vector<std::int64_t> bitset_items(const Bitset& a, std::size_t n_items);

struct SeparatedFamily {
  std::size_t n_items = 0;
  std::size_t radius = 0;
  std::vector<Bitset> subsets;
  std::size_t tries = 0;
};

/// Random subsets of {0..n_items-1} by rejection until `target_count` subsets
/// with pairwise symmetric difference > r are found or max_tries candidates were drawn.
SeparatedFamily separated_family(std::size_t n_items, std::size_t target_count, std::size_t r,
                                 std::uint64_t seed, std::size_t max_tries = 1000000);

// ------------------------------------------------ bump packing study

struct BumpPackingLevel {
  int grid_size = 0;
  std::size_t target = 0;
  std::size_t count = 0;
  double ln_count = 0.0;
  double moment_threshold = 0.0;  // 2 x calibrated mean moment of the unscaled member
  double scale = 0.0;             // budget / threshold
  double separation = 0.0;        // s kappa N^{-d} r: every pair is strictly farther apart
  double min_distance = 0.0;      // smallest exact pairwise distance
  double max_quadrature_rel_error = 0.0;
  std::size_t quadrature_pairs = 0;
  double mean_sign_attempts = 0.0;
};

struct BumpPackingStudy {
  std::size_t dim = 1;
  double budget = 1.0;
  std::vector<BumpPackingLevel> levels;
  double slope = 0.0;  // of ln(ln count) against ln(1 / separation)
  double theory_slope = 0.0;  // 2d / (2 + d)
};

/// Packing families of scaled bump-lattice members for each N (multiple of 16):
/// subsets with |Omega delta Omega'| > N^d / 16, target 2^{N^d/4} members
/// (capped by `count_cap` when nonzero), signs by rejection against a moment
/// threshold, scale chosen so every member's estimated moment is <= budget.
BumpPackingStudy bump_packing_study(std::size_t dim, const std::vector<int>& grid_sizes,
                                    double budget, std::uint64_t seed,
                                    std::size_t quadrature_pairs = 8, std::size_t count_cap = 0);

// ------------------------------------------------------ rate calculators

/// V(eps) = C max{1, 1/eps}^alpha ln^beta(2 + 1/eps).
struct EntropyModel {
  double C = 1.0;
  double alpha = 1.0;
  double beta = 0.0;
  double operator()(double eps) const;
};

/// Unique root of n eps^2 = V(eps), bisection to relative tolerance 1e-10 or better.
double solve_eps_n(const EntropyModel& v, double n);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

struct RateExponents {
  Rational lower_exp;       // (d+1)/(3d-1)
  Rational log_exp_lower;   // (d+1)(5d-3)/((3d-1)(2d-2))
  Rational log_exp_upper;   // (5d-3)/(3d-1)
  Rational alpha_beta;      // (d+1)/(2(d-1))
};

RateExponents rate_exponents(int d);

struct EntropyRateParams {
  double alpha = 1.0;
  double beta = 1.0;
  double a = 0.0;
  double b = 0.0;
  double C = 1.0;
  void validate() const;
};

/// (kappa_1(m), kappa_2(m)) with the constants c1, c2 in front.
std::pair<double, double> kappa_bounds(const EntropyRateParams& params, double m, double c1 = 1.0,
                                       double c2 = 1.0);

/// W (10 + ln(1/delta) + 5 ln ceil(B) + 5 ln max{d, W}).
double nn_entropy_bound(double delta, double d, double W, double B);

nlohmann::json to_json(const FourierNetPlan& plan);
nlohmann::json to_json(const RateExponents& r);

}  // namespace barronlab
