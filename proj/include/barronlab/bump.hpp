#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <json.hpp>

#include "barronlab/common.hpp"

namespace barronlab {

// Fixed profiles of the bump lattice. The one-dimensional profile is
// t -> Z exp(-1/(t(1-t))) on (0,1), normalized to unit integral, so the
// d-dimensional tensor bump has L1 norm exactly 1.
namespace bump_profile {

double bump_1d(double t);
/// Antiderivative of bump_1d from 0, clamped to [0,1] outside (0,1).
double bump_cdf(double t);
/// Smooth ramp: 1 on [0,1], 0 outside (-1,2).
double ramp(double t);
/// sup of bump_1d, attained at t = 1/2.
double bump_1d_max();

double bump(std::span<const double> x);
/// ||bump||_inf * prod ramp(x_i).
double plateau(std::span<const double> x);

}  // namespace bump_profile

inline constexpr double kBumpL1 = 1.0;

struct BumpFamily {
  std::size_t dim = 1;
  int grid_size = 16;  // N

  std::int64_t cell_count() const;
  /// Row-major flat index of a multi-index in {0..N-1}^d; IndexError when out of range.
  std::int64_t cell_index(std::span<const int> omega) const;
};

/// scale * (psi + sum_{w in cells} sign_w * phi(N (x - w/N))).
class BumpMember {
 public:
  /// `cells` are flat indices into {0..N-1}^d; `signs` are +-1 aligned with `cells`.
  static BumpMember build(const BumpFamily& family, const std::vector<std::int64_t>& cells,
                          const std::vector<int>& signs, double scale);

  const BumpFamily& family() const { return family_; }
  double scale() const { return scale_; }
  /// Sign per cell over the whole lattice (0 = inactive).
  const std::vector<std::int8_t>& lattice_signs() const { return signs_; }
  std::vector<std::int64_t> active_cells() const;
  std::vector<int> active_signs() const;

  BumpMember rescaled(double scale) const;

  /// Value on [0,1]^d (DomainError outside).
  double operator()(std::span<const double> x) const;
  /// Value anywhere in R^d.
  double eval_extended(std::span<const double> x) const;

  /// Exact L1([0,1]^d) distance to another member of the same family and scale.
  double l1_distance(const BumpMember& other) const;

 private:
  BumpFamily family_;
  double scale_ = 1.0;
  std::vector<std::int8_t> signs_;
};

/// Closed form s * kappa * N^{-d} * (sign_mismatch_sum + symmetric_difference).
double bump_l1_closed_form(double scale, int grid_size, std::size_t dim, double sign_mismatch_sum,
                           double symmetric_difference);

struct MomentEstimate {
  double moment = 0.0;
  double refinement_delta = std::numeric_limits<double>::quiet_NaN();
  int resolution = 0;
};

/// DFT estimate of int (1 + |xi|) |g^(xi)| d xi with g zero-padded to [-1,2]^d.
/// `grid_resolution` is samples per unit length (power of two >= 64, and at
/// least 4 per lattice cell). With `refine`, also reports |estimate(2r) - estimate(r)|.
MomentEstimate estimate_bump_fourier_moment(const BumpMember& member, int grid_resolution,
                                            bool refine = true);

/// Smallest admissible power-of-two resolution with at least `per_cell` samples per cell.
int default_moment_resolution(int grid_size, int per_cell = 16);

struct SignSelection {
  std::vector<int> signs;
  double moment = 0.0;  // moment of the unscaled member g = psi + f
  int attempts = 0;
};

/// Rejection-sample uniform signs on `cells` until the unscaled member's
/// moment estimate is <= threshold. ExhaustionError after max_attempts.
SignSelection select_signs(const BumpFamily& family, const std::vector<std::int64_t>& cells,
                           std::uint64_t seed, double moment_threshold, int grid_resolution = 0,
                           int max_attempts = 64);

/// Scale s with s * moment_bound = budget.
double scale_for_budget(double budget, double moment_bound);

nlohmann::json to_json(const BumpMember& member);
BumpMember bump_member_from_json(const nlohmann::json& j);

}  // namespace barronlab
