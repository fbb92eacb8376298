#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "barronlab/barron.hpp"
#include "barronlab/bump.hpp"
#include "barronlab/quadrature.hpp"

namespace barronlab {

/// Boundary function b: [0,1]^k -> R backed by a Fourier rep, a bump member,
/// or an arbitrary callable (the last one is not serializable).
class Boundary {
 public:
  static Boundary fourier(BarronFourierRep rep);
  static Boundary bump(BumpMember member);
  static Boundary function(std::size_t dim, RealFn fn);
  /// Constant boundary stored as a Fourier rep with only c_0.
  static Boundary constant(std::size_t dim, double value);

  std::size_t dim() const { return dim_; }
  double operator()(std::span<const double> x) const { return fn_(x); }

  const BarronFourierRep* as_fourier() const;
  const BumpMember* as_bump() const;

 private:
  using Source = std::variant<std::monostate, BarronFourierRep, BumpMember>;
  std::size_t dim_ = 0;
  std::shared_ptr<const Source> source_;
  RealFn fn_;
};

/// h_b(x) = 1 iff b(x_1..x_{d-1}) <= x_d.
class HorizonClassifier {
 public:
  explicit HorizonClassifier(Boundary boundary);
  std::size_t dim() const { return boundary_.dim() + 1; }
  const Boundary& boundary() const { return boundary_; }
  /// Throws DomainError for wrong dimension or points outside [0,1]^d.
  int operator()(std::span<const double> x) const;

 private:
  Boundary boundary_;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct Piece {
  std::vector<Interval> rect;
  std::vector<int> perm;  // (P x)_j = x_{perm[j]}, zero-based
  bool flip = false;
  HorizonClassifier horizon;
};

class PiecewiseClassifier {
 public:
  /// Validates rectangles (non-degenerate, inside [0,1]^d, disjoint interiors)
  /// and permutations; FormatError otherwise.
  static PiecewiseClassifier create(std::size_t dim, std::vector<Piece> pieces);

  std::size_t dim() const { return dim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  /// First piece containing x decides; 0 outside every rectangle.
  int operator()(std::span<const double> x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Piece> pieces_;
};

/// Type-erased binary classifier on [0,1]^d.
class Classifier {
 public:
  Classifier(HorizonClassifier h);     // NOLINT(google-explicit-constructor)
  Classifier(PiecewiseClassifier p);   // NOLINT(google-explicit-constructor)
  static Classifier function(std::size_t dim, std::function<int(std::span<const double>)> fn);
  static Classifier constant(std::size_t dim, int value);

  std::size_t dim() const { return dim_; }
  int operator()(std::span<const double> x) const { return fn_(x); }

  /// 1 - h.
  Classifier complement() const;

  const HorizonClassifier* as_horizon() const;
  const PiecewiseClassifier* as_piecewise() const;

 private:
  Classifier() = default;
  using Source = std::variant<std::monostate, HorizonClassifier, PiecewiseClassifier>;
  std::size_t dim_ = 0;
  std::shared_ptr<const Source> source_;
  std::function<int(std::span<const double>)> fn_;
};

/// Gauss-Legendre integration of |b1 - b2| over [0,1]^{d-1} (Monte Carlo for d - 1 > 2).
struct ExactHorizonRule {
  int resolution = 1024;
};

using DisagreementMethod = std::variant<ExactHorizonRule, GridRule, MonteCarloRule>;

/// Lebesgue measure of {h1 != h2}; half_width is nonzero only for Monte Carlo.
Estimate disagreement(const Classifier& h1, const Classifier& h2, const DisagreementMethod& method);

/// ||b1 - b2||_{L1([0,1]^k)} for boundaries clamped into [0,1].
double boundary_l1_distance(const Boundary& b1, const Boundary& b2, int resolution = 1024);

struct LabeledSample {
  std::size_t dim = 0;
  std::vector<double> coords;  // row-major, size() * dim
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
};

/// X_i iid uniform on [0,1]^d from the seeded stream, Y_i = h(X_i).
LabeledSample sample_noiseless(const Classifier& h, std::size_t m, std::uint64_t seed);

void write_sample_csv(std::ostream& out, const LabeledSample& sample);
LabeledSample read_sample_csv(std::istream& in);

/// M slabs along the first axis covering [0,1]^d, each with a random
/// permutation (identity when M = 1), random flip (none when M = 1) and a
/// boundary drawn by sample_boundary_rep(d - 1, budget, ...).
PiecewiseClassifier make_regular_classifier(std::size_t dim, int pieces, double budget,
                                            std::uint64_t seed, int num_terms = 4,
                                            int max_freq = 4);

nlohmann::json to_json(const Boundary& b);
Boundary boundary_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PiecewiseClassifier& c);
nlohmann::json to_json(const HorizonClassifier& h);
PiecewiseClassifier classifier_from_json(const nlohmann::json& j);

}  // namespace barronlab
