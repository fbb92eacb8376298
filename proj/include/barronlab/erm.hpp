#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "barronlab/classifiers.hpp"
#include "barronlab/quadrature.hpp"

namespace barronlab {

struct ArchitecturePlan {
  double m = 1.0;
  std::size_t dim = 2;
  double M = 1.0;
  double R = 1.0;
  double tau = 1.0;
  double scale_factor = 1.0;
  // Unscaled values.
  double n_tilde_raw = 0.0;
  double width_raw = 0.0;
  double weights_raw = 0.0;
  // Scaled, ceiled, at least 1.
  std::int64_t n_tilde = 1;
  std::int64_t width = 1;     // N(m): width of each hidden layer
  std::int64_t max_weights = 1;  // W(m): nonzero parameter budget
  std::int64_t weight_bound = 1; // B(m), from the scaled n_tilde
};

/// Widths, weight budget and weight bound for m samples. The raw values are
/// ceil(144 tau^2 d^4 M^2 R^2 m^{2/3}), ceil(M (n_tilde + 4d + 2)) and
/// ceil(54 d^2 M n_tilde); the scaled ones multiply by `scale_factor`.
ArchitecturePlan plan_architecture(double m, std::size_t dim, double M, double R, double tau,
                                   double scale_factor);

/// d -> w -> w -> w -> 1 ReLU network with an output clamp to [0,1].
class ReluNet {
 public:
  static constexpr int kLayers = 4;

  ReluNet(std::size_t dim, std::array<int, 3> widths, double weight_bound, std::int64_t max_weights);
  static ReluNet for_plan(const ArchitecturePlan& plan);

  std::size_t dim() const { return dim_; }
  double weight_bound() const { return bound_; }
  std::int64_t max_weights() const { return max_weights_; }
  std::size_t parameter_count() const;
  std::int64_t nonzero_count() const;
  double max_abs_parameter() const;

  Eigen::MatrixXd& weight(int l) { return w_[l]; }
  const Eigen::MatrixXd& weight(int l) const { return w_[l]; }
  Eigen::VectorXd& bias(int l) { return b_[l]; }
  const Eigen::VectorXd& bias(int l) const { return b_[l]; }

  /// Flat parameter vector: W_0, b_0, W_1, b_1, ... (column-major matrices).
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& p);

  /// Output before the clamp, one column per input point.
  Eigen::RowVectorXd raw_output(const Eigen::MatrixXd& x) const;
  Eigen::RowVectorXd output(const Eigen::MatrixXd& x) const;
  double operator()(std::span<const double> x) const;

  /// Clip every parameter into [-B, B].
  void project();
  /// Zero the smallest-magnitude parameters until at most W are nonzero.
  void prune();
  /// InternalError unless |param| <= B and the nonzero count is <= W.
  void assert_feasible() const;

 private:
  std::size_t dim_;
  double bound_;
  std::int64_t max_weights_;
  std::array<Eigen::MatrixXd, kLayers> w_;
  std::array<Eigen::VectorXd, kLayers> b_;
};

/// Points of a sample as columns.
Eigen::MatrixXd sample_matrix(const LabeledSample& s);

/// phi(z) = max{0, 1 - z}.
inline double hinge(double z) { return z < 1.0 ? 1.0 - z : 0.0; }

/// (1/m) sum phi((2 y_i - 1)(2 f(x_i) - 1)).
double empirical_hinge_risk(const RealFn& f, const LabeledSample& s);
double empirical_hinge_risk(const ReluNet& net, const LabeledSample& s);

/// E phi((2 h(X) - 1)(2 f(X) - 1)) for X uniform on the cube.
Estimate population_hinge_risk(const RealFn& f, const Classifier& h, const Integrator& integrator);

/// Clamped empirical hinge risk and its gradient with respect to parameters()
/// (derivative 0 at every kink).
double hinge_risk_gradient(const ReluNet& net, const Eigen::MatrixXd& x, const std::vector<int>& labels,
                           Eigen::VectorXd& grad);

/// Smallest distance of any pre-activation, output clamp edge or hinge kink to its kink.
double kink_margin(const ReluNet& net, const Eigen::MatrixXd& x, const std::vector<int>& labels);

struct TrainConfig {
  int restarts = 2;      // random restarts in addition to the zero net
  int epochs = 200;
  double step_size = 0.01;  // Adam step, halved at 50% and 75% of the epochs
  int batch_size = 64;
  std::uint64_t seed = 0;
  int prune_every = 10;  // optimizer steps between prunings
};

struct TrainResult {
  ReluNet net;
  double achieved_risk = 0.0;
  int best_restart = 0;  // 0 is the zero net
  std::vector<double> restart_risks;
};

/// Multi-restart Adam on the hinge risk of the unclamped output with weight
/// clipping after every step and periodic pruning. Returns the restart with
/// the lowest clamped empirical risk (recomputed on the returned net).
TrainResult train_erm(const LabeledSample& s, const ArchitecturePlan& plan, const TrainConfig& cfg);

/// 1 iff net(x) >= 1/2.
int plugin_classify(const ReluNet& net, std::span<const double> x);
inline int plugin_classify(double output) { return output >= 0.5 ? 1 : 0; }

/// Monte Carlo estimate of the measure of {plugin(net, x) != h(x)}.
Estimate misclassification_error(const ReluNet& net, const Classifier& h, std::int64_t n_mc,
                                 std::uint64_t seed);

nlohmann::json to_json(const ArchitecturePlan& plan);
nlohmann::json to_json(const ReluNet& net);
ReluNet relu_net_from_json(const nlohmann::json& j);

}  // namespace barronlab
