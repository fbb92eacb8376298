#include "barronlab/erm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>


namespace barronlab {

ArchitecturePlan plan_architecture(double m, std::size_t dim, double M, double R, double tau,
                                   double scale_factor) {
  if (!(m >= 1.0)) throw RangeError("m must be at least 1");
  if (dim < 2) throw RangeError("dimension must be at least 2");
  if (!(M >= 1.0) || !(R >= 1.0) || !(tau >= 1.0)) throw RangeError("need M, R, tau >= 1");
  if (!(scale_factor > 0.0) || scale_factor > 1.0) throw RangeError("scale factor must lie in (0, 1]");
  ArchitecturePlan p;
  p.m = m;
  p.dim = dim;
  p.M = M;
  p.R = R;
  p.tau = tau;
  p.scale_factor = scale_factor;
  const double d = static_cast<double>(dim);
  p.n_tilde_raw = std::ceil(144.0 * tau * tau * std::pow(d, 4) * M * M * R * R * std::cbrt(m * m));
  p.width_raw = std::ceil(M * (p.n_tilde_raw + 4.0 * d + 2.0));
  p.weights_raw = std::ceil(54.0 * d * d * M * p.n_tilde_raw);
  auto scaled = [&](double v) {
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(scale_factor * v)));
  };
  p.n_tilde = scaled(p.n_tilde_raw);
  p.width = scaled(p.width_raw);
  p.max_weights = scaled(p.weights_raw);
  const double nt = scale_factor == 1.0 ? p.n_tilde_raw : static_cast<double>(p.n_tilde);
  p.weight_bound = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(5.0 * d * (1.0 + tau * std::sqrt(d) * R) + 2.0 * std::sqrt(nt))));
  return p;
}

// ----------------------------------------------------------------- net

ReluNet::ReluNet(std::size_t dim, std::array<int, 3> widths, double weight_bound, std::int64_t max_weights)
    : dim_(dim), bound_(weight_bound), max_weights_(max_weights) {
  if (dim < 1) throw RangeError("input dimension must be at least 1");
  if (!(weight_bound > 0.0) || max_weights < 1) throw RangeError("need B > 0 and W >= 1");
  std::array<int, 5> sizes{static_cast<int>(dim), widths[0], widths[1], widths[2], 1};
  for (int l = 0; l < kLayers; ++l) {
    if (sizes[l + 1] < 1) throw RangeError("layer widths must be positive");
    w_[l] = Eigen::MatrixXd::Zero(sizes[l + 1], sizes[l]);
    b_[l] = Eigen::VectorXd::Zero(sizes[l + 1]);
  }
}

ReluNet ReluNet::for_plan(const ArchitecturePlan& plan) {
  const int w = static_cast<int>(plan.width);
  return ReluNet(plan.dim, {w, w, w}, static_cast<double>(plan.weight_bound), plan.max_weights);
}

std::size_t ReluNet::parameter_count() const {
  std::size_t n = 0;
  for (int l = 0; l < kLayers; ++l) n += w_[l].size() + b_[l].size();
  return n;
}

Eigen::VectorXd ReluNet::parameters() const {
  Eigen::VectorXd p(parameter_count());
  Eigen::Index o = 0;
  for (int l = 0; l < kLayers; ++l) {
    p.segment(o, w_[l].size()) = w_[l].reshaped();
    o += w_[l].size();
    p.segment(o, b_[l].size()) = b_[l];
    o += b_[l].size();
  }
  return p;
}

void ReluNet::set_parameters(const Eigen::VectorXd& p) {
  if (static_cast<std::size_t>(p.size()) != parameter_count()) throw RangeError("parameter vector has the wrong length");
  Eigen::Index o = 0;
  for (int l = 0; l < kLayers; ++l) {
    w_[l].reshaped() = p.segment(o, w_[l].size());
    o += w_[l].size();
    b_[l] = p.segment(o, b_[l].size());
    o += b_[l].size();
  }
}

std::int64_t ReluNet::nonzero_count() const {
  const Eigen::VectorXd p = parameters();
  return static_cast<std::int64_t>((p.array() != 0.0).count());
}

double ReluNet::max_abs_parameter() const {
  const Eigen::VectorXd p = parameters();
  return p.size() ? p.cwiseAbs().maxCoeff() : 0.0;
}

Eigen::RowVectorXd ReluNet::raw_output(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.rows()) != dim_) throw DomainError("input has the wrong dimension");
  Eigen::MatrixXd a = x;
  for (int l = 0; l < kLayers - 1; ++l) a = ((w_[l] * a).colwise() + b_[l]).cwiseMax(0.0);
  return ((w_[kLayers - 1] * a).colwise() + b_[kLayers - 1]).row(0);
}

Eigen::RowVectorXd ReluNet::output(const Eigen::MatrixXd& x) const {
  return raw_output(x).cwiseMax(0.0).cwiseMin(1.0);
}

double ReluNet::operator()(std::span<const double> x) const {
  check_unit_cube(x, dim_);
  const Eigen::Map<const Eigen::VectorXd> col(x.data(), static_cast<Eigen::Index>(x.size()));
  return output(col)(0);
}

void ReluNet::project() {
  for (int l = 0; l < kLayers; ++l) {
    w_[l] = w_[l].cwiseMax(-bound_).cwiseMin(bound_);
    b_[l] = b_[l].cwiseMax(-bound_).cwiseMin(bound_);
  }
}

namespace {

// Keep the max_weights largest magnitudes; ties go to the lower index.
void prune_vector(Eigen::VectorXd& p, std::int64_t max_weights) {
  std::vector<Eigen::Index> nz;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] != 0.0) nz.push_back(i);
  if (static_cast<std::int64_t>(nz.size()) <= max_weights) return;
  std::stable_sort(nz.begin(), nz.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return std::abs(p[a]) > std::abs(p[b]); });
  for (std::size_t k = static_cast<std::size_t>(max_weights); k < nz.size(); ++k) p[nz[k]] = 0.0;
}

}  // namespace

void ReluNet::prune() {
  if (static_cast<std::int64_t>(parameter_count()) <= max_weights_) return;
  Eigen::VectorXd p = parameters();
  prune_vector(p, max_weights_);
  set_parameters(p);
}

void ReluNet::assert_feasible() const {
  const double mx = max_abs_parameter();
  if (mx > bound_) throw InternalError(fmt::format("parameter magnitude {} exceeds bound {}", mx, bound_));
  const auto nz = nonzero_count();
  if (nz > max_weights_) throw InternalError(fmt::format("{} nonzero parameters exceed budget {}", nz, max_weights_));
}

// ---------------------------------------------------------------- risk

Eigen::MatrixXd sample_matrix(const LabeledSample& s) {
  Eigen::MatrixXd x(s.dim, s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t k = 0; k < s.dim; ++k) x(k, i) = s.coords[i * s.dim + k];
  return x;
}

namespace {

double clamped_risk(const Eigen::RowVectorXd& f, const std::vector<int>& labels) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) s += hinge((2.0 * labels[i] - 1.0) * (2.0 * f(i) - 1.0));
  return s / static_cast<double>(f.size());
}

// Mean hinge risk over the columns of x and its gradient. With `clamped`
// the loss sees the clamped output; otherwise the raw output.
double risk_and_gradient(const ReluNet& net, const Eigen::MatrixXd& x, const std::vector<int>& labels,
                         bool clamped, Eigen::VectorXd& grad) {
  constexpr int L = ReluNet::kLayers;
  const Eigen::Index n = x.cols();
  std::array<Eigen::MatrixXd, L> act;  // input to layer l
  std::array<Eigen::MatrixXd, L - 1> pre;
  act[0] = x;
  for (int l = 0; l < L - 1; ++l) {
    pre[l] = (net.weight(l) * act[l]).colwise() + net.bias(l);
    act[l + 1] = pre[l].cwiseMax(0.0);
  }
  const Eigen::RowVectorXd g = ((net.weight(L - 1) * act[L - 1]).colwise() + net.bias(L - 1)).row(0);

  double risk = 0.0;
  Eigen::MatrixXd delta(1, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sgn = 2.0 * labels[i] - 1.0;
    const double f = clamped ? std::clamp(g(i), 0.0, 1.0) : g(i);
    const double z = sgn * (2.0 * f - 1.0);
    risk += hinge(z);
    double d = z < 1.0 ? -2.0 * sgn : 0.0;
    if (clamped && !(g(i) > 0.0 && g(i) < 1.0)) d = 0.0;
    delta(0, i) = d / static_cast<double>(n);
  }

  grad.resize(static_cast<Eigen::Index>(net.parameter_count()));
  std::array<Eigen::Index, L> offset{};
  Eigen::Index o = 0;
  for (int l = 0; l < L; ++l) {
    offset[l] = o;
    o += net.weight(l).size() + net.bias(l).size();
  }
  for (int l = L - 1; l >= 0; --l) {
    const Eigen::MatrixXd gw = delta * act[l].transpose();
    grad.segment(offset[l], gw.size()) = gw.reshaped();
    grad.segment(offset[l] + gw.size(), net.bias(l).size()) = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = net.weight(l).transpose() * delta;
      delta = back.cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return risk / static_cast<double>(n);
}

}  // namespace

double empirical_hinge_risk(const RealFn& f, const LabeledSample& s) {
  if (s.size() == 0) throw RangeError("empty sample");
  double r = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int y = s.labels[i];
    if (y != 0 && y != 1) throw RangeError("labels must be 0 or 1");
    r += hinge((2.0 * y - 1.0) * (2.0 * f(s.point(i)) - 1.0));
  }
  return r / static_cast<double>(s.size());
}

double empirical_hinge_risk(const ReluNet& net, const LabeledSample& s) {
  if (s.size() == 0) throw RangeError("empty sample");
  return clamped_risk(net.output(sample_matrix(s)), s.labels);
}

Estimate population_hinge_risk(const RealFn& f, const Classifier& h, const Integrator& integrator) {
  return integrate(h.dim(), [&](std::span<const double> x) {
    return hinge((2.0 * h(x) - 1.0) * (2.0 * f(x) - 1.0));
  }, integrator);
}

double hinge_risk_gradient(const ReluNet& net, const Eigen::MatrixXd& x, const std::vector<int>& labels,
                           Eigen::VectorXd& grad) {
  return risk_and_gradient(net, x, labels, true, grad);
}

double kink_margin(const ReluNet& net, const Eigen::MatrixXd& x, const std::vector<int>& labels) {
  (void)labels;  // hinge kinks of the clamped loss sit at the clamp edges
  double margin = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd a = x;
  for (int l = 0; l < ReluNet::kLayers - 1; ++l) {
    const Eigen::MatrixXd z = (net.weight(l) * a).colwise() + net.bias(l);
    margin = std::min(margin, z.cwiseAbs().minCoeff());
    a = z.cwiseMax(0.0);
  }
  const Eigen::RowVectorXd g = net.raw_output(x);
  margin = std::min({margin, g.cwiseAbs().minCoeff(), (g.array() - 1.0).abs().minCoeff()});
  return margin;
}

// ------------------------------------------------------------ training

namespace {

void random_init(ReluNet& net, Rng& rng) {
  for (int l = 0; l < ReluNet::kLayers; ++l) {
    const double b0 = std::min(net.weight_bound(), 1.0 / std::sqrt(static_cast<double>(net.weight(l).cols())));
    for (Eigen::Index i = 0; i < net.weight(l).size(); ++i)
      net.weight(l).data()[i] = b0 * (2.0 * uniform01(rng) - 1.0);
    for (Eigen::Index i = 0; i < net.bias(l).size(); ++i) net.bias(l)[i] = b0 * (2.0 * uniform01(rng) - 1.0);
  }
}

void enforce(Eigen::VectorXd& p, double bound, std::int64_t max_weights, bool prune) {
  p = p.cwiseMax(-bound).cwiseMin(bound);
  if (prune) prune_vector(p, max_weights);
}

struct RestartOutcome {
  Eigen::VectorXd params;
  double risk;
};

RestartOutcome train_one(ReluNet net, const Eigen::MatrixXd& x, const std::vector<int>& labels,
                         const TrainConfig& cfg, Rng& rng) {
  const Eigen::Index n = x.cols();
  const double bound = net.weight_bound();
  const std::int64_t budget = net.max_weights();
  Eigen::VectorXd p = net.parameters();
  enforce(p, bound, budget, true);
  net.set_parameters(p);
  RestartOutcome best{p, clamped_risk(net.output(x), labels)};

  Eigen::VectorXd m1 = Eigen::VectorXd::Zero(p.size()), m2 = Eigen::VectorXd::Zero(p.size()), grad;
  const double b1 = 0.9, b2 = 0.999, adam_eps = 1e-8;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Eigen::Index batch = std::clamp<Eigen::Index>(cfg.batch_size, 1, n);
  std::int64_t step = 0;
  Eigen::MatrixXd xb(x.rows(), batch);
  std::vector<int> yb(static_cast<std::size_t>(batch));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double lr = cfg.step_size;
    if (epoch >= cfg.epochs / 2) lr *= 0.5;
    if (epoch >= (3 * cfg.epochs) / 4) lr *= 0.5;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
    for (Eigen::Index start = 0; start + batch <= n; start += batch) {
      for (Eigen::Index j = 0; j < batch; ++j) {
        xb.col(j) = x.col(order[static_cast<std::size_t>(start + j)]);
        yb[static_cast<std::size_t>(j)] = labels[static_cast<std::size_t>(order[static_cast<std::size_t>(start + j)])];
      }
      risk_and_gradient(net, xb, yb, false, grad);
      ++step;
      m1 = b1 * m1 + (1.0 - b1) * grad;
      m2 = b2 * m2 + (1.0 - b2) * grad.cwiseProduct(grad);
      const double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
      p.array() -= lr * (m1.array() / c1) / ((m2.array() / c2).sqrt() + adam_eps);
      enforce(p, bound, budget, cfg.prune_every > 0 && step % cfg.prune_every == 0);
      net.set_parameters(p);
    }
    // Pruning may have been skipped on the last steps; evaluate a feasible iterate.
    enforce(p, bound, budget, true);
    net.set_parameters(p);
    net.assert_feasible();
    const double r = clamped_risk(net.output(x), labels);
    if (r > 2.0 + 1e-6) throw InternalError(fmt::format("training diverged: risk {}", r));
    if (r < best.risk) best = {p, r};
  }
  return best;
}

}  // namespace

TrainResult train_erm(const LabeledSample& s, const ArchitecturePlan& plan, const TrainConfig& cfg) {
  if (s.size() == 0) throw RangeError("empty sample");
  if (s.dim != plan.dim) throw DomainError("sample and plan differ in dimension");
  if (cfg.restarts < 1) throw RangeError("need at least one restart");
  if (cfg.epochs < 0 || cfg.batch_size < 1 || !(cfg.step_size > 0.0)) throw RangeError("bad training config");
  for (int y : s.labels)
    if (y != 0 && y != 1) throw RangeError("labels must be 0 or 1");

  const Eigen::MatrixXd x = sample_matrix(s);
  ReluNet net = ReluNet::for_plan(plan);
  TrainResult res{net, clamped_risk(net.output(x), s.labels), 0, {}};
  res.restart_risks.push_back(res.achieved_risk);

  for (int r = 1; r <= cfg.restarts; ++r) {
    Rng rng = make_rng(cfg.seed, mix_seed(0xE77, static_cast<std::uint64_t>(r)));
    ReluNet start = ReluNet::for_plan(plan);
    random_init(start, rng);
    RestartOutcome out = train_one(start, x, s.labels, cfg, rng);
    res.restart_risks.push_back(out.risk);
    if (out.risk < res.achieved_risk) {
      res.net.set_parameters(out.params);
      res.achieved_risk = out.risk;
      res.best_restart = r;
    }
  }
  res.net.assert_feasible();
  res.achieved_risk = empirical_hinge_risk(res.net, s);
  return res;
}

int plugin_classify(const ReluNet& net, std::span<const double> x) { return plugin_classify(net(x)); }

Estimate misclassification_error(const ReluNet& net, const Classifier& h, std::int64_t n_mc,
                                 std::uint64_t seed) {
  if (n_mc < 1) throw RangeError("need at least one Monte Carlo draw");
  if (h.dim() != net.dim()) throw DomainError("net and classifier differ in dimension");
  Rng rng = make_rng(seed, 0x3C5);
  const std::size_t d = net.dim();
  const std::int64_t chunk = 4096;
  std::int64_t wrong = 0;
  Eigen::MatrixXd x;
  for (std::int64_t start = 0; start < n_mc; start += chunk) {
    const std::int64_t len = std::min(chunk, n_mc - start);
    x.resize(static_cast<Eigen::Index>(d), len);
    for (Eigen::Index i = 0; i < len; ++i)
      for (std::size_t k = 0; k < d; ++k) x(static_cast<Eigen::Index>(k), i) = uniform01(rng);
    const Eigen::RowVectorXd f = net.output(x);
    for (Eigen::Index i = 0; i < len; ++i) {
      const Eigen::VectorXd col = x.col(i);
      if (plugin_classify(f(i)) != h(std::span<const double>(col.data(), d))) ++wrong;
    }
  }
  const double p = static_cast<double>(wrong) / static_cast<double>(n_mc);
  return {p, binomial_half_width(p, n_mc)};
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const ArchitecturePlan& p) {
  return {{"m", p.m},
          {"dim", p.dim},
          {"M", p.M},
          {"R", p.R},
          {"tau", p.tau},
          {"scale_factor", p.scale_factor},
          {"n_tilde_raw", p.n_tilde_raw},
          {"width_raw", p.width_raw},
          {"weights_raw", p.weights_raw},
          {"n_tilde", p.n_tilde},
          {"width", p.width},
          {"max_weights", p.max_weights},
          {"weight_bound", p.weight_bound}};
}

nlohmann::json to_json(const ReluNet& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (int l = 0; l < ReluNet::kLayers; ++l) {
    const auto& w = net.weight(l);
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      std::vector<double> row(static_cast<std::size_t>(w.cols()));
      for (Eigen::Index j = 0; j < w.cols(); ++j) row[static_cast<std::size_t>(j)] = w(i, j);
      rows.push_back(row);
    }
    std::vector<double> b(net.bias(l).data(), net.bias(l).data() + net.bias(l).size());
    layers.push_back({{"shape", {w.rows(), w.cols()}}, {"weights", rows}, {"bias", b}});
  }
  return {{"dim", net.dim()},
          {"weight_bound", net.weight_bound()},
          {"max_weights", net.max_weights()},
          {"layers", layers}};
}

ReluNet relu_net_from_json(const nlohmann::json& j) {
  try {
    const auto& layers = j.at("layers");
    if (layers.size() != ReluNet::kLayers) throw FormatError("net JSON needs four layers");
    std::array<int, 3> widths{};
    for (int l = 0; l < 3; ++l) widths[l] = layers[l].at("shape")[0].get<int>();
    ReluNet net(j.at("dim").get<std::size_t>(), widths, j.at("weight_bound").get<double>(),
                j.at("max_weights").get<std::int64_t>());
    for (int l = 0; l < ReluNet::kLayers; ++l) {
      auto& w = net.weight(l);
      const auto& rows = layers[l].at("weights");
      const auto bias = layers[l].at("bias").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(rows.size()) != w.rows() ||
          static_cast<Eigen::Index>(bias.size()) != w.rows())
        throw FormatError("net JSON layer shape mismatch");
      for (Eigen::Index i = 0; i < w.rows(); ++i) {
        const auto row = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
        if (static_cast<Eigen::Index>(row.size()) != w.cols()) throw FormatError("net JSON layer shape mismatch");
        for (Eigen::Index c = 0; c < w.cols(); ++c) w(i, c) = row[static_cast<std::size_t>(c)];
        net.bias(l)[i] = bias[static_cast<std::size_t>(i)];
      }
    }
    net.assert_feasible();
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("net JSON: ") + e.what());
  } catch (const InternalError& e) {
    throw FormatError(std::string("net JSON: ") + e.what());
  }
}

}  // namespace barronlab
