#include <doctest.h>

#include <cmath>

#include "barronlab/erm.hpp"

using namespace barronlab;

namespace {

LabeledSample constant_labels(std::size_t dim, std::size_t m, int label, std::uint64_t seed) {
  return sample_noiseless(Classifier::constant(dim, label), m, seed);
}

RealFn constant(double v) {
  return [v](std::span<const double>) { return v; };
}

Classifier horizon(double b) { return HorizonClassifier(Boundary::constant(1, b)); }

ReluNet random_net(std::size_t dim, int width, double amplitude, std::uint64_t seed) {
  ReluNet net(dim, {width, width, width}, 10.0, 100000);
  Eigen::VectorXd p(net.parameter_count());
  Rng rng = make_rng(seed);
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = amplitude * (2.0 * uniform01(rng) - 1.0);
  net.set_parameters(p);
  return net;
}

// A net whose output is the constant c (through the last bias only).
ReluNet constant_net(std::size_t dim, double c) {
  ReluNet net(dim, {2, 2, 2}, 2.0, 10);
  net.bias(3)[0] = c;
  return net;
}

}  // namespace

TEST_CASE("architecture plan") {
  const auto p = plan_architecture(1000, 2, 1, 1, 1, 1.0);
  CHECK(p.n_tilde == 230400);
  CHECK(p.width == 230410);
  CHECK(p.max_weights == 49766400);
  CHECK(p.weight_bound == 985);

  const auto s = plan_architecture(1000, 2, 1, 1, 1, 1e-3);
  CHECK(s.n_tilde == 231);
  CHECK(s.width == 231);
  CHECK(s.max_weights == 49767);
  CHECK(s.weight_bound == 55);  // ceil(10 (1 + sqrt 2) + 2 sqrt 231)

  const auto q = plan_architecture(4000, 2, 1, 1, 1, 1.0);
  CHECK(q.n_tilde_raw / p.n_tilde_raw == doctest::Approx(std::pow(4.0, 2.0 / 3.0)).epsilon(1e-5));

  const auto tiny = plan_architecture(1, 2, 1, 1, 1, 1e-9);
  CHECK(tiny.width == 1);
  CHECK(tiny.max_weights == 1);

  CHECK_THROWS_AS(plan_architecture(0.5, 2, 1, 1, 1, 1), RangeError);
  CHECK_THROWS_AS(plan_architecture(10, 1, 1, 1, 1, 1), RangeError);
  CHECK_THROWS_AS(plan_architecture(10, 2, 1, 1, 1, 0), RangeError);
  CHECK_THROWS_AS(plan_architecture(10, 2, 1, 1, 1, 1.5), RangeError);
  CHECK(to_json(p)["weight_bound"] == 985);
}

TEST_CASE("empirical hinge risk") {
  const auto ones = constant_labels(2, 30, 1, 1);
  const auto zeros = constant_labels(2, 30, 0, 1);
  CHECK(empirical_hinge_risk(constant(1.0), ones) == 0.0);
  CHECK(empirical_hinge_risk(constant(0.5), ones) == 1.0);
  CHECK(empirical_hinge_risk(constant(1.0), zeros) == 2.0);
  CHECK(empirical_hinge_risk(constant_net(2, 1.0), ones) == 0.0);
  CHECK(empirical_hinge_risk(constant_net(2, 7.0), zeros) == 2.0);  // clamped to 1
  CHECK(empirical_hinge_risk(ReluNet(2, {3, 3, 3}, 1, 10), ones) == 2.0);
  CHECK(hinge(-1.0) == 2.0);
  CHECK(hinge(1.0) == 0.0);
  CHECK(hinge(3.0) == 0.0);
}

TEST_CASE("population hinge risk") {
  const Classifier h = horizon(0.25);
  CHECK(population_hinge_risk(constant(1.0), h, GridRule{64}).value == doctest::Approx(0.5).epsilon(1e-12));
  const RealFn hf = [&](std::span<const double> x) { return static_cast<double>(h(x)); };
  CHECK(population_hinge_risk(hf, h, GridRule{64}).value == 0.0);

  const Classifier a = HorizonClassifier(Boundary::fourier(sample_boundary_rep(1, 3.0, 4, 4, 21)));
  const Classifier b = HorizonClassifier(Boundary::fourier(sample_boundary_rep(1, 3.0, 4, 4, 22)));
  const RealFn af = [&](std::span<const double> x) { return static_cast<double>(a(x)); };
  CHECK(population_hinge_risk(af, b, GridRule{512}).value ==
        doctest::Approx(2.0 * disagreement(a, b, GridRule{512}).value).epsilon(1e-12));

  for (std::uint64_t s = 0; s < 3; ++s) {
    const ReluNet net = random_net(2, 6, 0.8, 40 + s);
    const RealFn nf = [&](std::span<const double> x) { return net(x); };
    const double grid = population_hinge_risk(nf, a, GridRule{512}).value;
    const Estimate mc = population_hinge_risk(nf, a, MonteCarloRule{100000, 5 + s});
    CHECK(std::abs(mc.value - grid) <= 3.0 * mc.half_width);
  }
}

TEST_CASE("network shape, clamp, projection and pruning") {
  ReluNet net(3, {4, 5, 6}, 2.0, 20);
  CHECK(net.parameter_count() == static_cast<std::size_t>(3 * 4 + 4 + 4 * 5 + 5 + 5 * 6 + 6 + 6 + 1));
  CHECK(net.nonzero_count() == 0);

  const ReluNet r = random_net(2, 8, 3.0, 9);
  Rng rng = make_rng(2);
  bool saw_clamp = false;
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> x{uniform01(rng), uniform01(rng)};
    const double v = r(x);
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
    Eigen::MatrixXd col(2, 1);
    col << x[0], x[1];
    const double raw = r.raw_output(col)[0];
    saw_clamp = saw_clamp || raw < 0.0 || raw > 1.0;
    REQUIRE(v == std::clamp(raw, 0.0, 1.0));
  }
  CHECK(saw_clamp);

  Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(net.parameter_count()));
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = (i % 2 ? -1.0 : 1.0) * 0.1 * static_cast<double>(i + 1);
  net.set_parameters(p);
  CHECK(net.parameters() == p);
  CHECK_THROWS_AS(net.assert_feasible(), InternalError);
  net.project();
  CHECK(net.max_abs_parameter() == 2.0);
  net.prune();
  CHECK(net.nonzero_count() == 20);
  CHECK_NOTHROW(net.assert_feasible());
  // The twenty entries kept are all clipped to magnitude 2, i.e. the largest ones.
  const Eigen::VectorXd after = net.parameters();
  for (Eigen::Index i = 0; i < after.size(); ++i)
    if (after[i] != 0.0) CHECK(std::abs(after[i]) == 2.0);

  CHECK_THROWS_AS(net.set_parameters(Eigen::VectorXd::Zero(3)), RangeError);
  CHECK_THROWS_AS(ReluNet(2, {0, 1, 1}, 1.0, 1), RangeError);
}

TEST_CASE("network JSON round trip") {
  ReluNet net = random_net(2, 5, 0.7, 12);
  const auto back = relu_net_from_json(to_json(net));
  CHECK(back.parameters() == net.parameters());
  CHECK(back.weight_bound() == net.weight_bound());
  CHECK(back.max_weights() == net.max_weights());
  auto j = to_json(net);
  j["layers"][0]["bias"] = nlohmann::json::array({1.0});
  CHECK_THROWS_AS(relu_net_from_json(j), FormatError);
}

TEST_CASE("gradient matches central differences") {
  const Classifier h = HorizonClassifier(Boundary::fourier(sample_boundary_rep(1, 2.0, 4, 4, 3)));
  const auto s = sample_noiseless(h, 40, 5);
  const Eigen::MatrixXd x = sample_matrix(s);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 100 && seed < 400; ++seed) {
    ReluNet net = random_net(2, 5, 0.6, 1000 + seed);
    if (kink_margin(net, x, s.labels) < 1e-4) continue;
    Eigen::VectorXd grad;
    hinge_risk_gradient(net, x, s.labels, grad);
    const Eigen::VectorXd p = net.parameters();
    Eigen::VectorXd fd(p.size());
    const double h_step = 1e-6;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      Eigen::VectorXd q = p;
      q[i] += h_step;
      net.set_parameters(q);
      const double up = empirical_hinge_risk(net, s);
      q[i] -= 2.0 * h_step;
      net.set_parameters(q);
      const double down = empirical_hinge_risk(net, s);
      fd[i] = (up - down) / (2.0 * h_step);
    }
    net.set_parameters(p);
    const double scale = std::max(grad.norm(), 1e-3);
    CHECK((fd - grad).norm() / scale <= 1e-4);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("training properties") {
  const auto plan = plan_architecture(512, 2, 1, 1, 1, 1e-4);
  TrainConfig cfg;
  cfg.epochs = 60;
  cfg.seed = 4;

  const auto ones = constant_labels(2, 64, 1, 3);
  const auto r1 = train_erm(ones, plan, cfg);
  CHECK(r1.achieved_risk <= 1e-3);

  const Classifier h = HorizonClassifier(Boundary::fourier(sample_boundary_rep(1, 2.0, 4, 4, 9)));
  const auto s = sample_noiseless(h, 256, 8);
  const auto r = train_erm(s, plan, cfg);
  CHECK(r.restart_risks.size() == 3);
  CHECK(r.restart_risks[0] == empirical_hinge_risk(ReluNet::for_plan(plan), s));
  CHECK(r.achieved_risk <= r.restart_risks[0]);
  CHECK(r.achieved_risk == *std::min_element(r.restart_risks.begin(), r.restart_risks.end()));
  CHECK(r.achieved_risk == r.restart_risks[static_cast<std::size_t>(r.best_restart)]);
  CHECK(r.achieved_risk == empirical_hinge_risk(r.net, s));
  CHECK_NOTHROW(r.net.assert_feasible());
  CHECK(r.net.nonzero_count() <= plan.max_weights);
  CHECK(r.net.max_abs_parameter() <= static_cast<double>(plan.weight_bound));

  const auto again = train_erm(s, plan, cfg);
  CHECK(again.net.parameters() == r.net.parameters());
  CHECK(again.achieved_risk == r.achieved_risk);

  cfg.restarts = 0;
  CHECK_THROWS_AS(train_erm(s, plan, cfg), RangeError);
}

TEST_CASE("training reaches low risk on a flat boundary") {
  const Classifier h = horizon(0.5);
  const auto plan = plan_architecture(512, 2, 1, 1, 1, 1e-4);
  int good = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = sample_noiseless(h, 512, 100 + seed);
    TrainConfig cfg;
    cfg.seed = seed;
    if (train_erm(s, plan, cfg).achieved_risk <= 0.1) ++good;
  }
  CHECK(good >= 18);
}

TEST_CASE("plug-in classification and misclassification error") {
  CHECK(plugin_classify(0.5) == 1);
  CHECK(plugin_classify(0.49) == 0);
  CHECK(plugin_classify(1.0) == 1);
  const std::vector<double> x{0.2, 0.4};
  CHECK(plugin_classify(constant_net(2, 0.5), x) == 1);
  CHECK(plugin_classify(constant_net(2, 0.3), x) == 0);

  const ReluNet one = constant_net(2, 1.0);
  CHECK(misclassification_error(one, horizon(0.0), 10000, 1).value == 0.0);
  CHECK(misclassification_error(one, Classifier::constant(2, 0), 10000, 1).value == 1.0);

  const Classifier h = HorizonClassifier(Boundary::fourier(sample_boundary_rep(1, 2.0, 4, 4, 17)));
  for (std::uint64_t s = 0; s < 3; ++s) {
    const ReluNet net = random_net(2, 6, 0.8, 70 + s);
    const RealFn wrong = [&](std::span<const double> p) { return plugin_classify(net, p) != h(p) ? 1.0 : 0.0; };
    const double grid = integrate(2, wrong, GridRule{512}).value;
    const Estimate mc = misclassification_error(net, h, 100000, 200 + s);
    CHECK(std::abs(mc.value - grid) <= 3.0 * mc.half_width);
  }
  CHECK(misclassification_error(one, h, 1000, 5).value == misclassification_error(one, h, 1000, 5).value);
}
