#include <doctest.h>

#include <cmath>
#include <sstream>

#include "barronlab/classifiers.hpp"

using namespace barronlab;

namespace {

HorizonClassifier const_horizon(std::size_t d, double b) { return HorizonClassifier(Boundary::constant(d - 1, b)); }

Piece full_piece(std::size_t d, bool flip, double b) {
  std::vector<int> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = static_cast<int>(i);
  return Piece{std::vector<Interval>(d, Interval{0.0, 1.0}), perm, flip, const_horizon(d, b)};
}

}  // namespace

TEST_CASE("horizon classifier") {
  const auto zero = const_horizon(2, 0.0);
  const auto one = const_horizon(2, 1.0);
  Rng rng = make_rng(1);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> x{uniform01(rng), uniform01(rng)};
    CHECK(zero(x) == 1);
  }
  const std::vector<double> mid{0.3, 0.5};
  CHECK(one(mid) == 0);

  const HorizonClassifier diag(Boundary::function(1, [](std::span<const double> x) { return x[0]; }));
  const std::vector<double> p{0.3, 0.7}, q{0.7, 0.3}, tie{0.4, 0.4};
  CHECK(diag(p) == 1);
  CHECK(diag(q) == 0);
  CHECK(diag(tie) == 1);
  CHECK(diag.dim() == 2);

  const std::vector<double> wrong{0.1, 0.2, 0.3};
  CHECK_THROWS_AS(diag(wrong), DomainError);
}

TEST_CASE("piecewise classifier") {
  const auto c1 = PiecewiseClassifier::create(2, {full_piece(2, false, 0.0)});
  const auto c2 = PiecewiseClassifier::create(2, {full_piece(2, true, 0.0)});
  Rng rng = make_rng(2);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> x{uniform01(rng), uniform01(rng)};
    CHECK(c1(x) == 1);
    CHECK(c2(x) == 0);
  }

  Piece left = full_piece(2, false, 0.0), right = full_piece(2, true, 0.0);
  left.rect[0] = {0.0, 0.5};
  right.rect[0] = {0.5, 1.0};
  const auto split = PiecewiseClassifier::create(2, {left, right});
  const std::vector<double> a{0.25, 0.3}, b{0.75, 0.3}, edge{0.5, 0.3};
  CHECK(split(a) == 1);
  CHECK(split(b) == 0);
  CHECK(split(edge) == 1);  // shared face goes to the lower piece index

  // Partial cover: outside every rectangle the label is 0.
  const auto partial = PiecewiseClassifier::create(2, {left});
  CHECK(partial(b) == 0);

  // A permutation swaps the roles of the axes.
  Piece swapped = full_piece(2, false, 0.0);
  swapped.horizon = HorizonClassifier(Boundary::function(1, [](std::span<const double> x) { return x[0]; }));
  swapped.perm = {1, 0};
  const auto perm = PiecewiseClassifier::create(2, {swapped});
  const std::vector<double> r{0.7, 0.3};  // P x = (0.3, 0.7), 0.3 <= 0.7
  CHECK(perm(r) == 1);
  const std::vector<double> s{0.3, 0.7};
  CHECK(perm(s) == 0);

  Piece overlap = full_piece(2, false, 0.0);
  overlap.rect[0] = {0.4, 0.9};
  CHECK_THROWS_AS(PiecewiseClassifier::create(2, {left, overlap}), FormatError);
  Piece degenerate = full_piece(2, false, 0.0);
  degenerate.rect[1] = {0.3, 0.3};
  CHECK_THROWS_AS(PiecewiseClassifier::create(2, {degenerate}), FormatError);
  Piece badperm = full_piece(2, false, 0.0);
  badperm.perm = {0, 0};
  CHECK_THROWS_AS(PiecewiseClassifier::create(2, {badperm}), FormatError);
}

TEST_CASE("single identity piece agrees with its horizon") {
  const HorizonClassifier h(Boundary::fourier(sample_boundary_rep(2, 2.0, 4, 4, 5)));
  std::vector<int> perm{0, 1, 2};
  const auto c = PiecewiseClassifier::create(3, {Piece{std::vector<Interval>(3), perm, false, h}});
  Rng rng = make_rng(3);
  for (int i = 0; i < 2000; ++i) {
    const std::vector<double> x{uniform01(rng), uniform01(rng), uniform01(rng)};
    REQUIRE(c(x) == h(x));
  }
}

TEST_CASE("disagreement") {
  const Classifier h0 = const_horizon(2, 0.0), hh = const_horizon(2, 0.5);
  CHECK(disagreement(h0, h0, ExactHorizonRule{}).value == 0.0);
  CHECK(disagreement(h0, h0, GridRule{64}).value == 0.0);
  CHECK(disagreement(h0, hh, ExactHorizonRule{}).value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(disagreement(h0, hh, GridRule{64}).value == doctest::Approx(0.5).epsilon(1e-14));

  const Classifier a = HorizonClassifier(Boundary::fourier(sample_boundary_rep(1, 3.0, 4, 4, 11)));
  const Classifier b = HorizonClassifier(Boundary::fourier(sample_boundary_rep(1, 3.0, 4, 4, 12)));
  const double grid = disagreement(a, b, GridRule{512}).value;
  const Estimate mc = disagreement(a, b, MonteCarloRule{100000, 4});
  CHECK(mc.half_width > 0.0);
  CHECK(std::abs(mc.value - grid) <= 3.0 * mc.half_width);
  CHECK(std::abs(disagreement(a, b, ExactHorizonRule{1024}).value - disagreement(a, b, GridRule{1024}).value) < 1e-4);

  const Classifier pw = make_regular_classifier(2, 2, 1.0, 3);
  CHECK(disagreement(pw, pw.complement(), GridRule{128}).value == 1.0);
  CHECK(disagreement(a, a.complement(), GridRule{128}).value == 1.0);
  CHECK_THROWS_AS(disagreement(pw, a, ExactHorizonRule{}), DomainError);
  CHECK_THROWS_AS(disagreement(a, Classifier::constant(3, 1), GridRule{8}), DomainError);
}

TEST_CASE("noiseless samples") {
  const Classifier one = Classifier::constant(2, 1);
  const auto s1 = sample_noiseless(one, 50, 1);
  for (int y : s1.labels) CHECK(y == 1);

  const Classifier h = make_regular_classifier(2, 1, 1.0, 7);
  const auto a = sample_noiseless(h, 200, 9), b = sample_noiseless(h, 200, 9);
  CHECK(a.coords == b.coords);
  CHECK(a.labels == b.labels);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(h(a.point(i)) == a.labels[i]);

  const Classifier half = const_horizon(2, 0.5);
  const auto big = sample_noiseless(half, 100000, 21);
  double mean = 0.0;
  for (int y : big.labels) mean += y;
  mean /= 100000.0;
  CHECK(std::abs(mean - 0.5) < 0.005);
  CHECK_THROWS_AS(sample_noiseless(half, 0, 1), RangeError);
}

TEST_CASE("sample CSV round trip") {
  const Classifier h = make_regular_classifier(3, 2, 1.0, 4);
  const auto s = sample_noiseless(h, 40, 2);
  std::stringstream ss;
  write_sample_csv(ss, s);
  const std::string text = ss.str();
  CHECK(text.rfind("x_1,x_2,x_3,label\n", 0) == 0);
  const auto back = read_sample_csv(ss);
  CHECK(back.dim == 3);
  CHECK(back.coords == s.coords);
  CHECK(back.labels == s.labels);
  std::stringstream bad("x_1,label\n0.5,2\n");
  CHECK_THROWS_AS(read_sample_csv(bad), FormatError);
}

TEST_CASE("classifier JSON round trip") {
  const auto c = make_regular_classifier(3, 3, 2.0, 8);
  const auto back = classifier_from_json(to_json(c));
  REQUIRE(back.pieces().size() == 3);
  Rng rng = make_rng(5);
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> x{uniform01(rng), uniform01(rng), uniform01(rng)};
    REQUIRE(back(x) == c(x));
  }
  const BumpFamily fam{1, 16};
  const HorizonClassifier bh(Boundary::bump(BumpMember::build(fam, {2, 3}, {1, -1}, 0.5)));
  const auto bj = classifier_from_json(to_json(bh));
  const std::vector<double> x{0.16, 0.2};
  CHECK(bj(x) == bh(x));
  CHECK_THROWS_AS(to_json(HorizonClassifier(Boundary::function(1, [](std::span<const double>) { return 0.5; }))),
                  FormatError);
  CHECK_THROWS_AS(classifier_from_json(nlohmann::json{{"dim", 2}}), FormatError);
}

TEST_CASE("function classifiers must be binary") {
  const Classifier bad = Classifier::function(2, [](std::span<const double>) { return 3; });
  const std::vector<double> x{0.5, 0.5};
  CHECK_THROWS_AS(bad(x), RangeError);
}
