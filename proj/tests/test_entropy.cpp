#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "barronlab/entropy.hpp"
#include "barronlab/stats.hpp"

using namespace barronlab;

namespace {

FunctionCloud line_cloud(const std::vector<double>& pts) {
  std::vector<std::vector<double>> d(pts.size(), std::vector<double>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) d[i][j] = std::abs(pts[i] - pts[j]);
  return FunctionCloud::from_matrix(d);
}

std::vector<double> random_points(std::size_t n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<double> p(n);
  for (auto& v : p) v = uniform01(rng);
  return p;
}

// Largest subset with pairwise distances > eps, by enumerating all subsets.
std::size_t exhaustive_packing(const FunctionCloud& c, double eps) {
  const std::size_t n = c.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1u) && (mask >> j & 1u) && !(c.distance(i, j) > eps)) ok = false;
    if (ok) best = k;
  }
  return best;
}

// Fewest closed eps-intervals (any centres) covering points on a line; the
// left-to-right sweep is optimal.
std::size_t external_cover_1d(std::vector<double> pts, double eps) {
  std::sort(pts.begin(), pts.end());
  std::size_t count = 0;
  double reach = -1e300;
  for (double p : pts) {
    if (p > reach) {
      ++count;
      reach = p + 2.0 * eps;
    }
  }
  return count;
}

double ln_binomial(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

}  // namespace

TEST_CASE("greedy packing examples") {
  const FunctionCloud c = FunctionCloud::from_matrix({{0, 0.3, 0.3}, {0.3, 0, 0.3}, {0.3, 0.3, 0}});
  CHECK(greedy_packing(c, 0.2).size() == 3);
  CHECK(greedy_packing(c, 0.4).size() == 1);
  CHECK(greedy_packing(c, 0.4).front() == 0);
  CHECK_THROWS_AS(FunctionCloud::from_matrix({{0, 1}, {2, 0}}), RangeError);
  CHECK_THROWS_AS(FunctionCloud::from_matrix({{0.5}}), RangeError);
}

TEST_CASE("greedy packing against exhaustive search") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pts = random_points(12, seed);
    const auto c = line_cloud(pts);
    for (double eps : {0.05, 0.1, 0.2}) {
      const auto sel = greedy_packing(c, eps);
      for (std::size_t i = 0; i < sel.size(); ++i)
        for (std::size_t j = i + 1; j < sel.size(); ++j) REQUIRE(c.distance(sel[i], sel[j]) > eps);
      for (std::size_t k = 0; k < c.size(); ++k) {
        bool near = false;
        for (auto s : sel) near = near || c.distance(k, s) <= eps;
        REQUIRE(near);
      }
      const std::size_t best = exhaustive_packing(c, eps);
      CHECK(sel.size() <= best);
      CHECK(2 * sel.size() >= best);

      // Sandwich for the internal covering estimate.
      const std::size_t v = covering_estimate(c, eps);
      CHECK(exhaustive_packing(c, 2 * eps) <= v);
      CHECK(v <= best);
      // Packing versus external covering numbers.
      CHECK(best <= external_cover_1d(pts, eps / 2));
      CHECK(external_cover_1d(pts, eps) <= best);
    }
  }
}

TEST_CASE("packing entropy curve") {
  const auto single = FunctionCloud::from_matrix({{0.0}});
  for (const auto& p : packing_entropy_curve(single, {1.0, 0.1, 0.01})) CHECK(p.ln_packing == 0.0);

  // Bumps at one common exact distance delta: all pack below delta, one above.
  const BumpFamily f{1, 16};
  std::vector<BumpMember> members;
  for (std::int64_t c = 0; c < 6; ++c) members.push_back(BumpMember::build(f, {c}, {1}, 1.0));
  const auto cloud = FunctionCloud::from_bump_members(members);
  const double delta = cloud.distance(0, 1);
  CHECK(delta > 0.0);
  const auto curve = packing_entropy_curve(cloud, {2 * delta, 1.01 * delta, 0.99 * delta, 0.5 * delta});
  CHECK(curve[0].ln_packing == 0.0);
  CHECK(curve[1].ln_packing == 0.0);
  CHECK(curve[2].ln_packing == doctest::Approx(std::log(6.0)));
  CHECK(curve[3].ln_packing == doctest::Approx(std::log(6.0)));

  const auto c = line_cloud(random_points(40, 3));
  const auto cv = packing_entropy_curve(c, {0.5, 0.2, 0.1, 0.05, 0.01});
  for (std::size_t i = 1; i < cv.size(); ++i) CHECK(cv[i].ln_packing >= cv[i - 1].ln_packing);
  CHECK_THROWS_AS(packing_entropy_curve(c, {0.1, 0.2}), RangeError);
  CHECK_THROWS_AS(packing_entropy_curve(c, {0.0}), RangeError);
}

TEST_CASE("function clouds from grids") {
  const std::vector<RealFn> fs{[](std::span<const double>) { return 0.0; },
                               [](std::span<const double> x) { return x[0]; }};
  const auto l1 = FunctionCloud::from_functions(1, fs, {CloudMetric::Kind::L1Grid, 1000});
  CHECK(l1.distance(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  const auto linf = FunctionCloud::from_functions(1, fs, {CloudMetric::Kind::LinfGrid, 1000});
  CHECK(linf.distance(0, 1) == doctest::Approx(0.9995).epsilon(1e-12));
}

TEST_CASE("Fourier net plan") {
  CHECK(fourier_net_plan(0.1, 1).truncation == 30);
  CHECK(fourier_net_plan(0.1, 2).lambda == 1.0);
  const auto p = fourier_net_plan(0.1, 1);
  CHECK(p.lambda == 1.5);
  CHECK(p.terms == 21);
  CHECK(p.box_size == 121.0);  // k in [-2N, 2N]
  CHECK(p.quantization_step == doctest::Approx(0.1 / 63.0));
  CHECK(p.coefficient_radius == 2.0);

  double lse = 0.0;
  {
    std::vector<double> terms;
    for (int l = 0; l <= 21; ++l) terms.push_back(ln_binomial(121, l));
    const double mx = *std::max_element(terms.begin(), terms.end());
    for (double t : terms) lse += std::exp(t - mx);
    lse = mx + std::log(lse);
  }
  CHECK(p.ln_support_sets == doctest::Approx(lse).epsilon(1e-10));
  CHECK(p.ln_cardinality_bound == doctest::Approx(lse + 42.0 * std::log(7.0 * 21 / 0.1)).epsilon(1e-10));

  std::vector<double> ratio;
  for (double eps : {0.4, 0.2, 0.1}) {
    const auto q = fourier_net_plan(eps, 1);
    ratio.push_back(q.ln_cardinality_bound / (std::pow(eps, -1.0 / q.lambda) * (1.0 + std::log(1.0 / eps))));
  }
  CHECK(*std::max_element(ratio.begin(), ratio.end()) / *std::min_element(ratio.begin(), ratio.end()) < 2.0);

  CHECK_THROWS_AS(fourier_net_plan(0.5, 1), RangeError);
  CHECK_THROWS_AS(fourier_net_plan(0.0, 1), RangeError);
  CHECK_NOTHROW(fourier_net_plan(0.5, 1, 1.0, 2.0));
}

TEST_CASE("covering with the Fourier net") {
  const auto plan = fourier_net_plan(0.2, 1);
  const TrigSeries zero(1, {});
  const auto r0 = cover_with_fourier_net(plan, {zero});
  CHECK(r0.records[0].sup_distance == 0.0);
  CHECK(r0.records[0].kept_terms == 0);

  const TrigSeries single(1, {{{1}, 0.5}});
  const auto r1 = cover_with_fourier_net(plan, {single});
  CHECK(r1.records[0].sup_distance <= plan.quantization_step);
  CHECK(r1.passed == 1);

  std::vector<TrigSeries> members;
  for (std::uint64_t s = 0; s < 50; ++s) {
    members.push_back(sample_trig_series(1, 1.0, 12, 20, s));
    REQUIRE(members.back().weighted_mass() <= 1.0 + 1e-12);
  }
  const auto r = cover_with_fourier_net(plan, members, 4096);
  CHECK(r.pass_rate == 1.0);
  CHECK(r.max_distance <= 0.2);

  const TrigSeries heavy(1, {{{3}, 0.5}});  // mass 2
  CHECK_THROWS_AS(cover_with_fourier_net(plan, {heavy}), MembershipError);

  // Frequencies beyond the truncation are dropped; the approximant keeps at most n terms.
  const TrigSeries far(1, {{{40}, 0.01}, {{2}, 0.1}});
  const auto approx = net_approximant(plan, far);
  CHECK(approx.coeffs().size() == 1);
  CHECK(approx.coeffs().count(Frequency{2}) == 1);
}

TEST_CASE("bitsets and separated families") {
  const Bitset a{0b1011u}, b{0b0110u};
  CHECK(popcount(a) == 3);
  CHECK(symmetric_difference(a, b) == 3);
  CHECK(bitset_items(a, 64) == std::vector<std::int64_t>{0, 1, 3});

  const auto one = separated_family(10, 1, 3, 5);
  CHECK(one.subsets.size() == 1);

  const auto distinct = separated_family(16, 16, 0, 5);
  CHECK(distinct.subsets.size() == 16);

  int good = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fam = separated_family(64, 256, 4, seed);
    for (std::size_t i = 0; i < fam.subsets.size(); ++i)
      for (std::size_t j = i + 1; j < fam.subsets.size(); ++j)
        REQUIRE(symmetric_difference(fam.subsets[i], fam.subsets[j]) > 4);
    if (fam.subsets.size() >= 64) ++good;
  }
  CHECK(good >= 18);
  CHECK_THROWS_AS(separated_family(4, 2, 4, 1), RangeError);
}

TEST_CASE("bump packing study in one dimension") {
  const auto study = bump_packing_study(1, {16, 32}, 1.0, 3);
  REQUIRE(study.levels.size() == 2);
  for (const auto& lv : study.levels) {
    CHECK(lv.count >= 2);
    CHECK(lv.min_distance > lv.separation);
    CHECK(lv.max_quadrature_rel_error < 1e-6);
  }
  CHECK(study.theory_slope == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(study.slope - study.theory_slope) <= 0.5);
}

TEST_CASE("critical radius solver") {
  CHECK(solve_eps_n({1.0, 1.0, 0.0}, 8.0) == doctest::Approx(0.5).epsilon(1e-10));

  // Dense scan oracle for n = 1.
  const EntropyModel v{1.0, 1.0, 1.0};
  const double root = solve_eps_n(v, 1.0);
  double best = 0.0, best_gap = 1e300;
  for (int i = 1; i <= 400000; ++i) {
    const double e = 1e-5 * i;
    const double gap = std::abs(e * e - v(e));
    if (gap < best_gap) {
      best_gap = gap;
      best = e;
    }
  }
  CHECK(std::abs(root - best) < 2e-5);
  CHECK(std::abs(root * root - v(root)) < 1e-9 * v(root));

  std::vector<double> ratios;
  double prev = 1e300;
  for (double n = 100; n <= 1e6; n *= 10) {
    const double e = solve_eps_n(v, n);
    CHECK(e <= prev);
    prev = e;
    ratios.push_back(e / std::pow(std::log(2 * n) / n, 1.0 / 3.0));
  }
  CHECK(*std::max_element(ratios.begin(), ratios.end()) / *std::min_element(ratios.begin(), ratios.end()) < 3.0);
  for (int n = 1; n < 50; ++n) CHECK(solve_eps_n(v, n + 1) <= solve_eps_n(v, n));
  CHECK_THROWS_AS(solve_eps_n(v, 0.5), RangeError);
}

TEST_CASE("rate exponents") {
  const auto r2 = rate_exponents(2);
  CHECK(r2.lower_exp == Rational{3, 5});
  CHECK(r2.log_exp_lower == Rational{21, 10});
  CHECK(r2.log_exp_upper == Rational{7, 5});
  CHECK(r2.alpha_beta == Rational{3, 2});
  CHECK(std::abs(rate_exponents(10000).lower_exp.value() - 1.0 / 3.0) < 1e-4);
  CHECK_THROWS_AS(rate_exponents(1), RangeError);
  CHECK(Rational::make(4, -6) == Rational{-2, 3});
  const auto j = to_json(r2);
  CHECK(j["lower_exp"]["num"] == 3);
  CHECK(j["lower_exp"]["den"] == 5);
}

TEST_CASE("kappa bounds") {
  const auto [k1, k2] = kappa_bounds({1, 1, 0, 0, 1}, 4.0);
  CHECK(k1 == doctest::Approx(0.5 / std::log(8.0)).epsilon(1e-14));
  CHECK(k1 == doctest::Approx(0.2404).epsilon(1e-3));
  for (double alpha : {0.5, 1.0, 2.0})
    for (double beta : {0.25, 0.5})
      for (double m : {10.0, 1000.0, 1e5}) {
        const auto [a, b] = kappa_bounds({alpha, beta, 0.5, 1.0, 1.0}, m);
        CHECK(a <= b);
      }

  // Barron parameters for d = 3 give the m-exponent of the rate calculator.
  const double ab = rate_exponents(3).alpha_beta.value();
  CHECK(ab == 1.0);
  const EntropyRateParams p{ab, ab, 0.0, 1.0, 1.0};
  const double lnm = std::log(200.0 / 100.0);
  const auto [u1, u2] = kappa_bounds(p, 100.0);
  const auto [w1, w2] = kappa_bounds(p, 200.0);
  (void)u1;
  (void)w1;
  const double log_factor = 1.5 * std::log(std::log(400.0) / std::log(200.0));
  CHECK((std::log(w2 / u2) - log_factor) / lnm == doctest::Approx(-rate_exponents(3).lower_exp.value()));
  CHECK_THROWS_AS(kappa_bounds({0.5, 1.0, 0, 0, 1}, 4.0), RangeError);
}

TEST_CASE("network entropy bound") {
  CHECK(nn_entropy_bound(1.0, 1.0, 1.0, 1.0) == 10.0);
  CHECK(nn_entropy_bound(0.1, 3.0, 200.0, 2.5) > 2.0 * nn_entropy_bound(0.1, 3.0, 100.0, 2.5));
  CHECK(nn_entropy_bound(0.1 / std::exp(1.0), 3.0, 50.0, 2.5) ==
        doctest::Approx(nn_entropy_bound(0.1, 3.0, 50.0, 2.5) + 50.0).epsilon(1e-13));
  CHECK_THROWS_AS(nn_entropy_bound(0.0, 1.0, 1.0, 1.0), RangeError);
  CHECK_THROWS_AS(nn_entropy_bound(1.5, 1.0, 1.0, 1.0), RangeError);
}
