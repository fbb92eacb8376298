#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "barronlab/barron.hpp"

using namespace barronlab;

namespace {

// Direct complex summation of sum_n c_n exp(2 pi i <n/2, x>).
std::complex<double> naive_sum(const BarronFourierRep::CoeffMap& coeffs, std::span<const double> x) {
  std::complex<double> s = 0.0;
  for (const auto& [n, c] : coeffs) {
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += 0.5 * n[i] * x[i];
    s += c * std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * dot));
  }
  return s;
}

BarronFourierRep::CoeffMap random_hermitian(std::size_t dim, int pairs, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  BarronFourierRep::CoeffMap c;
  c[Frequency(dim, 0)] = 0.3;
  while (static_cast<int>(c.size()) < 2 * pairs + 1) {
    Frequency n(dim);
    for (auto& v : n) v = static_cast<int>(uniform_index(rng, 13)) - 6;
    Frequency neg(n);
    for (auto& v : neg) v = -v;
    if (n == neg || c.count(n)) continue;
    const std::complex<double> z(0.1 * uniform01(rng) - 0.05, 0.1 * uniform01(rng) - 0.05);
    c[n] = z;
    c[neg] = std::conj(z);
  }
  return c;
}

}  // namespace

TEST_CASE("weighted Fourier moment") {
  CHECK(weighted_fourier_moment(BarronFourierRep::CoeffMap{{{0}, 0.5}}) == 0.5);
  CHECK(weighted_fourier_moment(BarronFourierRep::CoeffMap{}) == 0.0);
  BarronFourierRep::CoeffMap c{{{3, 4}, 0.1}, {{-3, -4}, 0.1}};
  CHECK(weighted_fourier_moment(c) == doctest::Approx(1.2).epsilon(1e-15));

  const auto r = random_hermitian(2, 10, 4);
  BarronFourierRep::CoeffMap scaled = r;
  for (auto& [n, v] : scaled) v *= 0.37;
  CHECK(weighted_fourier_moment(scaled) == doctest::Approx(0.37 * weighted_fourier_moment(r)).epsilon(1e-15));
}

TEST_CASE("evaluation") {
  const auto constant = BarronFourierRep::create(2, 1.0, {{{0, 0}, 0.3}});
  for (double a : {0.0, 0.4, 1.0}) {
    const std::vector<double> x{a, 1.0 - a};
    CHECK(constant(x) == doctest::Approx(0.3).epsilon(1e-15));
  }

  const auto cosine = BarronFourierRep::create(2, 1.0, {{{1, 0}, 0.25}, {{-1, 0}, 0.25}});
  const std::vector<double> x0{0.0, 0.7};
  CHECK(cosine(x0) == doctest::Approx(0.5).epsilon(1e-15));
  const std::vector<double> x1{0.5, 0.2};
  CHECK(std::abs(cosine(x1)) < 1e-15);  // 0.5 cos(pi / 2)

  const std::vector<double> outside{1.2, 0.0};
  CHECK_THROWS_AS(cosine(outside), DomainError);
  const std::vector<double> short_point{0.5};
  CHECK_THROWS_AS(cosine(short_point), DomainError);
}

TEST_CASE("random 20-term rep matches direct summation and stays real") {
  const auto coeffs = random_hermitian(2, 10, 17);
  REQUIRE(coeffs.size() == 21);
  const auto rep = BarronFourierRep::create(2, weighted_fourier_moment(coeffs), coeffs);
  Rng rng = make_rng(3);
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> x{uniform01(rng), uniform01(rng)};
    const auto z = naive_sum(coeffs, x);
    CHECK(std::abs(rep.eval_complex(x).imag()) < 1e-10);
    if (i < 100) CHECK(std::abs(rep(x) - z.real()) < 1e-12);
  }
}

TEST_CASE("invariants are enforced on construction") {
  CHECK_THROWS_AS(BarronFourierRep::create(1, 1.0, {{{1}, {0.1, 0.1}}, {{-1}, {0.1, 0.1}}}), FormatError);
  CHECK_THROWS_AS(BarronFourierRep::create(1, 1.0, {{{2}, 0.1}}), FormatError);
  CHECK_THROWS_AS(BarronFourierRep::create(1, 0.5, {{{0}, 0.6}}), FormatError);
  CHECK_THROWS_AS(BarronFourierRep::create(2, 1.0, {{{0}, 0.1}}), FormatError);
  // kappa_rep relaxes the moment bound.
  CHECK_NOTHROW(BarronFourierRep::create(1, 0.5, {{{0}, 0.6}}, 2.0));
  // Zero coefficients are dropped, so a lone zero does not need a mirror.
  CHECK(BarronFourierRep::create(1, 1.0, {{{3}, 0.0}}).coeffs().empty());
}

TEST_CASE("boundary sampler") {
  const auto flat = sample_boundary_rep(2, 1.0, 0, 4, 1);
  const std::vector<double> x{0.3, 0.9};
  CHECK(flat(x) == doctest::Approx(0.5).epsilon(1e-15));

  const auto a = sample_boundary_rep(2, 2.0, 5, 4, 42);
  const auto b = sample_boundary_rep(2, 2.0, 5, 4, 42);
  CHECK(a.coeffs() == b.coeffs());
  CHECK(sample_boundary_rep(2, 2.0, 5, 4, 43).coeffs() != a.coeffs());

  CHECK_THROWS_AS(sample_boundary_rep(1, 0.4, 2, 3, 0), InfeasibleError);

  for (std::size_t dim : {1u, 2u}) {
    for (double budget : {0.5, 1.0, 3.0, 10.0}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto rep = sample_boundary_rep(dim, budget, 6, 5, seed);
        CHECK(weighted_fourier_moment(rep) <= budget);
        CHECK(offset_l1_mass(rep.coeffs()) <= 0.5);
        const int g = 33;
        const int total = dim == 1 ? g : g * g;
        for (int t = 0; t < total; ++t) {
          std::vector<double> p(dim);
          p[0] = (t % g) / 32.0;
          if (dim == 2) p[1] = (t / g) / 32.0;
          const double v = rep(p);
          REQUIRE(v >= 0.0);
          REQUIRE(v <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("JSON round trip re-verifies invariants") {
  const auto rep = sample_boundary_rep(2, 3.0, 4, 4, 8);
  const auto back = barron_rep_from_json(to_json(rep));
  CHECK(back.coeffs() == rep.coeffs());
  CHECK(back.budget() == rep.budget());

  auto j = to_json(rep);
  j["coeffs"][1][2] = j["coeffs"][1][2].get<double>() + 0.01;  // break the Hermitian pairing
  CHECK_THROWS_AS(barron_rep_from_json(j), FormatError);
  CHECK_THROWS_AS(barron_rep_from_json(nlohmann::json{{"dim", 1}}), FormatError);
}
