#include "barronlab/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "barronlab/quadrature.hpp"
#include "barronlab/stats.hpp"

namespace barronlab {

// ------------------------------------------------------------ packings

FunctionCloud FunctionCloud::from_matrix(std::vector<std::vector<double>> distances) {
  const std::size_t n = distances.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i].size() != n) throw RangeError("distance matrix is not square");
    if (distances[i][i] != 0.0) throw RangeError("distance matrix has a nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = distances[i][j];
      if (!(v >= 0.0) || !std::isfinite(v)) throw RangeError("distances must be finite and nonnegative");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (distances[i][j] != distances[j][i]) throw RangeError("distance matrix is not symmetric");
  }
  FunctionCloud c;
  c.dist_ = std::move(distances);
  return c;
}

FunctionCloud FunctionCloud::from_functions(std::size_t dim, const std::vector<RealFn>& members,
                                            CloudMetric metric) {
  if (metric.resolution < 1) throw ResolutionError("cloud grid resolution must be positive");
  const std::size_t n = members.size();
  const std::size_t res = static_cast<std::size_t>(metric.resolution);
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) total *= res;

  // Sample every member once on the midpoint grid.
  std::vector<std::vector<double>> values(n, std::vector<double>(total));
  Point x(dim);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = dim; k-- > 0;) {
      x[k] = (static_cast<double>(rem % res) + 0.5) / static_cast<double>(res);
      rem /= res;
    }
    for (std::size_t i = 0; i < n; ++i) values[i][flat] = members[i](x);
  }

  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < total; ++t) {
        const double diff = std::abs(values[i][t] - values[j][t]);
        acc = metric.kind == CloudMetric::Kind::L1Grid ? acc + diff : std::max(acc, diff);
      }
      if (metric.kind == CloudMetric::Kind::L1Grid) acc /= static_cast<double>(total);
      d[i][j] = d[j][i] = acc;
    }
  }
  return from_matrix(std::move(d));
}

FunctionCloud FunctionCloud::from_bump_members(const std::vector<BumpMember>& members) {
  const std::size_t n = members.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = members[i].l1_distance(members[j]);
  return from_matrix(std::move(d));
}

std::vector<std::size_t> greedy_packing(const FunctionCloud& cloud, double eps) {
  if (!(eps > 0.0)) throw RangeError("packing radius must be positive");
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    bool far = true;
    for (std::size_t s : selected) {
      if (cloud.distance(i, s) <= eps) {
        far = false;
        break;
      }
    }
    if (far) selected.push_back(i);
  }
  return selected;
}

std::size_t covering_estimate(const FunctionCloud& cloud, double eps) {
  if (!(eps > 0.0)) throw RangeError("covering radius must be positive");
  const std::size_t n = cloud.size();
  std::vector<bool> covered(n, false);
  std::size_t remaining = n, centers = 0;
  while (remaining > 0) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t gain = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (!covered[j] && cloud.distance(i, j) <= eps) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!covered[j] && cloud.distance(best, j) <= eps) {
        covered[j] = true;
        --remaining;
      }
    }
    ++centers;
  }
  return std::min(centers, greedy_packing(cloud, eps).size());
}

std::vector<EntropyPoint> packing_entropy_curve(const FunctionCloud& cloud,
                                                const std::vector<double>& eps_list) {
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw RangeError("packing radii must be positive");
    if (i > 0 && eps_list[i] > eps_list[i - 1]) throw RangeError("packing radii must be sorted descending");
  }
  std::vector<EntropyPoint> out;
  std::size_t best = 0;
  for (double eps : eps_list) {
    best = std::max(best, greedy_packing(cloud, eps).size());
    out.push_back({eps, best > 0 ? std::log(static_cast<double>(best)) : 0.0});
  }
  return out;
}

// ------------------------------------------------- sparse Fourier net

TrigSeries::TrigSeries(std::size_t dim, CoeffMap coeffs) : dim_(dim) {
  for (auto& [k, c] : coeffs) {
    if (k.size() != dim) throw FormatError("frequency has the wrong dimension");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw FormatError("coefficient is not finite");
    if (c != Complex(0.0, 0.0)) coeffs_.emplace(k, c);
  }
}

Complex TrigSeries::operator()(std::span<const double> x) const {
  if (x.size() != dim_) throw DomainError("point has the wrong dimension");
  Complex s(0.0, 0.0);
  for (const auto& [k, c] : coeffs_) {
    double phase = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) phase += k[i] * x[i];
    s += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return s;
}

namespace {

int linf(const Frequency& k) {
  int m = 0;
  for (int v : k) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

double TrigSeries::weighted_mass() const {
  double s = 0.0;
  for (const auto& [k, c] : coeffs_) s += (1.0 + linf(k)) * std::abs(c);
  return s;
}

TrigSeries sample_trig_series(std::size_t dim, double budget, int num_terms, int max_freq,
                              std::uint64_t seed) {
  if (!(budget > 0.0) || num_terms < 0 || max_freq < 0) throw RangeError("bad trig series parameters");
  Rng rng = make_rng(seed, 0x7216);
  const std::uint64_t side = 2 * static_cast<std::uint64_t>(max_freq) + 1;
  TrigSeries::CoeffMap raw;
  for (int t = 0; t < num_terms; ++t) {
    Frequency k(dim);
    for (auto& v : k) v = static_cast<int>(uniform_index(rng, side)) - max_freq;
    const double mag = 0.05 + uniform01(rng);
    raw[k] += std::polar(mag, 2.0 * std::numbers::pi * uniform01(rng));
  }
  double mass = 0.0;
  for (const auto& [k, c] : raw) mass += (1.0 + linf(k)) * std::abs(c);
  const double fill = 0.5 + 0.5 * uniform01(rng);
  if (mass > 0.0) {
    const double t = fill * budget / mass * (1.0 - 1e-12);
    for (auto& [k, c] : raw) c *= t;
  }
  return TrigSeries(dim, std::move(raw));
}

namespace {

// ln sum_{l=0}^{n} binom(M, l) for real M >= 0 by log-sum-exp over the terms.
double ln_binomial_prefix(double M, std::int64_t n) {
  const double cap = std::floor(M);
  if (static_cast<double>(n) >= cap) return cap * std::numbers::ln2;
  const double lgM = std::lgamma(M + 1.0);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t l = 0; l <= n; ++l) {
    const double dl = static_cast<double>(l);
    terms.push_back(lgM - std::lgamma(dl + 1.0) - std::lgamma(M - dl + 1.0));
  }
  const double top = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += std::exp(t - top);
  return top + std::log(s);
}

}  // namespace

FourierNetPlan fourier_net_plan(double eps, std::size_t dim, double c1, double budget) {
  if (dim < 1) throw RangeError("dimension must be at least 1");
  if (!(c1 > 0.0)) throw RangeError("C1 must be positive");
  if (!(budget > 0.0)) throw RangeError("budget must be positive");
  const double e = eps / budget;
  if (!(e > 0.0) || !(e < 0.5))
    throw RangeError(fmt::format("eps / C = {} is outside (0, 1/2)", e));
  FourierNetPlan p;
  p.eps = eps;
  p.dim = dim;
  p.c1 = c1;
  p.budget = budget;
  p.truncation = static_cast<int>(std::ceil(3.0 / e));
  const double d = static_cast<double>(dim);
  p.lambda = 0.5 + 1.0 / d;
  p.terms = static_cast<std::int64_t>(std::ceil(std::pow(std::pow(3.0, d + 1.0) * c1 / e, 1.0 / p.lambda)));
  p.box_size = std::pow(4.0 * p.truncation + 1.0, d);
  p.quantization_step = eps / (3.0 * static_cast<double>(p.terms));
  p.coefficient_radius = 2.0 * budget;
  p.ln_support_sets = ln_binomial_prefix(p.box_size, p.terms);
  const double n = static_cast<double>(p.terms);
  p.ln_cardinality_bound = p.ln_support_sets + 2.0 * n * std::log(7.0 * n / e);
  if (p.truncation < 7 || p.terms < 1 || !(p.quantization_step > 0.0))
    throw InternalError("net plan invariants violated");
  return p;
}

TrigSeries net_approximant(const FourierNetPlan& plan, const TrigSeries& f) {
  if (f.dim() != plan.dim) throw DomainError("series and plan differ in dimension");
  std::vector<std::pair<Frequency, Complex>> kept;
  for (const auto& [k, c] : f.coeffs())
    if (linf(k) <= plan.truncation) kept.emplace_back(k, c);
  // Stable sort keeps frequency order among equal magnitudes.
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return std::abs(a.second) > std::abs(b.second); });
  if (static_cast<std::int64_t>(kept.size()) > plan.terms) kept.resize(static_cast<std::size_t>(plan.terms));

  const double h = plan.quantization_step;
  TrigSeries::CoeffMap out;
  for (auto& [k, c] : kept) {
    Complex v = c;
    if (std::abs(v) > plan.coefficient_radius) v *= plan.coefficient_radius / std::abs(v);
    out[k] = Complex(std::round(v.real() / h) * h, std::round(v.imag() / h) * h);
  }
  return TrigSeries(plan.dim, std::move(out));
}

CoverReport cover_with_fourier_net(const FourierNetPlan& plan, const std::vector<TrigSeries>& members,
                                   int grid_resolution) {
  if (grid_resolution < 1) throw ResolutionError("grid resolution must be positive");
  CoverReport rep;
  rep.plan = plan;
  rep.grid_resolution = grid_resolution;
  const std::size_t d = plan.dim;
  const std::size_t res = static_cast<std::size_t>(grid_resolution);
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= res;

  for (std::size_t m = 0; m < members.size(); ++m) {
    const TrigSeries& f = members[m];
    if (f.dim() != d) throw DomainError("series and plan differ in dimension");
    const double mass = f.weighted_mass();
    if (mass > plan.budget * (1.0 + 1e-12))
      throw MembershipError(fmt::format("member {} has weighted mass {} above {}", m, mass, plan.budget));
    const TrigSeries g = net_approximant(plan, f);

    // The difference is itself a trigonometric series; evaluate it directly.
    TrigSeries::CoeffMap diff = f.coeffs();
    for (const auto& [k, c] : g.coeffs()) diff[k] -= c;
    const TrigSeries delta(d, std::move(diff));

    double sup = 0.0;
    Point x(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (std::size_t k = d; k-- > 0;) {
        x[k] = static_cast<double>(rem % res) / static_cast<double>(res);
        rem /= res;
      }
      sup = std::max(sup, std::abs(delta(x)));
    }
    CoverRecord r{sup, g.coeffs().size(), sup <= plan.eps};
    if (r.pass) ++rep.passed;
    rep.max_distance = std::max(rep.max_distance, sup);
    rep.records.push_back(r);
  }
  rep.pass_rate = members.empty() ? 1.0 : static_cast<double>(rep.passed) / members.size();
  return rep;
}

// ---------------------------------------------------- separated subsets

std::size_t popcount(const Bitset& a) {
  std::size_t s = 0;
  for (auto w : a) s += static_cast<std::size_t>(std::popcount(w));
  return s;
}

std::size_t symmetric_difference(const Bitset& a, const Bitset& b) {
  if (a.size() != b.size()) throw RangeError("bitsets differ in length");
  std::size_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  return s;
}

std::vector<std::int64_t> bitset_items(const Bitset& a, std::size_t n_items) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < n_items; ++i)
    if ((a[i / 64] >> (i % 64)) & 1u) out.push_back(static_cast<std::int64_t>(i));
  return out;
}

SeparatedFamily separated_family(std::size_t n_items, std::size_t target_count, std::size_t r,
                                 std::uint64_t seed, std::size_t max_tries) {
  if (n_items == 0 || r >= n_items) throw RangeError("separation radius must be below the item count");
  SeparatedFamily fam;
  fam.n_items = n_items;
  fam.radius = r;
  Rng rng = make_rng(seed, 0x5E9A);
  const std::size_t words = (n_items + 63) / 64;
  const std::size_t tail = n_items % 64;
  Bitset cand(words);
  while (fam.subsets.size() < target_count && fam.tries < max_tries) {
    ++fam.tries;
    for (auto& w : cand) w = rng();
    if (tail) cand.back() &= (std::uint64_t{1} << tail) - 1;
    bool ok = true;
    for (const auto& s : fam.subsets) {
      if (symmetric_difference(s, cand) <= r) {
        ok = false;
        break;
      }
    }
    if (ok) fam.subsets.push_back(cand);
  }
  return fam;
}

// ------------------------------------------------ bump packing study

namespace {

struct SignedSubset {
  Bitset support;
  Bitset negative;  // cells carrying sign -1
};

// Exact distance in lattice units: sum over shared cells of |theta - theta'| plus |support delta|.
std::size_t lattice_distance(const SignedSubset& a, const SignedSubset& b) {
  std::size_t sym = 0, mismatch = 0;
  for (std::size_t i = 0; i < a.support.size(); ++i) {
    sym += std::popcount(a.support[i] ^ b.support[i]);
    mismatch += std::popcount(a.support[i] & b.support[i] & (a.negative[i] ^ b.negative[i]));
  }
  return sym + 2 * mismatch;
}

}  // namespace

BumpPackingStudy bump_packing_study(std::size_t dim, const std::vector<int>& grid_sizes, double budget,
                                    std::uint64_t seed, std::size_t quadrature_pairs,
                                    std::size_t count_cap) {
  if (!(budget > 0.0)) throw RangeError("budget must be positive");
  BumpPackingStudy study;
  study.dim = dim;
  study.budget = budget;
  study.theory_slope = 2.0 * dim / (2.0 + dim);

  for (std::size_t li = 0; li < grid_sizes.size(); ++li) {
    const int N = grid_sizes[li];
    if (N < 16 || N % 16 != 0) throw RangeError(fmt::format("grid size {} must be a positive multiple of 16", N));
    const BumpFamily fam{dim, N};
    const std::size_t n = static_cast<std::size_t>(fam.cell_count());
    const std::size_t r = n / 16;
    const std::size_t k = n / 4;
    std::size_t target = k >= 63 ? std::numeric_limits<std::size_t>::max() : (std::size_t{1} << k);
    if (count_cap > 0) target = std::min(target, count_cap);
    const std::uint64_t level_seed = mix_seed(seed, static_cast<std::uint64_t>(N));
    const int res = default_moment_resolution(N);

    // Calibrate the threshold on fully populated lattices with random signs.
    std::vector<std::int64_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<std::int64_t>(i);
    Rng cal = make_rng(level_seed, 0xCA1);
    double mean = 0.0;
    const int cal_draws = 32;
    for (int t = 0; t < cal_draws; ++t) {
      std::vector<int> signs(n);
      for (auto& s : signs) s = (cal() >> 63) ? 1 : -1;
      mean += estimate_bump_fourier_moment(BumpMember::build(fam, all, signs, 1.0), res, false).moment;
    }
    mean /= cal_draws;

    BumpPackingLevel lvl;
    lvl.grid_size = N;
    lvl.target = target;
    lvl.moment_threshold = 2.0 * mean;
    lvl.scale = scale_for_budget(budget, lvl.moment_threshold);
    lvl.separation = lvl.scale * kBumpL1 * std::pow(static_cast<double>(N), -static_cast<double>(dim)) *
                     static_cast<double>(r);

    const SeparatedFamily sep = separated_family(n, target, r, mix_seed(level_seed, 1), 50 * target + 1000);
    std::vector<SignedSubset> members;
    std::vector<std::vector<int>> member_signs;
    members.reserve(sep.subsets.size());
    double attempts = 0.0;
    for (std::size_t i = 0; i < sep.subsets.size(); ++i) {
      const auto cells = bitset_items(sep.subsets[i], n);
      const SignSelection sel = select_signs(fam, cells, mix_seed(level_seed, 2 + i), lvl.moment_threshold, res);
      attempts += sel.attempts;
      SignedSubset m{sep.subsets[i], Bitset(sep.subsets[i].size(), 0)};
      for (std::size_t c = 0; c < cells.size(); ++c)
        if (sel.signs[c] < 0) m.negative[cells[c] / 64] |= std::uint64_t{1} << (cells[c] % 64);
      members.push_back(std::move(m));
      member_signs.push_back(sel.signs);
    }
    lvl.count = members.size();
    lvl.ln_count = std::log(static_cast<double>(lvl.count));
    lvl.mean_sign_attempts = lvl.count ? attempts / static_cast<double>(lvl.count) : 0.0;

    const double unit = lvl.scale * kBumpL1 * std::pow(static_cast<double>(N), -static_cast<double>(dim));
    std::size_t min_units = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        min_units = std::min(min_units, lattice_distance(members[i], members[j]));
    lvl.min_distance = members.size() > 1 ? unit * static_cast<double>(min_units) : 0.0;
    if (members.size() > 1 && !(lvl.min_distance > lvl.separation))
      throw InternalError(fmt::format("packing at N = {} is not separated", N));

    // Independent cross-check of the closed form by quadrature on a few pairs.
    Rng pick = make_rng(level_seed, 0x9A1);
    const std::size_t pairs = members.size() > 1 ? quadrature_pairs : 0;
    for (std::size_t q = 0; q < pairs; ++q) {
      const std::size_t i = uniform_index(pick, members.size());
      std::size_t j = uniform_index(pick, members.size() - 1);
      if (j >= i) ++j;
      const BumpMember a = BumpMember::build(fam, bitset_items(sep.subsets[i], n), member_signs[i], lvl.scale);
      const BumpMember b = BumpMember::build(fam, bitset_items(sep.subsets[j], n), member_signs[j], lvl.scale);
      const double quad = integrate_gauss(dim, [&](std::span<const double> x) {
        return std::abs(a(x) - b(x));
      }, 4 * N, 16);
      const double exact = unit * static_cast<double>(lattice_distance(members[i], members[j]));
      lvl.max_quadrature_rel_error = std::max(lvl.max_quadrature_rel_error, std::abs(quad - exact) / exact);
      ++lvl.quadrature_pairs;
    }
    study.levels.push_back(lvl);
  }

  std::vector<std::pair<double, double>> xy;
  for (const auto& l : study.levels)
    if (l.count > 1) xy.emplace_back(std::log(1.0 / l.separation), std::log(l.ln_count));
  if (xy.size() >= 2) study.slope = fit_line(xy).slope;
  return study;
}

// ------------------------------------------------------ rate calculators

double EntropyModel::operator()(double eps) const {
  const double inv = 1.0 / eps;
  const double base = C * std::pow(std::max(1.0, inv), alpha);
  return beta == 0.0 ? base : base * std::pow(std::log(2.0 + inv), beta);
}

double solve_eps_n(const EntropyModel& v, double n) {
  if (!(v.C > 0.0) || !(v.alpha > 0.0) || !(v.beta >= 0.0)) throw RangeError("bad entropy model");
  if (!(n >= 1.0)) throw RangeError("sample size must be at least 1");
  // g(eps) = n eps^2 - V(eps) is strictly increasing from -inf to +inf.
  auto g = [&](double e) { return n * e * e - v(e); };
  double lo = 1.0, hi = 1.0;
  while (g(lo) > 0.0) lo *= 0.5;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 400 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw RangeError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

RateExponents rate_exponents(int d) {
  if (d < 2) throw RangeError("rate exponents need d >= 2");
  const std::int64_t D = d;
  return {Rational::make(D + 1, 3 * D - 1),
          Rational::make((D + 1) * (5 * D - 3), (3 * D - 1) * (2 * D - 2)),
          Rational::make(5 * D - 3, 3 * D - 1),
          Rational::make(D + 1, 2 * (D - 1))};
}

void EntropyRateParams::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0) || beta > alpha) throw RangeError("need alpha >= beta > 0");
  if (!(a >= 0.0) || !(b >= 0.0)) throw RangeError("need a, b >= 0");
  if (!(C > 0.0)) throw RangeError("need C > 0");
}

std::pair<double, double> kappa_bounds(const EntropyRateParams& p, double m, double c1, double c2) {
  p.validate();
  if (!(m >= 1.0)) throw RangeError("m must be at least 1");
  const double L = std::log(2.0 * m);
  const double k1 = c1 * std::pow(m, -p.alpha / (p.beta + 1.0)) *
                    std::pow(L, -p.alpha * (2.0 + p.beta * p.b) / (p.beta + 1.0) - p.alpha * p.a);
  const double k2 = c2 * std::pow(m, -p.beta / (p.beta + 1.0)) * std::pow(L, (2.0 + p.beta * p.b) / (p.beta + 1.0));
  return {k1, k2};
}

double nn_entropy_bound(double delta, double d, double W, double B) {
  if (!(delta > 0.0) || delta > 1.0) throw RangeError("delta must lie in (0, 1]");
  if (!(d >= 1.0) || !(W >= 1.0) || !(B > 0.0)) throw RangeError("need d, W >= 1 and B > 0");
  return W * (10.0 + std::log(1.0 / delta) + 5.0 * std::log(std::ceil(B)) + 5.0 * std::log(std::max(d, W)));
}

nlohmann::json to_json(const FourierNetPlan& p) {
  return {{"eps", p.eps},
          {"dim", p.dim},
          {"c1", p.c1},
          {"budget", p.budget},
          {"truncation", p.truncation},
          {"lambda", p.lambda},
          {"terms", p.terms},
          {"box_size", p.box_size},
          {"quantization_step", p.quantization_step},
          {"coefficient_radius", p.coefficient_radius},
          {"ln_support_sets", p.ln_support_sets},
          {"ln_cardinality_bound", p.ln_cardinality_bound}};
}

nlohmann::json to_json(const RateExponents& r) {
  auto q = [](const Rational& x) {
    return nlohmann::json{{"num", x.num}, {"den", x.den}, {"value", x.value()}};
  };
  return {{"lower_exp", q(r.lower_exp)},
          {"log_exp_lower", q(r.log_exp_lower)},
          {"log_exp_upper", q(r.log_exp_upper)},
          {"alpha_beta", q(r.alpha_beta)}};
}

}  // namespace barronlab
