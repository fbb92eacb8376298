#include "barronlab/barron.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace barronlab {

namespace {

double euclidean_norm(const Frequency& n) {
  double s = 0.0;
  for (int v : n) s += static_cast<double>(v) * v;
  return std::sqrt(s);
}

Frequency negate(const Frequency& n) {
  Frequency out(n.size());
  std::transform(n.begin(), n.end(), out.begin(), [](int v) { return -v; });
  return out;
}

bool is_canonical(const Frequency& n) {
  for (int v : n) {
    if (v != 0) return v > 0;
  }
  return false;
}

}  // namespace

BarronFourierRep BarronFourierRep::create(std::size_t dim, double budget, CoeffMap coeffs,
                                          double kappa_rep) {
  if (dim == 0) throw FormatError("BarronFourierRep: dimension must be positive");
  if (!(budget > 0.0)) throw FormatError("BarronFourierRep: budget must be positive");
  if (!(kappa_rep > 0.0)) throw FormatError("BarronFourierRep: kappa_rep must be positive");

  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (it->second == Complex(0.0, 0.0))
      it = coeffs.erase(it);
    else
      ++it;
  }
  for (const auto& [n, c] : coeffs) {
    if (n.size() != dim)
      throw FormatError(fmt::format("frequency of length {} in a {}-dimensional rep", n.size(), dim));
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw FormatError("non-finite Fourier coefficient");
    const auto mirror = coeffs.find(negate(n));
    if (mirror == coeffs.end() || mirror->second != std::conj(c))
      throw FormatError("coefficients violate Hermitian symmetry c_{-n} = conj(c_n)");
  }
  const double moment = weighted_fourier_moment(coeffs);
  if (moment > kappa_rep * budget)
    throw FormatError(fmt::format("weighted Fourier moment {} exceeds kappa_rep * budget = {}",
                                  moment, kappa_rep * budget));

  BarronFourierRep rep;
  rep.dim_ = dim;
  rep.budget_ = budget;
  rep.kappa_rep_ = kappa_rep;
  rep.coeffs_ = std::move(coeffs);
  rep.terms_.reserve(rep.coeffs_.size());
  for (const auto& [n, c] : rep.coeffs_) {
    Term t;
    t.freq.reserve(dim);
    // e_n(x) = exp(2 pi i <n/2, x>) = exp(i pi <n, x>)
    for (int v : n) t.freq.push_back(std::numbers::pi * v);
    t.c = c;
    Frequency neg(n);
    for (auto& v : neg) v = -v;
    if (n == neg) {
      rep.half_terms_.push_back(t);
    } else if (neg < n) {
      Term h = t;
      h.c *= 2.0;
      rep.half_terms_.push_back(std::move(h));
    }
    rep.terms_.push_back(std::move(t));
  }
  return rep;
}

Complex BarronFourierRep::eval_complex(std::span<const double> x) const {
  double re = 0.0, im = 0.0;
  for (const auto& t : terms_) {
    double phase = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) phase += t.freq[k] * x[k];
    const double cs = std::cos(phase), sn = std::sin(phase);
    re += t.c.real() * cs - t.c.imag() * sn;
    im += t.c.real() * sn + t.c.imag() * cs;
  }
  return {re, im};
}

double BarronFourierRep::operator()(std::span<const double> x) const {
  check_unit_cube(x, dim_);
  // Hermitian symmetry was verified on construction, so the sum is
  // c_0 + sum over pairs of 2 Re(c_n e_n(x)).
  double re = 0.0;
  for (const auto& t : half_terms_) {
    double phase = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) phase += t.freq[k] * x[k];
    re += t.c.real() * std::cos(phase) - t.c.imag() * std::sin(phase);
  }
  return re;
}

double weighted_fourier_moment(const BarronFourierRep::CoeffMap& coeffs) {
  double total = 0.0;
  for (const auto& [n, c] : coeffs) total += (1.0 + euclidean_norm(n)) * std::abs(c);
  return total;
}

double weighted_fourier_moment(const BarronFourierRep& rep) {
  return weighted_fourier_moment(rep.coeffs());
}

double offset_l1_mass(const BarronFourierRep::CoeffMap& coeffs) {
  double total = 0.0;
  for (const auto& [n, c] : coeffs) {
    if (std::any_of(n.begin(), n.end(), [](int v) { return v != 0; })) total += std::abs(c);
  }
  return total;
}

BarronFourierRep sample_boundary_rep(std::size_t dim, double budget, int num_terms, int max_freq,
                                     std::uint64_t seed) {
  if (dim == 0) throw RangeError("sample_boundary_rep: dimension must be positive");
  if (budget < 0.5)
    throw InfeasibleError(
        fmt::format("budget {} < 1/2: the constant term alone exhausts the budget", budget));
  if (max_freq < 0) throw RangeError("sample_boundary_rep: max_freq must be nonnegative");

  BarronFourierRep::CoeffMap coeffs;
  coeffs[Frequency(dim, 0)] = Complex(0.5, 0.0);

  // canonical half of the frequency box
  std::vector<Frequency> candidates;
  Frequency n(dim, -max_freq);
  const int side = 2 * max_freq + 1;
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) total *= static_cast<std::size_t>(side);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t k = dim; k-- > 0;) {
      n[k] = static_cast<int>(rem % side) - max_freq;
      rem /= side;
    }
    if (is_canonical(n)) candidates.push_back(n);
  }

  Rng rng = make_rng(seed, 0xB0B);
  const std::size_t k_terms = std::min<std::size_t>(std::max(num_terms, 0), candidates.size());
  for (std::size_t i = 0; i < k_terms; ++i) {
    const std::size_t j = i + uniform_index(rng, candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }

  std::vector<Complex> raw(k_terms);
  double l1 = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < k_terms; ++i) {
    const double mag = 0.05 + uniform01(rng);
    const double phase = 2.0 * std::numbers::pi * uniform01(rng);
    raw[i] = std::polar(mag, phase);
    l1 += 2.0 * mag;
    weighted += 2.0 * (1.0 + euclidean_norm(candidates[i])) * mag;
  }
  if (k_terms > 0 && budget > 0.5) {
    const double fill = 0.5 + 0.5 * uniform01(rng);
    const double t = fill * std::min(0.5 / l1, (budget - 0.5) / weighted) * (1.0 - 1e-12);
    for (std::size_t i = 0; i < k_terms; ++i) {
      const Complex c = t * raw[i];
      coeffs[candidates[i]] = c;
      coeffs[negate(candidates[i])] = std::conj(c);
    }
  }
  return BarronFourierRep::create(dim, budget, std::move(coeffs));
}

nlohmann::json to_json(const BarronFourierRep& rep) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [n, c] : rep.coeffs()) {
    nlohmann::json row = nlohmann::json::array();
    for (int v : n) row.push_back(v);
    row.push_back(c.real());
    row.push_back(c.imag());
    coeffs.push_back(std::move(row));
  }
  nlohmann::json j;
  j["dim"] = rep.dim();
  j["budget"] = rep.budget();
  j["coeffs"] = std::move(coeffs);
  if (rep.kappa_rep() != 1.0) j["kappa_rep"] = rep.kappa_rep();
  return j;
}

BarronFourierRep barron_rep_from_json(const nlohmann::json& j) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    const double budget = j.at("budget").get<double>();
    const double kappa = j.value("kappa_rep", 1.0);
    BarronFourierRep::CoeffMap coeffs;
    for (const auto& row : j.at("coeffs")) {
      if (!row.is_array() || row.size() != dim + 2)
        throw FormatError("coefficient row must be [n_1, ..., n_d, re, im]");
      Frequency n(dim);
      for (std::size_t k = 0; k < dim; ++k) n[k] = row[k].get<int>();
      const Complex c(row[dim].get<double>(), row[dim + 1].get<double>());
      if (!coeffs.emplace(std::move(n), c).second) throw FormatError("duplicate frequency");
    }
    return BarronFourierRep::create(dim, budget, std::move(coeffs), kappa);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("BarronFourierRep JSON: ") + e.what());
  }
}

}  // namespace barronlab
