#include "barronlab/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace barronlab {

// ---------------------------------------------------------------- Boundary

Boundary Boundary::fourier(BarronFourierRep rep) {
  Boundary b;
  b.dim_ = rep.dim();
  auto src = std::make_shared<const Source>(std::move(rep));
  const auto* ptr = &std::get<BarronFourierRep>(*src);
  b.fn_ = [src, ptr](std::span<const double> x) { return (*ptr)(x); };
  b.source_ = std::move(src);
  return b;
}

Boundary Boundary::bump(BumpMember member) {
  Boundary b;
  b.dim_ = member.family().dim;
  auto src = std::make_shared<const Source>(std::move(member));
  const auto* ptr = &std::get<BumpMember>(*src);
  b.fn_ = [src, ptr](std::span<const double> x) { return (*ptr)(x); };
  b.source_ = std::move(src);
  return b;
}

Boundary Boundary::function(std::size_t dim, RealFn fn) {
  Boundary b;
  b.dim_ = dim;
  b.source_ = std::make_shared<const Source>();
  b.fn_ = [dim, fn = std::move(fn)](std::span<const double> x) {
    check_unit_cube(x, dim);
    return fn(x);
  };
  return b;
}

Boundary Boundary::constant(std::size_t dim, double value) {
  BarronFourierRep::CoeffMap coeffs;
  coeffs[Frequency(dim, 0)] = Complex(value, 0.0);
  return fourier(BarronFourierRep::create(dim, std::max(1.0, std::abs(value)), std::move(coeffs)));
}

const BarronFourierRep* Boundary::as_fourier() const {
  return source_ ? std::get_if<BarronFourierRep>(source_.get()) : nullptr;
}

const BumpMember* Boundary::as_bump() const {
  return source_ ? std::get_if<BumpMember>(source_.get()) : nullptr;
}

// ------------------------------------------------------- HorizonClassifier

HorizonClassifier::HorizonClassifier(Boundary boundary) : boundary_(std::move(boundary)) {
  if (boundary_.dim() == 0) throw DomainError("horizon classifiers need d >= 2");
}

int HorizonClassifier::operator()(std::span<const double> x) const {
  check_unit_cube(x, dim());
  const std::size_t k = boundary_.dim();
  return boundary_(x.first(k)) <= x[k] ? 1 : 0;
}

// ----------------------------------------------------- PiecewiseClassifier

PiecewiseClassifier PiecewiseClassifier::create(std::size_t dim, std::vector<Piece> pieces) {
  if (dim < 2) throw FormatError("piecewise classifiers need d >= 2");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (p.rect.size() != dim) throw FormatError(fmt::format("piece {}: rectangle dimension", i));
    for (const auto& iv : p.rect) {
      if (!(iv.lo >= 0.0 && iv.hi <= 1.0 && iv.lo < iv.hi))
        throw FormatError(fmt::format("piece {}: degenerate or out-of-cube interval [{}, {}]", i,
                                      iv.lo, iv.hi));
    }
    if (p.perm.size() != dim) throw FormatError(fmt::format("piece {}: permutation length", i));
    std::vector<int> sorted = p.perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < dim; ++k) {
      if (sorted[k] != static_cast<int>(k))
        throw FormatError(fmt::format("piece {}: not a permutation of 0..{}", i, dim - 1));
    }
    if (p.horizon.dim() != dim) throw FormatError(fmt::format("piece {}: horizon dimension", i));
    for (std::size_t j = 0; j < i; ++j) {
      bool overlap = true;
      for (std::size_t k = 0; k < dim; ++k) {
        const auto& a = pieces[j].rect[k];
        const auto& b = p.rect[k];
        if (!(std::max(a.lo, b.lo) < std::min(a.hi, b.hi))) {
          overlap = false;
          break;
        }
      }
      if (overlap) throw FormatError(fmt::format("pieces {} and {} overlap in their interiors", j, i));
    }
  }
  PiecewiseClassifier c;
  c.dim_ = dim;
  c.pieces_ = std::move(pieces);
  return c;
}

int PiecewiseClassifier::operator()(std::span<const double> x) const {
  check_unit_cube(x, dim_);
  Point y(dim_);
  for (const Piece& p : pieces_) {
    bool inside = true;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (x[k] < p.rect[k].lo || x[k] > p.rect[k].hi) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    for (std::size_t j = 0; j < dim_; ++j) y[j] = x[p.perm[j]];
    const int v = p.horizon(y);
    return p.flip ? 1 - v : v;
  }
  return 0;
}

// -------------------------------------------------------------- Classifier

Classifier::Classifier(HorizonClassifier h) {
  dim_ = h.dim();
  auto src = std::make_shared<const Source>(std::move(h));
  const auto* ptr = &std::get<HorizonClassifier>(*src);
  fn_ = [src, ptr](std::span<const double> x) { return (*ptr)(x); };
  source_ = std::move(src);
}

Classifier::Classifier(PiecewiseClassifier p) {
  dim_ = p.dim();
  auto src = std::make_shared<const Source>(std::move(p));
  const auto* ptr = &std::get<PiecewiseClassifier>(*src);
  fn_ = [src, ptr](std::span<const double> x) { return (*ptr)(x); };
  source_ = std::move(src);
}

Classifier Classifier::function(std::size_t dim, std::function<int(std::span<const double>)> fn) {
  Classifier c;
  c.dim_ = dim;
  c.source_ = std::make_shared<const Source>();
  c.fn_ = [dim, fn = std::move(fn)](std::span<const double> x) {
    check_unit_cube(x, dim);
    const int v = fn(x);
    if (v != 0 && v != 1) throw RangeError(fmt::format("classifier returned non-binary value {}", v));
    return v;
  };
  return c;
}

Classifier Classifier::constant(std::size_t dim, int value) {
  const int v = value ? 1 : 0;
  return function(dim, [v](std::span<const double>) { return v; });
}

Classifier Classifier::complement() const {
  Classifier inner = *this;
  return function(dim_, [inner](std::span<const double> x) { return 1 - inner(x); });
}

const HorizonClassifier* Classifier::as_horizon() const {
  return source_ ? std::get_if<HorizonClassifier>(source_.get()) : nullptr;
}

const PiecewiseClassifier* Classifier::as_piecewise() const {
  return source_ ? std::get_if<PiecewiseClassifier>(source_.get()) : nullptr;
}

// ------------------------------------------------------------ disagreement

double boundary_l1_distance(const Boundary& b1, const Boundary& b2, int resolution) {
  if (b1.dim() != b2.dim()) throw DomainError("boundaries differ in dimension");
  auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
  RealFn diff = [&](std::span<const double> x) { return std::abs(clamp01(b1(x)) - clamp01(b2(x))); };
  if (b1.dim() <= 2) {
    constexpr int kOrder = 8;
    return integrate_gauss(b1.dim(), diff, std::max(1, resolution / kOrder), kOrder);
  }
  return integrate(b1.dim(), diff,
                   MonteCarloRule{static_cast<std::int64_t>(resolution) * resolution, 0})
      .value;
}

Estimate disagreement(const Classifier& h1, const Classifier& h2, const DisagreementMethod& method) {
  if (h1.dim() != h2.dim()) throw DomainError("classifiers differ in dimension");
  if (const auto* exact = std::get_if<ExactHorizonRule>(&method)) {
    const auto* a = h1.as_horizon();
    const auto* b = h2.as_horizon();
    if (a == nullptr || b == nullptr)
      throw DomainError("exact_horizon disagreement needs two horizon classifiers");
    return {boundary_l1_distance(a->boundary(), b->boundary(), exact->resolution), 0.0};
  }
  RealFn indicator = [&](std::span<const double> x) { return h1(x) != h2(x) ? 1.0 : 0.0; };
  if (const auto* grid = std::get_if<GridRule>(&method)) return integrate(h1.dim(), indicator, *grid);
  const auto& mc = std::get<MonteCarloRule>(method);
  const Estimate e = integrate(h1.dim(), indicator, mc);
  return {e.value, binomial_half_width(e.value, mc.samples)};
}

// ---------------------------------------------------------------- samples

LabeledSample sample_noiseless(const Classifier& h, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw RangeError("sample size must be at least 1");
  LabeledSample s;
  s.dim = h.dim();
  s.coords.resize(m * s.dim);
  s.labels.resize(m);
  Rng rng = make_rng(seed, 0x5A3);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < s.dim; ++k) s.coords[i * s.dim + k] = uniform01(rng);
    s.labels[i] = h(s.point(i));
  }
  return s;
}

void write_sample_csv(std::ostream& out, const LabeledSample& sample) {
  for (std::size_t k = 0; k < sample.dim; ++k) out << "x_" << (k + 1) << ',';
  out << "label\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (double v : sample.point(i)) out << fmt::format("{:.17g},", v);
    out << sample.labels[i] << '\n';
  }
}

LabeledSample read_sample_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("sample CSV: missing header");
  const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (columns < 2 || line.substr(line.rfind(',') + 1) != "label")
    throw FormatError("sample CSV: header must be x_1,...,x_d,label");
  LabeledSample s;
  s.dim = columns - 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    for (std::size_t k = 0; k < s.dim; ++k) {
      if (!std::getline(row, cell, ',')) throw FormatError("sample CSV: short row");
      s.coords.push_back(std::stod(cell));
    }
    if (!std::getline(row, cell, ',')) throw FormatError("sample CSV: missing label");
    const int label = std::stoi(cell);
    if (label != 0 && label != 1) throw FormatError("sample CSV: label must be 0 or 1");
    s.labels.push_back(label);
  }
  return s;
}

// --------------------------------------------------------------- generator

PiecewiseClassifier make_regular_classifier(std::size_t dim, int pieces, double budget,
                                            std::uint64_t seed, int num_terms, int max_freq) {
  if (dim < 2) throw RangeError("regular classifiers need d >= 2");
  if (pieces < 1) throw RangeError("at least one piece is required");
  Rng rng = make_rng(seed, 0xC1A55);
  std::vector<Piece> out;
  for (int i = 0; i < pieces; ++i) {
    std::vector<Interval> rect(dim, Interval{0.0, 1.0});
    rect[0] = {static_cast<double>(i) / pieces, static_cast<double>(i + 1) / pieces};
    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    bool flip = false;
    if (pieces > 1) {
      for (std::size_t k = dim; k-- > 1;) std::swap(perm[k], perm[uniform_index(rng, k + 1)]);
      flip = (rng() >> 63) != 0;
    }
    const std::uint64_t boundary_seed = i == 0 ? seed : mix_seed(seed, static_cast<std::uint64_t>(i));
    Boundary b = Boundary::fourier(sample_boundary_rep(dim - 1, budget, num_terms, max_freq, boundary_seed));
    out.push_back(Piece{std::move(rect), std::move(perm), flip, HorizonClassifier(std::move(b))});
  }
  return PiecewiseClassifier::create(dim, std::move(out));
}

// -------------------------------------------------------------------- JSON

nlohmann::json to_json(const Boundary& b) {
  if (const auto* rep = b.as_fourier()) {
    nlohmann::json j = to_json(*rep);
    j["type"] = "barron";
    return j;
  }
  if (const auto* bump = b.as_bump()) return to_json(*bump);
  throw FormatError("function-backed boundaries cannot be serialized");
}

Boundary boundary_from_json(const nlohmann::json& j) {
  const std::string type = j.value("type", std::string("barron"));
  if (type == "barron") return Boundary::fourier(barron_rep_from_json(j));
  if (type == "bump") return Boundary::bump(bump_member_from_json(j));
  throw FormatError("unknown boundary type '" + type + "'");
}

nlohmann::json to_json(const PiecewiseClassifier& c) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const Piece& p : c.pieces()) {
    nlohmann::json rect = nlohmann::json::array();
    for (const auto& iv : p.rect) rect.push_back({iv.lo, iv.hi});
    pieces.push_back({{"rect", rect},
                      {"perm", p.perm},
                      {"flip", p.flip},
                      {"boundary", to_json(p.horizon.boundary())}});
  }
  return {{"dim", c.dim()}, {"pieces", pieces}};
}

nlohmann::json to_json(const HorizonClassifier& h) {
  std::vector<int> perm(h.dim());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Piece> pieces;
  pieces.push_back(Piece{std::vector<Interval>(h.dim()), perm, false, h});
  return to_json(PiecewiseClassifier::create(h.dim(), std::move(pieces)));
}

PiecewiseClassifier classifier_from_json(const nlohmann::json& j) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<Piece> pieces;
    for (const auto& pj : j.at("pieces")) {
      std::vector<Interval> rect;
      for (const auto& iv : pj.at("rect")) {
        if (!iv.is_array() || iv.size() != 2) throw FormatError("rect entries must be [a, b]");
        rect.push_back({iv[0].get<double>(), iv[1].get<double>()});
      }
      Boundary b = boundary_from_json(pj.at("boundary"));
      if (b.dim() + 1 != dim) throw FormatError("boundary dimension must be d - 1");
      pieces.push_back(Piece{std::move(rect), pj.at("perm").get<std::vector<int>>(),
                             pj.at("flip").get<bool>(), HorizonClassifier(std::move(b))});
    }
    return PiecewiseClassifier::create(dim, std::move(pieces));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("classifier JSON: ") + e.what());
  }
}

}  // namespace barronlab
