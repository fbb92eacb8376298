#include "barronlab/bump.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <fftw3.h>
#include <fmt/format.h>

#include "barronlab/quadrature.hpp"

namespace barronlab {

namespace bump_profile {

namespace {

double raw_bump(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (t * (1.0 - t)));
}

struct ProfileTables {
  static constexpr int kIntervals = 4096;
  double norm = 1.0;  // 1 / int raw_bump
  std::vector<double> cdf;

  ProfileTables() {
    const GaussRule rule = gauss_legendre(12);
    const double h = 1.0 / kIntervals;
    std::vector<double> pieces(kIntervals, 0.0);
    double total = 0.0;
    for (int i = 0; i < kIntervals; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        s += rule.weights[k] * raw_bump((i + rule.nodes[k]) * h);
      pieces[i] = s * h;
      total += pieces[i];
    }
    norm = 1.0 / total;
    cdf.assign(kIntervals + 1, 0.0);
    double acc = 0.0;
    for (int i = 0; i < kIntervals; ++i) {
      acc += pieces[i];
      cdf[i + 1] = acc * norm;
    }
    cdf[kIntervals] = 1.0;
  }
};

const ProfileTables& tables() {
  static const ProfileTables t;
  return t;
}

}  // namespace

double bump_1d(double t) { return tables().norm * raw_bump(t); }

double bump_1d_max() { return bump_1d(0.5); }

double bump_cdf(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const auto& tab = tables();
  const double h = 1.0 / ProfileTables::kIntervals;
  const int i = std::min(static_cast<int>(t / h), ProfileTables::kIntervals - 1);
  const double a = i * h;
  const double u = (t - a) / h;
  // cubic Hermite with exact derivatives bump_1d at the nodes
  const double y0 = tab.cdf[i], y1 = tab.cdf[i + 1];
  const double d0 = bump_1d(a) * h, d1 = bump_1d(a + h) * h;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * d0 + (-2 * u3 + 3 * u2) * y1 +
         (u3 - u2) * d1;
}

double ramp(double t) {
  if (t <= -1.0 || t >= 2.0) return 0.0;
  if (t < 0.0) return bump_cdf(t + 1.0);
  if (t <= 1.0) return 1.0;
  return bump_cdf(2.0 - t);
}

double bump(std::span<const double> x) {
  double v = 1.0;
  for (double t : x) {
    v *= bump_1d(t);
    if (v == 0.0) return 0.0;
  }
  return v;
}

double plateau(std::span<const double> x) {
  double v = std::pow(bump_1d_max(), static_cast<double>(x.size()));
  for (double t : x) v *= ramp(t);
  return v;
}

}  // namespace bump_profile

std::int64_t BumpFamily::cell_count() const {
  std::int64_t n = 1;
  for (std::size_t k = 0; k < dim; ++k) n *= grid_size;
  return n;
}

std::int64_t BumpFamily::cell_index(std::span<const int> omega) const {
  if (omega.size() != dim) throw IndexError("cell multi-index has the wrong dimension");
  std::int64_t idx = 0;
  for (int w : omega) {
    if (w < 0 || w >= grid_size)
      throw IndexError(fmt::format("cell coordinate {} outside {{0..{}}}", w, grid_size - 1));
    idx = idx * grid_size + w;
  }
  return idx;
}

BumpMember BumpMember::build(const BumpFamily& family, const std::vector<std::int64_t>& cells,
                             const std::vector<int>& signs, double scale) {
  if (family.dim == 0 || family.grid_size < 1) throw RangeError("invalid bump family");
  if (cells.size() != signs.size()) throw IndexError("cells and signs differ in length");
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw RangeError("scale must be finite and >= 0");
  BumpMember m;
  m.family_ = family;
  m.scale_ = scale;
  m.signs_.assign(static_cast<std::size_t>(family.cell_count()), 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < 0 || cells[i] >= family.cell_count())
      throw IndexError(fmt::format("cell {} outside the lattice of {} cells", cells[i],
                                   family.cell_count()));
    if (signs[i] != 1 && signs[i] != -1) throw IndexError("signs must be +1 or -1");
    if (m.signs_[cells[i]] != 0) throw IndexError("duplicate cell");
    m.signs_[cells[i]] = static_cast<std::int8_t>(signs[i]);
  }
  return m;
}

std::vector<std::int64_t> BumpMember::active_cells() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < signs_.size(); ++i)
    if (signs_[i] != 0) out.push_back(static_cast<std::int64_t>(i));
  return out;
}

std::vector<int> BumpMember::active_signs() const {
  std::vector<int> out;
  for (auto s : signs_)
    if (s != 0) out.push_back(s);
  return out;
}

BumpMember BumpMember::rescaled(double scale) const {
  BumpMember m = *this;
  m.scale_ = scale;
  return m;
}

double BumpMember::eval_extended(std::span<const double> x) const {
  if (x.size() != family_.dim) throw DomainError("bump member: wrong point dimension");
  double v = bump_profile::plateau(x);
  const int n = family_.grid_size;
  std::int64_t idx = 0;
  bool inside = true;
  for (double t : x) {
    if (!(t >= 0.0 && t <= 1.0)) {
      inside = false;
      break;
    }
    const int c = std::min(static_cast<int>(t * n), n - 1);
    idx = idx * n + c;
  }
  if (inside && signs_[idx] != 0) {
    double b = 1.0;
    std::int64_t rem = idx;
    for (std::size_t k = family_.dim; k-- > 0;) {
      const int c = static_cast<int>(rem % n);
      rem /= n;
      b *= bump_profile::bump_1d(n * x[k] - c);
    }
    v += signs_[idx] * b;
  }
  return scale_ * v;
}

double BumpMember::operator()(std::span<const double> x) const {
  check_unit_cube(x, family_.dim);
  return eval_extended(x);
}

double bump_l1_closed_form(double scale, int grid_size, std::size_t dim, double sign_mismatch_sum,
                           double symmetric_difference) {
  return scale * kBumpL1 * std::pow(static_cast<double>(grid_size), -static_cast<double>(dim)) *
         (sign_mismatch_sum + symmetric_difference);
}

double BumpMember::l1_distance(const BumpMember& other) const {
  if (family_.dim != other.family_.dim || family_.grid_size != other.family_.grid_size ||
      scale_ != other.scale_)
    throw RangeError("exact L1 distance needs members of the same family and scale");
  double mismatch = 0.0, symdiff = 0.0;
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    const int a = signs_[i], b = other.signs_[i];
    if (a != 0 && b != 0)
      mismatch += std::abs(a - b);
    else if (a != 0 || b != 0)
      symdiff += 1.0;
  }
  return bump_l1_closed_form(scale_, family_.grid_size, family_.dim, mismatch, symdiff);
}

namespace {

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// Plans are created once per (dim, length) and shared; execution on
// separate buffers through fftw_execute_dft is thread-safe.
fftw_plan shared_plan(std::size_t dim, int length) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(fftw_mutex());
  auto key = std::make_pair(dim, length);
  if (auto it = plans.find(key); it != plans.end()) return it->second;
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) total *= static_cast<std::size_t>(length);
  std::unique_ptr<fftw_complex, FftwDeleter> buf(fftw_alloc_complex(total));
  std::vector<int> dims(dim, length);
  fftw_plan p = fftw_plan_dft(static_cast<int>(dim), dims.data(), buf.get(), buf.get(),
                              FFTW_FORWARD, FFTW_ESTIMATE);
  plans.emplace(key, p);
  return p;
}

double moment_at(const BumpMember& member, int res) {
  const std::size_t d = member.family().dim;
  const int n = member.family().grid_size;
  const int len = 3 * res;  // samples on [-1, 2)
  const double h = 1.0 / res;

  // per-axis factors: plateau ramp, lattice cell and bump profile
  std::vector<double> ramp(len), prof(len);
  std::vector<int> cell(len);
  for (int j = 0; j < len; ++j) {
    const double x = -1.0 + j * h;
    ramp[j] = bump_profile::ramp(x);
    if (x >= 0.0 && x <= 1.0) {
      cell[j] = std::min(static_cast<int>(x * n), n - 1);
      prof[j] = bump_profile::bump_1d(n * x - cell[j]);
    } else {
      cell[j] = -1;
      prof[j] = 0.0;
    }
  }
  const double peak = std::pow(bump_profile::bump_1d_max(), static_cast<double>(d));
  const auto& signs = member.lattice_signs();

  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= static_cast<std::size_t>(len);
  std::unique_ptr<fftw_complex, FftwDeleter> buf(fftw_alloc_complex(total));

  std::vector<int> idx(d, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = static_cast<int>(rem % len);
      rem /= len;
    }
    double plateau = peak, bump = 1.0;
    std::int64_t c = 0;
    bool inside = true;
    for (std::size_t k = 0; k < d; ++k) {
      plateau *= ramp[idx[k]];
      if (cell[idx[k]] < 0) {
        inside = false;
      } else if (inside) {
        c = c * n + cell[idx[k]];
        bump *= prof[idx[k]];
      }
    }
    double v = plateau;
    if (inside && signs[c] != 0) v += signs[c] * bump;
    buf.get()[flat][0] = v;
    buf.get()[flat][1] = 0.0;
  }

  fftw_execute_dft(shared_plan(d, len), buf.get(), buf.get());

  const double cell_volume = std::pow(h, static_cast<double>(d));
  const double dxi = 1.0 / 3.0;  // frequency spacing 1/L with L = 3
  const double dxi_volume = std::pow(dxi, static_cast<double>(d));
  double sum = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double xi2 = 0.0;
    for (std::size_t k = d; k-- > 0;) {
      int kk = static_cast<int>(rem % len);
      rem /= len;
      if (kk >= len / 2) kk -= len;
      xi2 += (kk * dxi) * (kk * dxi);
    }
    const double mag = std::hypot(buf.get()[flat][0], buf.get()[flat][1]) * cell_volume;
    sum += (1.0 + std::sqrt(xi2)) * mag;
  }
  return sum * dxi_volume;
}

void check_resolution(const BumpFamily& family, int res) {
  if (res < 64 || (res & (res - 1)) != 0)
    throw ResolutionError(fmt::format("grid resolution {} must be a power of two >= 64", res));
  if (res < 4 * family.grid_size)
    throw ResolutionError(fmt::format("grid resolution {} gives fewer than 4 samples per cell (N = {})",
                                      res, family.grid_size));
}

}  // namespace

int default_moment_resolution(int grid_size, int per_cell) {
  int res = 64;
  while (res < per_cell * grid_size) res *= 2;
  return res;
}

MomentEstimate estimate_bump_fourier_moment(const BumpMember& member, int grid_resolution,
                                            bool refine) {
  check_resolution(member.family(), grid_resolution);
  MomentEstimate out;
  out.resolution = grid_resolution;
  if (member.scale() == 0.0) {
    out.moment = 0.0;
    out.refinement_delta = 0.0;
    return out;
  }
  const double base = moment_at(member, grid_resolution);
  out.moment = member.scale() * base;
  if (refine) out.refinement_delta = member.scale() * std::abs(moment_at(member, 2 * grid_resolution) - base);
  return out;
}

SignSelection select_signs(const BumpFamily& family, const std::vector<std::int64_t>& cells,
                           std::uint64_t seed, double moment_threshold, int grid_resolution,
                           int max_attempts) {
  if (!(moment_threshold > 0.0)) throw RangeError("moment threshold must be positive");
  const int res = grid_resolution > 0 ? grid_resolution : default_moment_resolution(family.grid_size);
  check_resolution(family, res);
  Rng rng = make_rng(seed, 0x516E);
  SignSelection best;
  best.moment = std::numeric_limits<double>::infinity();
  std::vector<int> signs(cells.size());
  for (int attempt = 1; attempt <= std::max(max_attempts, 1); ++attempt) {
    for (auto& s : signs) s = (rng() >> 63) ? 1 : -1;
    const BumpMember member = BumpMember::build(family, cells, signs, 1.0);
    const double moment = estimate_bump_fourier_moment(member, res, false).moment;
    if (moment < best.moment) {
      best.moment = moment;
      best.signs = signs;
    }
    if (moment <= moment_threshold) return {signs, moment, attempt};
    if (cells.empty()) break;
  }
  throw ExhaustionError(fmt::format("no sign pattern met moment threshold {} (best {})",
                                    moment_threshold, best.moment),
                        best.moment);
}

double scale_for_budget(double budget, double moment_bound) {
  if (!(budget > 0.0) || !(moment_bound > 0.0)) throw RangeError("budget and moment must be positive");
  return budget / moment_bound;
}

nlohmann::json to_json(const BumpMember& member) {
  nlohmann::json j;
  j["type"] = "bump";
  j["dim"] = member.family().dim;
  j["grid_size"] = member.family().grid_size;
  j["cells"] = member.active_cells();
  j["signs"] = member.active_signs();
  j["scale"] = member.scale();
  return j;
}

BumpMember bump_member_from_json(const nlohmann::json& j) {
  try {
    BumpFamily fam{j.at("dim").get<std::size_t>(), j.at("grid_size").get<int>()};
    return BumpMember::build(fam, j.at("cells").get<std::vector<std::int64_t>>(),
                             j.at("signs").get<std::vector<int>>(), j.at("scale").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bump member JSON: ") + e.what());
  } catch (const IndexError& e) {
    throw FormatError(std::string("bump member JSON: ") + e.what());
  }
}

}  // namespace barronlab
