#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "barronlab/erm.hpp"
#include "barronlab/stats.hpp"

namespace barronlab {

inline constexpr int kSchemaVersion = 1;
inline constexpr double kKappaReport = 0.05;

// ---------------------------------------------------------- JSON output

/// Compact JSON with sorted keys and doubles printed with 17 significant
/// digits, so equal values always give equal bytes and reload exactly.
std::string stable_dump(const nlohmann::json& j, int indent = 2);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// ------------------------------------------------------------ workers

/// BARRONLAB_WORKERS if set and positive, else the hardware concurrency (at least 1).
int worker_count();

/// Runs fn(0..n-1) on up to `workers` threads. The first exception is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------- rate sweep

struct ClassifierSpec {
  std::size_t dim = 2;
  int pieces = 1;        // M
  double budget = 1.0;   // R
  std::uint64_t seed = 7;
  int terms = 4;
  int max_freq = 4;
  bool constant_one = false;  // h = 1 everywhere, for sanity runs
};

struct RateSweepConfig {
  int schema_version = kSchemaVersion;
  ClassifierSpec classifier;
  std::vector<std::int64_t> m_grid{128, 256, 512, 1024, 2048, 4096};
  int seeds = 5;
  std::uint64_t base_seed = 0;
  double scale_factor = 1e-4;
  double tau = 1.0;
  std::int64_t n_mc = 100000;
  TrainConfig train;
  std::string csv_path;
  std::string json_path;
  std::string svg_path;

  void validate() const;
};

RateSweepConfig rate_sweep_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RateSweepConfig& c);

struct RateRecord {
  std::int64_t m = 0;
  int seed = 0;
  double achieved_risk = 0.0;
  double misclass_error = 0.0;
  double half_width = 0.0;
  std::string flags;  // ';'-separated: floored, diverged
};

struct RateReport {
  nlohmann::json config;
  std::vector<RateRecord> records;
  std::vector<std::pair<std::int64_t, double>> medians;  // per m, over non-diverged seeds
  std::optional<LogLogFit> fit;  // over m values with >= 3 usable seeds
  double lower_exp = 0.0;        // (d+1)/(3d-1)
  double upper_exp = 0.0;        // 1/3 - kappa_report
  std::vector<std::string> flags;
  bool median_decreasing = false;  // median at the largest m below the smallest m
};

/// Seed of the (m, seed) cell; depends only on the base seed, m and the seed index.
std::uint64_t cell_seed(std::uint64_t base, std::int64_t m, int seed_index);

Classifier build_classifier(const ClassifierSpec& spec);

/// Runs the grid of (m, seed) cells on `workers` threads (worker_count() when 0).
RateReport run_rate_sweep(const RateSweepConfig& config, int workers = 0);

/// Median per m, slope fit and window flags from a list of records.
void summarize(RateReport& report, std::size_t dim);

void write_rate_csv(std::ostream& out, const RateReport& report);
nlohmann::json to_json(const RateReport& report);
RateReport rate_report_from_json(const nlohmann::json& j);
/// Log-log chart of per-seed errors, medians and the fitted line.
std::string rate_svg(const RateReport& report);

// ------------------------------------------------------- identity suite

struct IdentityRow {
  std::string name;
  double tolerance = 0.0;
  double max_violation = 0.0;
  std::size_t instances = 0;
  bool passed = true;
};

struct IdentitySuiteConfig {
  std::size_t instances = 200;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  int grid_resolution = 1024;      // Hellinger and disagreement grids
  int lipschitz_resolution = 128;  // L1, KL and mass grids
  double boundary_budget = 3.0;
  bool corrupt_normalization = false;  // adds a density with p(x,0) + p(x,1) != 2
};

/// |d_H^2(p_h1, p_h2) - 2 disagreement(h1, h2)| with d_H^2 on the grid and the
/// disagreement from the exact horizon rule.
IdentityRow check_hellinger_identity(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution,
                                     double budget);
/// |grid disagreement(h1, h2) - ||b1 - b2||_L1| with the L1 norm by Gauss-Legendre.
IdentityRow check_l2_l1_identity(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution,
                                 double budget);
/// max(0, ||p[f] - p[g]||_L1 - 2 ||f - g||_L1).
IdentityRow check_lift_lipschitz(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution);
/// max(0, d_H^2(p, q) - D(p || q)) for strictly positive lifts.
IdentityRow check_kl_domination(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution);
/// |total mass - 1| over lifts, plus one corrupted density when requested.
IdentityRow check_normalization(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution,
                                bool corrupt);

/// All five rows; no rows when instances == 0.
std::vector<IdentityRow> run_identity_suite(const IdentitySuiteConfig& config);
IdentitySuiteConfig identity_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<IdentityRow>& rows);

}  // namespace barronlab
