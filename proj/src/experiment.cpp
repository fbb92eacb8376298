#include "barronlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "barronlab/density.hpp"
#include "barronlab/entropy.hpp"
#include "barronlab/stats.hpp"

namespace barronlab {

// ---------------------------------------------------------- JSON output

namespace {

void dump_value(const nlohmann::json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) {
          out += ',';
          out += nl;
        }
        first = false;
        out += pad;
        out += nlohmann::json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_value(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ',';
          out += nl;
        }
        out += pad;
        dump_value(j[i], indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? fmt::format("{:.17g}", v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

double json_double(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string stable_dump(const nlohmann::json& j, int indent) {
  std::string out;
  dump_value(j, indent, 0, out);
  out += '\n';
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------ workers

int worker_count() {
  if (const char* env = std::getenv("BARRONLAB_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t w = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < w; ++t) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------- rate sweep

void RateSweepConfig::validate() const {
  if (schema_version != kSchemaVersion)
    throw FormatError(fmt::format("unsupported schema_version {}", schema_version));
  if (m_grid.empty()) throw FormatError("m_grid is empty");
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    if (m_grid[i] < 1) throw FormatError("m values must be positive");
    if (i && m_grid[i] <= m_grid[i - 1]) throw FormatError("m_grid must be strictly increasing");
  }
  if (seeds < 1) throw FormatError("seeds must be at least 1");
  if (classifier.dim < 2) throw FormatError("classifier dim must be at least 2");
  if (classifier.pieces < 1) throw FormatError("classifier pieces must be at least 1");
  if (!(scale_factor > 0.0) || scale_factor > 1.0) throw FormatError("scale_factor must lie in (0, 1]");
  if (n_mc < 1) throw FormatError("n_mc must be positive");
  if (train.restarts < 1) throw FormatError("train.restarts must be at least 1");
}

RateSweepConfig rate_sweep_config_from_json(const nlohmann::json& j) {
  RateSweepConfig c;
  try {
    c.schema_version = j.at("schema_version").get<int>();
    if (j.contains("kind") && j.at("kind").get<std::string>() != "rate_sweep")
      throw FormatError("config kind is not rate_sweep");
    if (j.contains("classifier")) {
      const auto& k = j.at("classifier");
      c.classifier.dim = k.value("dim", c.classifier.dim);
      c.classifier.pieces = k.value("pieces", c.classifier.pieces);
      c.classifier.budget = k.value("budget", c.classifier.budget);
      c.classifier.seed = k.value("seed", c.classifier.seed);
      c.classifier.terms = k.value("terms", c.classifier.terms);
      c.classifier.max_freq = k.value("max_freq", c.classifier.max_freq);
      c.classifier.constant_one = k.value("constant_one", c.classifier.constant_one);
    }
    c.m_grid = j.value("m_grid", c.m_grid);
    c.seeds = j.value("seeds", c.seeds);
    c.base_seed = j.value("base_seed", c.base_seed);
    c.scale_factor = j.value("scale_factor", c.scale_factor);
    c.tau = j.value("tau", c.tau);
    c.n_mc = j.value("n_mc", c.n_mc);
    if (j.contains("train")) {
      const auto& t = j.at("train");
      c.train.restarts = t.value("restarts", c.train.restarts);
      c.train.epochs = t.value("epochs", c.train.epochs);
      c.train.step_size = t.value("step_size", c.train.step_size);
      c.train.batch_size = t.value("batch_size", c.train.batch_size);
      c.train.prune_every = t.value("prune_every", c.train.prune_every);
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      c.csv_path = o.value("csv", std::string());
      c.json_path = o.value("json", std::string());
      c.svg_path = o.value("svg", std::string());
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const RateSweepConfig& c) {
  nlohmann::json j;
  j["schema_version"] = c.schema_version;
  j["kind"] = "rate_sweep";
  j["classifier"] = {{"dim", c.classifier.dim},         {"pieces", c.classifier.pieces},
                     {"budget", c.classifier.budget},   {"seed", c.classifier.seed},
                     {"terms", c.classifier.terms},     {"max_freq", c.classifier.max_freq},
                     {"constant_one", c.classifier.constant_one}};
  j["m_grid"] = c.m_grid;
  j["seeds"] = c.seeds;
  j["base_seed"] = c.base_seed;
  j["scale_factor"] = c.scale_factor;
  j["tau"] = c.tau;
  j["n_mc"] = c.n_mc;
  j["train"] = {{"restarts", c.train.restarts},
                {"epochs", c.train.epochs},
                {"step_size", c.train.step_size},
                {"batch_size", c.train.batch_size},
                {"prune_every", c.train.prune_every}};
  j["output"] = {{"csv", c.csv_path}, {"json", c.json_path}, {"svg", c.svg_path}};
  return j;
}

std::uint64_t cell_seed(std::uint64_t base, std::int64_t m, int seed_index) {
  return mix_seed(mix_seed(base, static_cast<std::uint64_t>(m)), static_cast<std::uint64_t>(seed_index));
}

Classifier build_classifier(const ClassifierSpec& spec) {
  if (spec.constant_one) return Classifier::constant(spec.dim, 1);
  return make_regular_classifier(spec.dim, spec.pieces, spec.budget, spec.seed, spec.terms, spec.max_freq);
}

namespace {

void add_flag(std::string& flags, const std::string& f) {
  if (!flags.empty()) flags += ';';
  flags += f;
}

}  // namespace

RateReport run_rate_sweep(const RateSweepConfig& config, int workers) {
  config.validate();
  const Classifier h = build_classifier(config.classifier);
  const double plan_R = std::max(1.0, config.classifier.budget);
  const double plan_M = static_cast<double>(config.classifier.pieces);

  RateReport report;
  report.config = to_json(config);
  const std::size_t per_m = static_cast<std::size_t>(config.seeds);
  report.records.resize(config.m_grid.size() * per_m);

  parallel_for(report.records.size(), workers > 0 ? workers : worker_count(), [&](std::size_t idx) {
    RateRecord& rec = report.records[idx];
    rec.m = config.m_grid[idx / per_m];
    rec.seed = static_cast<int>(idx % per_m);
    const std::uint64_t cs = cell_seed(config.base_seed, rec.m, rec.seed);
    const LabeledSample s = sample_noiseless(h, static_cast<std::size_t>(rec.m), mix_seed(cs, 1));
    const ArchitecturePlan plan = plan_architecture(static_cast<double>(rec.m), config.classifier.dim, plan_M,
                                                    plan_R, config.tau, config.scale_factor);
    TrainConfig tc = config.train;
    tc.seed = mix_seed(cs, 2);
    try {
      const TrainResult tr = train_erm(s, plan, tc);
      rec.achieved_risk = tr.achieved_risk;
      const Estimate e = misclassification_error(tr.net, h, config.n_mc, mix_seed(cs, 3));
      rec.misclass_error = e.value;
      rec.half_width = e.half_width;
      if (rec.misclass_error == 0.0) {
        rec.misclass_error = 1.0 / (2.0 * static_cast<double>(config.n_mc));
        add_flag(rec.flags, "floored");
      }
    } catch (const InternalError&) {
      rec.achieved_risk = std::numeric_limits<double>::quiet_NaN();
      rec.misclass_error = std::numeric_limits<double>::quiet_NaN();
      rec.half_width = std::numeric_limits<double>::quiet_NaN();
      add_flag(rec.flags, "diverged");
    }
  });
  summarize(report, config.classifier.dim);
  return report;
}

void summarize(RateReport& report, std::size_t dim) {
  report.medians.clear();
  report.fit.reset();
  report.flags.clear();
  const auto exps = rate_exponents(static_cast<int>(std::max<std::size_t>(dim, 2)));
  report.lower_exp = exps.lower_exp.value();
  report.upper_exp = 1.0 / 3.0 - kKappaReport;

  std::map<std::int64_t, std::vector<double>> by_m;
  for (const auto& r : report.records) {
    auto& v = by_m[r.m];
    if (std::isfinite(r.misclass_error)) v.push_back(r.misclass_error);
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& [m, errs] : by_m) {
    if (errs.empty()) continue;
    const double med = median(errs);
    report.medians.emplace_back(m, med);
    if (errs.size() >= 3) pts.emplace_back(static_cast<double>(m), med);
  }
  if (pts.size() >= 3) {
    report.fit = fit_loglog_slope(pts);
  } else {
    report.flags.push_back("insufficient_points");
  }
  report.median_decreasing =
      report.medians.size() >= 2 && report.medians.back().second < report.medians.front().second;
  if (std::any_of(report.records.begin(), report.records.end(),
                  [](const RateRecord& r) { return r.flags.find("floored") != std::string::npos; }))
    report.flags.push_back("floored_errors");
  if (std::any_of(report.records.begin(), report.records.end(),
                  [](const RateRecord& r) { return r.flags.find("diverged") != std::string::npos; }))
    report.flags.push_back("diverged_cells");
}

namespace {

std::string num(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : "nan"; }

}  // namespace

void write_rate_csv(std::ostream& out, const RateReport& report) {
  out << "m,seed,achieved_hinge_risk,misclass_error,mc_half_width,flags\n";
  for (const auto& r : report.records)
    out << r.m << ',' << r.seed << ',' << num(r.achieved_risk) << ',' << num(r.misclass_error) << ','
        << num(r.half_width) << ',' << r.flags << '\n';
}

nlohmann::json to_json(const RateReport& report) {
  nlohmann::json j;
  j["config"] = report.config;
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : report.records) {
    recs.push_back({{"m", r.m},
                    {"seed", r.seed},
                    {"achieved_hinge_risk", r.achieved_risk},
                    {"misclass_error", r.misclass_error},
                    {"mc_half_width", r.half_width},
                    {"flags", r.flags}});
  }
  j["records"] = recs;
  nlohmann::json meds = nlohmann::json::array();
  for (const auto& [m, v] : report.medians) meds.push_back({{"m", m}, {"median_misclass_error", v}});
  j["medians"] = meds;
  j["aggregation"] = "median";
  if (report.fit) {
    j["slope"] = report.fit->slope;
    j["slope_stderr"] = report.fit->slope_stderr;
    j["intercept"] = report.fit->intercept;
    j["fit_points"] = report.fit->points;
  } else {
    j["slope"] = nullptr;
    j["slope_stderr"] = nullptr;
    j["intercept"] = nullptr;
    j["fit_points"] = 0;
  }
  j["reference"] = {{"lower_exp", report.lower_exp}, {"upper_exp", report.upper_exp},
                    {"kappa_report", kKappaReport}};
  j["windows"] = {{"theory", {-report.lower_exp, -report.upper_exp}}, {"acceptance", {-0.9, -0.15}}};
  j["median_decreasing"] = report.median_decreasing;
  j["flags"] = report.flags;
  return j;
}

RateReport rate_report_from_json(const nlohmann::json& j) {
  RateReport r;
  try {
    r.config = j.at("config");
    for (const auto& rec : j.at("records")) {
      r.records.push_back({rec.at("m").get<std::int64_t>(), rec.at("seed").get<int>(),
                           json_double(rec.at("achieved_hinge_risk")), json_double(rec.at("misclass_error")),
                           json_double(rec.at("mc_half_width")), rec.at("flags").get<std::string>()});
    }
    for (const auto& m : j.at("medians"))
      r.medians.emplace_back(m.at("m").get<std::int64_t>(), json_double(m.at("median_misclass_error")));
    if (!j.at("slope").is_null()) {
      LogLogFit f;
      f.slope = j.at("slope").get<double>();
      f.slope_stderr = json_double(j.at("slope_stderr"));
      f.intercept = j.at("intercept").get<double>();
      f.points = j.at("fit_points").get<std::size_t>();
      r.fit = f;
    }
    r.lower_exp = j.at("reference").at("lower_exp").get<double>();
    r.upper_exp = j.at("reference").at("upper_exp").get<double>();
    r.median_decreasing = j.at("median_decreasing").get<bool>();
    r.flags = j.at("flags").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("rate report: ") + e.what());
  }
  return r;
}

std::string rate_svg(const RateReport& report) {
  const double W = 640, H = 420, L = 70, R = 20, T = 20, B = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& r : report.records) {
    if (!(r.misclass_error > 0.0)) continue;
    xmin = std::min(xmin, std::log10(static_cast<double>(r.m)));
    xmax = std::max(xmax, std::log10(static_cast<double>(r.m)));
    ymin = std::min(ymin, std::log10(r.misclass_error));
    ymax = std::max(ymax, std::log10(r.misclass_error));
  }
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
      "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      W, H);
  if (!std::isfinite(xmin)) return s + "</svg>\n";
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  ymin -= 0.1;
  ymax += 0.1;
  auto px = [&](double lx) { return L + (lx - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double ly) { return H - B - (ly - ymin) / (ymax - ymin) * (H - T - B); };
  s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, H - B, W - R, H - B);
  s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, T, L, H - B);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">log10 m</text>\n", (L + W - R) / 2, H - 12);
  s += fmt::format("<text x=\"15\" y=\"{}\" transform=\"rotate(-90 15 {})\" text-anchor=\"middle\">log10 "
                   "misclassification error</text>\n",
                   (T + H - B) / 2, (T + H - B) / 2);
  for (const auto& r : report.records) {
    if (!(r.misclass_error > 0.0)) continue;
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"#9ab\"/>\n",
                     px(std::log10(static_cast<double>(r.m))), py(std::log10(r.misclass_error)));
  }
  std::string path;
  for (const auto& [m, v] : report.medians) {
    if (!(v > 0.0)) continue;
    path += fmt::format("{}{:.2f},{:.2f}", path.empty() ? "M" : " L", px(std::log10(static_cast<double>(m))),
                        py(std::log10(v)));
  }
  s += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"#c33\" stroke-width=\"2\"/>\n", path);
  if (report.fit) {
    // ln e = a + b ln m, so log10 e = a / ln 10 + b log10 m.
    const double a = report.fit->intercept / std::log(10.0), b = report.fit->slope;
    s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#36c\" "
                     "stroke-dasharray=\"6 4\"/>\n",
                     px(xmin), py(a + b * xmin), px(xmax), py(a + b * xmax));
    s += fmt::format("<text x=\"{}\" y=\"{}\">slope {:.3f}</text>\n", W - R - 110, T + 15, b);
  }
  return s + "</svg>\n";
}

// ------------------------------------------------------- identity suite

namespace {

HorizonClassifier random_horizon(std::size_t dim, double budget, std::uint64_t seed) {
  return HorizonClassifier(Boundary::fourier(sample_boundary_rep(dim - 1, budget, 4, 4, seed)));
}

// Real function on [0,1]^dim with values in [lo, hi].
RealFn random_function(std::size_t dim, std::uint64_t seed, double lo, double hi) {
  auto rep = std::make_shared<BarronFourierRep>(sample_boundary_rep(dim, 3.0, 4, 4, seed));
  return [rep, lo, hi](std::span<const double> x) { return lo + (hi - lo) * (*rep)(x); };
}

IdentityRow make_row(std::string name, double tol) {
  IdentityRow r;
  r.name = std::move(name);
  r.tolerance = tol;
  return r;
}

void record(IdentityRow& row, double violation) {
  row.max_violation = std::max(row.max_violation, violation);
  ++row.instances;
  row.passed = row.max_violation <= row.tolerance;
}

}  // namespace

IdentityRow check_hellinger_identity(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution,
                                     double budget) {
  IdentityRow row = make_row("hellinger_identity", 1e-3);
  for (std::size_t i = 0; i < n; ++i) {
    const Classifier h1 = random_horizon(dim, budget, mix_seed(seed, 2 * i));
    const Classifier h2 = random_horizon(dim, budget, mix_seed(seed, 2 * i + 1));
    const double dh2 =
        hellinger_squared(BinaryDensity::lift(h1), BinaryDensity::lift(h2), GridRule{resolution}).value;
    const double dis = disagreement(h1, h2, ExactHorizonRule{resolution}).value;
    record(row, std::abs(dh2 - 2.0 * dis));
  }
  return row;
}

IdentityRow check_l2_l1_identity(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution,
                                 double budget) {
  IdentityRow row = make_row("l2_l1_identity", 1e-4);
  for (std::size_t i = 0; i < n; ++i) {
    const HorizonClassifier a = random_horizon(dim, budget, mix_seed(seed ^ 0x2121, 2 * i));
    const HorizonClassifier b = random_horizon(dim, budget, mix_seed(seed ^ 0x2121, 2 * i + 1));
    const double grid = disagreement(a, b, GridRule{resolution}).value;
    const double l1 = boundary_l1_distance(a.boundary(), b.boundary(), resolution);
    record(row, std::abs(grid - l1));
  }
  return row;
}

IdentityRow check_lift_lipschitz(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution) {
  IdentityRow row = make_row("lift_lipschitz", 1e-6);
  for (std::size_t i = 0; i < n; ++i) {
    const RealFn f = random_function(dim, mix_seed(seed ^ 0x3131, 2 * i), -0.3, 1.3);
    const RealFn g = random_function(dim, mix_seed(seed ^ 0x3131, 2 * i + 1), -0.3, 1.3);
    const double lhs = l1_distance(BinaryDensity::lift(dim, f), BinaryDensity::lift(dim, g), GridRule{resolution}).value;
    const double fg = integrate(dim, [&](std::span<const double> x) { return std::abs(f(x) - g(x)); },
                                GridRule{resolution}).value;
    record(row, std::max(0.0, lhs - 2.0 * fg));
  }
  return row;
}

IdentityRow check_kl_domination(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution) {
  IdentityRow row = make_row("kl_dominates_hellinger", 1e-8);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = BinaryDensity::lift(dim, random_function(dim, mix_seed(seed ^ 0x4141, 2 * i), 0.05, 0.95));
    const auto q = BinaryDensity::lift(dim, random_function(dim, mix_seed(seed ^ 0x4141, 2 * i + 1), 0.05, 0.95));
    const double h2 = hellinger_squared(p, q, GridRule{resolution}).value;
    const double kl = kl_divergence(p, q, GridRule{resolution}).value;
    record(row, std::max(0.0, h2 - kl));
  }
  return row;
}

IdentityRow check_normalization(std::size_t n, std::size_t dim, std::uint64_t seed, int resolution,
                                bool corrupt) {
  IdentityRow row = make_row("normalization", 1e-9);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = BinaryDensity::lift(dim, random_function(dim, mix_seed(seed ^ 0x5151, i), -0.3, 1.3));
    record(row, std::abs(total_mass(p, GridRule{resolution}).value - 1.0));
  }
  if (corrupt) {
    const RealFn f = random_function(dim, mix_seed(seed ^ 0x5151, n), 0.0, 1.0);
    const auto bad = BinaryDensity::from_pair(dim, [f](std::span<const double> x) -> std::array<double, 2> {
      const double v = clamp_unit(f(x));
      return {2.0 - 2.0 * v + 0.1, 2.0 * v};
    });
    record(row, std::abs(total_mass(bad, GridRule{resolution}).value - 1.0));
  }
  return row;
}

std::vector<IdentityRow> run_identity_suite(const IdentitySuiteConfig& c) {
  if (c.instances == 0) return {};
  if (c.dim < 2) throw RangeError("identity suite needs dim >= 2");
  return {check_hellinger_identity(c.instances, c.dim, c.seed, c.grid_resolution, c.boundary_budget),
          check_l2_l1_identity(c.instances, c.dim, c.seed, c.grid_resolution, c.boundary_budget),
          check_lift_lipschitz(c.instances, c.dim, c.seed, c.lipschitz_resolution),
          check_kl_domination(c.instances, c.dim, c.seed, c.lipschitz_resolution),
          check_normalization(c.instances, c.dim, c.seed, c.lipschitz_resolution, c.corrupt_normalization)};
}

IdentitySuiteConfig identity_config_from_json(const nlohmann::json& j) {
  IdentitySuiteConfig c;
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw FormatError("unsupported schema_version");
    if (j.contains("kind") && j.at("kind").get<std::string>() != "identity_suite")
      throw FormatError("config kind is not identity_suite");
    c.instances = j.value("instances", c.instances);
    c.dim = j.value("dim", c.dim);
    c.seed = j.value("seed", c.seed);
    c.grid_resolution = j.value("grid_resolution", c.grid_resolution);
    c.lipschitz_resolution = j.value("lipschitz_resolution", c.lipschitz_resolution);
    c.boundary_budget = j.value("boundary_budget", c.boundary_budget);
    c.corrupt_normalization = j.value("corrupt_normalization", c.corrupt_normalization);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  return c;
}

nlohmann::json to_json(const std::vector<IdentityRow>& rows) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rows)
    a.push_back({{"name", r.name},
                 {"tolerance", r.tolerance},
                 {"max_violation", r.max_violation},
                 {"instances", r.instances},
                 {"passed", r.passed}});
  return a;
}

}  // namespace barronlab
