#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "barronlab/entropy.hpp"
#include "barronlab/experiment.hpp"

using namespace barronlab;

namespace {

nlohmann::json load_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

std::string fmt_opt(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : ""; }

int cmd_rate_sweep(const std::string& config_path, int workers) {
  const RateSweepConfig cfg = rate_sweep_config_from_json(load_json(config_path));
  const RateReport rep = run_rate_sweep(cfg, workers);
  std::ostringstream csv;
  write_rate_csv(csv, rep);
  if (!cfg.csv_path.empty()) write_text_file(cfg.csv_path, csv.str());
  const std::string json = stable_dump(to_json(rep));
  if (!cfg.json_path.empty()) write_text_file(cfg.json_path, json);
  if (!cfg.svg_path.empty()) write_text_file(cfg.svg_path, rate_svg(rep));
  if (cfg.json_path.empty()) std::cout << json;

  for (const auto& [m, med] : rep.medians) std::cerr << fmt::format("m = {:6d}  median error {:.6f}\n", m, med);
  if (rep.fit) {
    std::cerr << fmt::format("slope {:.4f} +- {:.4f}\n", rep.fit->slope, rep.fit->slope_stderr);
    std::cerr << fmt::format("theory window [{:.4f}, {:.4f}]  acceptance window [-0.9, -0.15]\n", -rep.lower_exp,
                             -rep.upper_exp);
  }
  for (const auto& f : rep.flags) std::cerr << "flag: " << f << '\n';
  return 0;
}

int cmd_identity(const std::string& config_path, std::size_t instances, std::uint64_t seed, bool corrupt,
                 bool instances_set) {
  IdentitySuiteConfig cfg;
  if (!config_path.empty()) cfg = identity_config_from_json(load_json(config_path));
  if (instances_set) cfg.instances = instances;
  if (config_path.empty()) cfg.seed = seed;
  cfg.corrupt_normalization = cfg.corrupt_normalization || corrupt;
  const auto rows = run_identity_suite(cfg);
  bool ok = true;
  std::cout << "check,tolerance,max_violation,instances,passed\n";
  for (const auto& r : rows) {
    std::cout << fmt::format("{},{:.3g},{:.6g},{},{}\n", r.name, r.tolerance, r.max_violation, r.instances,
                             r.passed ? "pass" : "FAIL");
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

int cmd_pack(std::size_t d, const std::vector<int>& grid_sizes, double budget, std::uint64_t seed,
             std::size_t cap, const std::string& out) {
  const auto study = bump_packing_study(d, grid_sizes, budget, seed, 8, cap);
  std::string csv = "eps,ln_packing,ln_cover_bound\n";
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : study.levels) {
    csv += fmt::format("{},{},\n", fmt_opt(l.separation), fmt_opt(l.ln_count));
    levels.push_back({{"grid_size", l.grid_size},
                      {"target", l.target},
                      {"count", l.count},
                      {"ln_count", l.ln_count},
                      {"moment_threshold", l.moment_threshold},
                      {"scale", l.scale},
                      {"separation", l.separation},
                      {"min_distance", l.min_distance},
                      {"max_quadrature_rel_error", l.max_quadrature_rel_error},
                      {"mean_sign_attempts", l.mean_sign_attempts}});
  }
  emit(out, csv);
  std::cerr << stable_dump({{"achieved", levels},
                            {"slopes", {{"fitted", study.slope}, {"theory", study.theory_slope}}}});
  return 0;
}

int cmd_cover(const std::vector<double>& eps_list, std::size_t d, double c1, double budget, int members,
              std::uint64_t seed, int res, const std::string& out) {
  std::string csv = "eps,ln_packing,ln_cover_bound\n";
  nlohmann::json plans = nlohmann::json::array(), achieved = nlohmann::json::array();
  for (double eps : eps_list) {
    const auto plan = fourier_net_plan(eps, d, c1, budget);
    std::vector<TrigSeries> fs;
    for (int i = 0; i < members; ++i)
      fs.push_back(sample_trig_series(d, budget, 6, 6, mix_seed(seed, static_cast<std::uint64_t>(i))));
    const auto rep = cover_with_fourier_net(plan, fs, res);
    csv += fmt::format("{},,{}\n", fmt_opt(eps), fmt_opt(plan.ln_cardinality_bound));
    plans.push_back(to_json(plan));
    achieved.push_back({{"eps", eps}, {"pass_rate", rep.pass_rate}, {"max_distance", rep.max_distance}});
  }
  emit(out, csv);
  std::cerr << stable_dump({{"plan", plans}, {"achieved", achieved}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barron-class classification lab"};
  app.require_subcommand(1);

  // rate-sweep
  auto* sweep = app.add_subcommand("rate-sweep", "Train on a grid of sample sizes and fit the error rate");
  std::string sweep_config;
  int workers = 0;
  sweep->add_option("--config", sweep_config, "JSON config file")->required();
  sweep->add_option("--workers", workers, "Worker threads (default BARRONLAB_WORKERS or all cores)");

  // identity-suite
  auto* ident = app.add_subcommand("identity-suite", "Randomized checks of the density identities");
  std::string ident_config;
  std::size_t ident_instances = 200;
  std::uint64_t ident_seed = 0;
  bool corrupt = false;
  ident->add_option("--config", ident_config, "JSON config file");
  auto* inst_opt = ident->add_option("--instances", ident_instances, "Random instances per check");
  ident->add_option("--seed", ident_seed, "Seed");
  ident->add_flag("--corrupt", corrupt, "Add an unnormalized density (the normalization row must fail)");

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Metric entropy tools");
  entropy->require_subcommand(1);
  auto* pack = entropy->add_subcommand("pack", "Bump-lattice packing families");
  std::size_t pack_d = 1;
  std::vector<int> pack_n{16, 32, 64};
  double pack_budget = 1.0;
  std::uint64_t pack_seed = 0;
  std::size_t pack_cap = 0;
  std::string pack_out;
  pack->add_option("--d", pack_d, "Dimension");
  pack->add_option("--N", pack_n, "Grid sizes (multiples of 16)");
  pack->add_option("--budget", pack_budget, "Class constant C");
  pack->add_option("--seed", pack_seed, "Seed");
  pack->add_option("--cap", pack_cap, "Cap on the family size (0 = none)");
  pack->add_option("--out", pack_out, "CSV output path (default stdout)");

  auto* cover = entropy->add_subcommand("cover", "Sparse quantized Fourier net on random members");
  std::vector<double> cover_eps{0.4, 0.2};
  std::size_t cover_d = 1;
  double cover_c1 = 1.0, cover_budget = 1.0;
  int cover_members = 50, cover_res = 4096;
  std::uint64_t cover_seed = 0;
  std::string cover_out;
  cover->add_option("--eps", cover_eps, "Target radii");
  cover->add_option("--d", cover_d, "Dimension");
  cover->add_option("--c1", cover_c1, "Constant C1");
  cover->add_option("--budget", cover_budget, "Class constant C");
  cover->add_option("--members", cover_members, "Random members per radius");
  cover->add_option("--res", cover_res, "Grid points per axis for the sup norm");
  cover->add_option("--seed", cover_seed, "Seed");
  cover->add_option("--out", cover_out, "CSV output path (default stdout)");

  auto* solve = entropy->add_subcommand("solve-eps", "Root of n eps^2 = V(eps)");
  double sv_c = 1.0, sv_alpha = 1.0, sv_beta = 0.0;
  std::vector<double> sv_n{8};
  solve->add_option("--C", sv_c, "Entropy constant");
  solve->add_option("--alpha", sv_alpha, "Polynomial exponent");
  solve->add_option("--beta", sv_beta, "Logarithmic exponent");
  solve->add_option("--n", sv_n, "Sample sizes");

  auto* erates = entropy->add_subcommand("rates", "Rate exponents for dimension d");
  int erates_d = 2;
  erates->add_option("--d", erates_d, "Dimension")->required();

  // calc
  auto* calc = app.add_subcommand("calc", "Closed-form calculators");
  calc->require_subcommand(1);
  auto* crates = calc->add_subcommand("rates", "Rate exponents and alpha = beta for dimension d");
  int crates_d = 2;
  crates->add_option("--d", crates_d, "Dimension")->required();
  auto* nnb = calc->add_subcommand("nn-entropy", "Entropy bound of bounded sparse networks");
  double nn_delta = 1.0, nn_d = 1.0, nn_w = 1.0, nn_b = 1.0;
  nnb->add_option("--delta", nn_delta, "Resolution delta in (0, 1]");
  nnb->add_option("--d", nn_d, "Input dimension");
  nnb->add_option("--W", nn_w, "Nonzero weight budget");
  nnb->add_option("--B", nn_b, "Weight bound");
  auto* plan_cmd = calc->add_subcommand("plan", "Network architecture for m samples");
  double plan_m = 1000, plan_M = 1, plan_R = 1, plan_tau = 1, plan_scale = 1;
  std::size_t plan_d = 2;
  plan_cmd->add_option("--m", plan_m, "Sample size");
  plan_cmd->add_option("--d", plan_d, "Dimension");
  plan_cmd->add_option("--M", plan_M, "Number of pieces");
  plan_cmd->add_option("--R", plan_R, "Boundary moment budget");
  plan_cmd->add_option("--tau", plan_tau, "Absolute constant tau");
  plan_cmd->add_option("--scale", plan_scale, "Scale factor in (0, 1]");

  // train
  auto* train = app.add_subcommand("train", "Train one network on a noiseless sample");
  std::string train_classifier, train_out;
  std::int64_t train_m = 512, train_mc = 100000;
  double train_scale = 1e-4;
  std::uint64_t train_seed = 0;
  TrainConfig tcfg;
  train->add_option("--classifier", train_classifier, "Classifier JSON file")->required();
  train->add_option("--m", train_m, "Sample size");
  train->add_option("--scale", train_scale, "Architecture scale factor");
  train->add_option("--seed", train_seed, "Seed");
  train->add_option("--epochs", tcfg.epochs, "Epochs per restart");
  train->add_option("--restarts", tcfg.restarts, "Random restarts");
  train->add_option("--n-mc", train_mc, "Monte Carlo draws for the error estimate");
  train->add_option("--out", train_out, "Output JSON path (default stdout)");

  // helpers
  auto* gen = app.add_subcommand("gen-classifier", "Random regular classifier as JSON");
  std::size_t gen_d = 2;
  int gen_pieces = 1;
  double gen_budget = 1.0;
  std::uint64_t gen_seed = 7;
  std::string gen_out;
  gen->add_option("--d", gen_d, "Dimension");
  gen->add_option("--pieces", gen_pieces, "Number of pieces");
  gen->add_option("--budget", gen_budget, "Boundary moment budget");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  auto* sample = app.add_subcommand("sample", "Noiseless labeled sample as CSV");
  std::string sample_classifier, sample_out;
  std::size_t sample_m = 100;
  std::uint64_t sample_seed = 0;
  sample->add_option("--classifier", sample_classifier, "Classifier JSON file")->required();
  sample->add_option("--m", sample_m, "Sample size");
  sample->add_option("--seed", sample_seed, "Seed");
  sample->add_option("--out", sample_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return cmd_rate_sweep(sweep_config, workers);
    if (*ident) return cmd_identity(ident_config, ident_instances, ident_seed, corrupt, inst_opt->count() > 0);
    if (*pack) return cmd_pack(pack_d, pack_n, pack_budget, pack_seed, pack_cap, pack_out);
    if (*cover) return cmd_cover(cover_eps, cover_d, cover_c1, cover_budget, cover_members, cover_seed, cover_res,
                                 cover_out);
    if (*solve) {
      std::cout << "n,eps_n\n";
      for (double n : sv_n)
        std::cout << fmt::format("{},{:.17g}\n", n, solve_eps_n({sv_c, sv_alpha, sv_beta}, n));
      return 0;
    }
    if (*erates || *crates) {
      const int d = *erates ? erates_d : crates_d;
      std::cout << stable_dump(to_json(rate_exponents(d)));
      return 0;
    }
    if (*nnb) {
      std::cout << fmt::format("{:.17g}\n", nn_entropy_bound(nn_delta, nn_d, nn_w, nn_b));
      return 0;
    }
    if (*plan_cmd) {
      std::cout << stable_dump(to_json(plan_architecture(plan_m, plan_d, plan_M, plan_R, plan_tau, plan_scale)));
      return 0;
    }
    if (*train) {
      const Classifier h = classifier_from_json(load_json(train_classifier));
      const LabeledSample s = sample_noiseless(h, static_cast<std::size_t>(train_m), mix_seed(train_seed, 1));
      const auto* pw = h.as_piecewise();
      const double M = pw ? static_cast<double>(pw->pieces().size()) : 1.0;
      const auto plan = plan_architecture(static_cast<double>(train_m), h.dim(), M, 1.0, 1.0, train_scale);
      tcfg.seed = mix_seed(train_seed, 2);
      const TrainResult res = train_erm(s, plan, tcfg);
      const Estimate err = misclassification_error(res.net, h, train_mc, mix_seed(train_seed, 3));
      nlohmann::json j = to_json(res.net);
      j["plan"] = to_json(plan);
      j["achieved_risk"] = res.achieved_risk;
      j["seed"] = train_seed;
      j["misclass_error"] = err.value;
      j["mc_half_width"] = err.half_width;
      emit(train_out, stable_dump(j));
      std::cerr << fmt::format("achieved hinge risk {:.6f}  misclassification {:.6f} +- {:.6f}\n",
                               res.achieved_risk, err.value, err.half_width);
      return 0;
    }
    if (*gen) {
      emit(gen_out, stable_dump(to_json(make_regular_classifier(gen_d, gen_pieces, gen_budget, gen_seed))));
      return 0;
    }
    if (*sample) {
      const Classifier h = classifier_from_json(load_json(sample_classifier));
      std::ostringstream os;
      write_sample_csv(os, sample_noiseless(h, sample_m, sample_seed));
      emit(sample_out, os.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
