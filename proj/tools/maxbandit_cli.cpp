// Command-line surface: bound evaluation, Monte-Carlo simulation, worked-
// example reproduction, tail-assumption verification and adversarial
// construction reports.
//
// Exit codes: 0 pass, 1 statistical or bound failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxbandit/adversarial.hpp"
#include "maxbandit/harness.hpp"
#include "maxbandit/instance_io.hpp"

namespace {

using namespace maxbandit;

int cmd_bounds(const std::string& instance_path, double eps, double delta,
               std::optional<double> eps0_override,
               const std::optional<std::string>& out_path,
               const std::string& format) {
  BanditInstance instance = load_instance(instance_path);
  if (eps0_override) {
    TailParams tail = instance.tail();
    tail.eps0 = *eps0_override;
    std::vector<DistPtr> arms;
    for (std::size_t k = 0; k < instance.num_arms(); ++k)
      arms.push_back(instance.arm_ptr(k));
    instance = BanditInstance(std::move(arms), tail);
  }
  const PacParams pac{eps, delta};
  const CaseComparison c = case_comparison(instance, pac);
  const std::string text = format == "csv"
                               ? bound_report_csv(instance, c.report)
                               : bound_report_json(instance, c.report);
  if (out_path)
    write_file(*out_path, text);
  else
    std::cout << text;
  std::cout << "verdict: " << to_string(c.verdict) << "\n";
  return 0;
}

int cmd_simulate(const std::string& instance_path, const std::string& alg,
                 ExperimentSpec spec, const std::optional<std::string>& out_path,
                 const std::string& format) {
  if (alg == "max-cb")
    spec.algorithm = Algorithm::max_cb;
  else if (alg == "me")
    spec.algorithm = Algorithm::maximal_eliminator;
  else if (alg == "unified")
    spec.algorithm = Algorithm::unified_arm;
  else
    throw CLI::ValidationError("--alg must be one of max-cb|me|unified");

  const BanditInstance instance = load_instance(instance_path);
  CorrectnessReport report;
  try {
    report = run_trials(instance, spec);
  } catch (const BudgetRefusal& e) {
    std::cerr << "refused: the unified-arm run needs exactly " << e.required
              << " samples per trial, above the --max-samples budget "
              << e.budget << "\n";
    return 1;
  }

  const std::string text =
      format == "csv" ? report_to_csv(report) : report_to_json(report);
  if (out_path)
    write_file(*out_path, text);
  else
    std::cout << text << "\n";

  // Pass verdict: empirical success compatible with the 1 - delta target.
  const double sigma3 =
      3.0 * std::sqrt(report.success_rate * (1.0 - report.success_rate) /
                      static_cast<double>(report.trials));
  const bool stat_ok =
      report.success_rate + sigma3 >= 1.0 - spec.pac.delta;
  const bool caps_ok = report.bound_violations == 0;
  std::cout << "success_rate " << report.success_rate << " (+3sigma "
            << report.success_rate + sigma3 << ", target "
            << 1.0 - spec.pac.delta << "), bound_violations "
            << report.bound_violations << "\n";
  return (stat_ok && caps_ok) ? 0 : 1;
}

int cmd_examples() {
  const auto rows = reproduce_examples();
  std::cout << examples_table_csv(rows);
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.rel_err_thm2() < 0.01 && r.rel_err_thm3() < 0.01 &&
         r.rel_err_thm4() < 0.01;
  }
  ok = ok && rows[0].verdict == Verdict::multi_arm_favored &&
       rows[1].verdict == Verdict::unified_favored;
  std::cout << (ok ? "examples: PASS" : "examples: FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_verify_assumption(const std::string& instance_path, int grid) {
  const BanditInstance instance = load_instance(instance_path, false);
  bool ok = true;
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    const auto rep = check_assumption1(instance.arm(k), instance.tail(), grid);
    if (rep.pass) {
      std::cout << "arm " << (k + 1) << ": pass\n";
    } else {
      ok = false;
      std::cout << "arm " << (k + 1) << ": FAIL at eps = " << rep.violating_eps
                << " (required " << rep.required << ", got " << rep.actual
                << ")\n";
    }
  }
  return ok ? 0 : 1;
}

int cmd_adversarial(const std::string& instance_path, double eps,
                    double delta) {
  const BanditInstance instance = load_instance(instance_path);
  const PacParams pac{eps, delta};
  nlohmann::json j;
  j["schema_version"] = 1;
  nlohmann::json arms = nlohmann::json::array();
  bool ok = true;
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    const auto h = build_hypothesis_multi(instance, k, pac);
    const auto checks = verify_construction(h, instance.tail());
    ok = ok && checks.pass();
    nlohmann::json a;
    a["arm_index"] = k + 1;
    a["case"] = h.case_a ? "a" : "b";
    a["gamma1"] = h.gamma1;
    if (h.gamma2) a["gamma2"] = *h.gamma2;
    if (h.gamma3) a["gamma3"] = *h.gamma3;
    a["gamma_k"] = h.gamma_k;
    a["t_k"] = h.t_k;
    if (h.mu_bar) a["mu_bar"] = *h.mu_bar;
    a["checks"] = {{"normalization", checks.normalization},
                   {"new_maximum", checks.new_maximum},
                   {"assumption1", checks.assumption1},
                   {"gamma_brackets", checks.gamma_brackets},
                   {"integral", checks.integral}};
    arms.push_back(std::move(a));
  }
  j["hypotheses"] = std::move(arms);
  const auto u = build_hypothesis_unified(instance, pac);
  const auto uchecks = verify_construction(u, instance.tail());
  ok = ok && uchecks.pass();
  j["unified"] = {{"gamma", u.gamma},
                  {"t", u.t},
                  {"checks",
                   {{"normalization", uchecks.normalization},
                    {"new_maximum", uchecks.new_maximum},
                    {"assumption1", uchecks.assumption1},
                    {"gamma_brackets", uchecks.gamma_brackets},
                    {"integral", uchecks.integral}}}};
  std::cout << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max K-armed bandit: PAC maximum search, bounds and "
               "adversarial constructions"};
  app.require_subcommand(1);

  // bounds
  std::string instance_path, format = "json";
  double eps = 0.0, delta = 0.0;
  std::optional<double> eps0_override;
  std::optional<std::string> out_path;
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate closed-form bounds");
  bounds_cmd->add_option("--instance", instance_path)->required();
  bounds_cmd->add_option("--eps", eps)->required();
  bounds_cmd->add_option("--delta", delta)->required();
  bounds_cmd->add_option("--eps0-override", eps0_override);
  bounds_cmd->add_option("--out", out_path);
  bounds_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"csv", "json"}));

  // simulate
  std::string alg;
  ExperimentSpec spec;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo correctness runs");
  sim_cmd->add_option("--instance", instance_path)->required();
  sim_cmd->add_option("--alg", alg)->required();
  sim_cmd->add_option("--eps", spec.pac.eps)->required();
  sim_cmd->add_option("--delta", spec.pac.delta)->required();
  sim_cmd->add_option("--trials", spec.trials);
  sim_cmd->add_option("--seed", spec.master_seed);
  sim_cmd->add_option("--workers", spec.workers);
  sim_cmd->add_option("--max-samples", spec.max_samples);
  sim_cmd->add_option("--per-trial-csv", spec.per_trial_csv);
  sim_cmd->add_option("--out", out_path);
  sim_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"csv", "json"}));

  // examples
  app.add_subcommand("examples", "reproduce the published worked examples");

  // verify-assumption
  int grid = 100;
  auto* verify_cmd =
      app.add_subcommand("verify-assumption", "tail-assumption grid check");
  verify_cmd->add_option("--instance", instance_path)->required();
  verify_cmd->add_option("--grid", grid);

  // adversarial
  auto* adv_cmd =
      app.add_subcommand("adversarial", "lower-bound hypothesis report");
  adv_cmd->add_option("--instance", instance_path)->required();
  adv_cmd->add_option("--eps", eps)->required();
  adv_cmd->add_option("--delta", delta)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("bounds"))
      return cmd_bounds(instance_path, eps, delta, eps0_override, out_path,
                        format);
    if (app.got_subcommand("simulate"))
      return cmd_simulate(instance_path, alg, spec, out_path, format);
    if (app.got_subcommand("examples")) return cmd_examples();
    if (app.got_subcommand("verify-assumption"))
      return cmd_verify_assumption(instance_path, grid);
    if (app.got_subcommand("adversarial"))
      return cmd_adversarial(instance_path, eps, delta);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
