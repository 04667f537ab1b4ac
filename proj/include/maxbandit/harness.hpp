#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxbandit/bounds.hpp"

namespace maxbandit {

enum class Algorithm { max_cb, maximal_eliminator, unified_arm };
const char* to_string(Algorithm a);

struct ExperimentSpec {
  PacParams pac;
  Algorithm algorithm = Algorithm::max_cb;
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  // Refusal threshold for deterministic sample counts (unified arm).
  std::uint64_t max_samples = 1'000'000'000;
  std::optional<std::string> per_trial_csv;
  MaxCbConfig max_cb;
  MeConfig me;
};

struct TrialOutcome {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  std::uint64_t total_samples = 0;
  bool success = false;
};

struct CorrectnessReport {
  std::uint64_t trials = 0;
  double success_rate = 0.0;  // fraction of trials with V > mu* - eps (strict)
  double wilson_lo = 0.0;     // Wilson 95% interval
  double wilson_hi = 0.0;
  double mean_T = 0.0;
  std::uint64_t max_T = 0;
  // Trials whose sample count exceeded the applicable deterministic cap
  // (pathwise total cap for the confidence-bound algorithm; the exact count
  // for the unified arm). Zero is the pass condition.
  std::uint64_t bound_violations = 0;
  double mu_star = 0.0;
  double wall_clock_s = 0.0;
  std::optional<std::string> per_trial_csv_path;
};

// Thrown when a deterministic sample requirement exceeds max_samples; carries
// the exact required count so the caller can report it.
struct BudgetRefusal : std::runtime_error {
  BudgetRefusal(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required;
  std::uint64_t budget;
};

// Wilson 95% score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t n);

// Runs `trials` independent executions with per-trial seeds derived from the
// master seed by trial index; the report is independent of worker count and
// completion order.
CorrectnessReport run_trials(const BanditInstance& instance,
                             const ExperimentSpec& spec);

// One row of the worked-example reproduction table.
struct ExampleRow {
  std::string name;
  double thm2_core = 0.0;
  double thm3_lower = 0.0;
  double thm4_upper = 0.0;
  double printed_thm2 = 0.0;
  double printed_thm3 = 0.0;  // 0 when the source quotes no value
  double printed_thm4 = 0.0;
  Verdict verdict = Verdict::inconclusive;

  double rel_err_thm2() const;
  double rel_err_thm3() const;
  double rel_err_thm4() const;
};

// Builds the two 10^4-arm reference instances and evaluates the closed-form
// bounds against their published values.
std::vector<ExampleRow> reproduce_examples();

// Serialization. JSON carries a schema_version field; wall-clock fields can be
// excluded for byte-for-byte comparisons.
std::string report_to_json(const CorrectnessReport& report,
                           bool include_wall_clock = true);
CorrectnessReport report_from_json(const std::string& text);
std::string report_to_csv(const CorrectnessReport& report);
std::string bound_report_json(const BanditInstance& instance,
                              const BoundReport& report);
std::string examples_table_csv(const std::vector<ExampleRow>& rows);
std::string examples_table_json(const std::vector<ExampleRow>& rows);

// Per-trial CSV, header `trial,seed,V,T,success`.
std::string trials_to_csv(const std::vector<TrialOutcome>& outcomes);

void write_file(const std::string& path, const std::string& content);

}  // namespace maxbandit
