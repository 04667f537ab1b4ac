#pragma once

#include <cstdint>

#include "maxbandit/bandit.hpp"

namespace maxbandit {

// PAC target: accuracy eps, confidence delta.
struct PacParams {
  double eps = 0.0;
  double delta = 0.0;

  // Throws on eps <= 0 or delta outside (0, 1). Emits a warning (but does not
  // reject) when eps exceeds the tail validity radius eps0.
  void validate(const TailParams& tail) const;
};

struct MaxCbConfig {
  bool clamp_L = true;  // lift L to 10 when the formula yields less
};

struct MeConfig {
  // Confidence-radius argument at phase t: cumulative per-arm count S_t by
  // default; the literal (2^t - 1/2) * n0 reading when set.
  bool literal_ub_arg = false;
  int max_phases = 64;  // safety cap; unreachable for sane parameters
};

// Exploration constant 6 ln(|K| (1 - ln(delta) / (A eps^beta))), optionally
// clamped from below to 10 (the regime the upper-bound guarantee covers).
double compute_L(std::size_t K_size, const TailParams& tail,
                 const PacParams& pac, bool clamp = true);

// Confidence radius ((L - ln delta) / (A count))^(1/beta); strictly
// decreasing in count. Throws on count <= 0.
double ucb_radius(double count, double L, const TailParams& tail,
                  const PacParams& pac);

// Derived constants of the confidence-bound algorithm, exposed so the harness
// can check the pathwise sample caps.
struct MaxCbSchedule {
  double L = 0.0;
  std::uint64_t N0 = 0;            // initial per-arm batch
  std::uint64_t per_arm_cap = 0;   // floor((L - ln d)/(A eps^beta)) + 1
  std::uint64_t total_cap = 0;     // |K| * per_arm_cap
};
MaxCbSchedule max_cb_schedule(std::size_t K_size, const TailParams& tail,
                              const PacParams& pac, bool clamp = true);

// Upper-confidence-bound search: sample N0 from every arm, then repeatedly
// sample the arm with the largest index V^k + UB(C(k)) (ties -> lowest index)
// until UB at the leading arm drops below eps.
RunResult run_max_cb(const BanditInstance& instance, const PacParams& pac,
                     Rng& rng, const MaxCbConfig& cfg = {});

// Phased elimination with doubling batches: arms whose index falls below the
// best observed reward are dropped between phases.
RunResult run_maximal_eliminator(const BanditInstance& instance,
                                 const PacParams& pac, Rng& rng,
                                 const MeConfig& cfg = {});

// Deterministic sample count of the unified-arm algorithm,
// ceil(-ln(delta) |K| / (A eps^beta)) + 1. Throws if the count does not fit a
// 64-bit counter.
std::uint64_t unified_sample_count(std::size_t K_size, const TailParams& tail,
                                   const PacParams& pac);

// Single-shot search on the unified arm: draw the fixed number of samples and
// return the best.
RunResult run_unified_arm(const BanditInstance& instance, const PacParams& pac,
                          Rng& rng);

}  // namespace maxbandit
