#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maxbandit/algorithms.hpp"
#include "maxbandit/bandit.hpp"

namespace maxbandit {

// Closed-form bound evaluations for one instance / PAC target.
struct BoundReport {
  double thm1_lower = 0.0;   // multi-arm lower bound on E[T]
  double thm2_core = 0.0;    // summation term of the multi-arm upper bound
  double thm2_init = 0.0;    // |K| * N0 initialization term
  double thm2_total = 0.0;
  double thm3_lower = 0.0;   // unified-arm lower bound
  double thm4_upper = 0.0;   // unified-arm upper bound
  std::vector<double> theta1;
  std::vector<double> theta2;
};

// Sum over all arms but one lowest-index optimal arm of
// ln(3/(16 delta)) / (8 A (min(eps0, eps + mu* - mu*_k))^beta).
// Warns (and still evaluates) outside the validity regime beta <= 1,
// eps0 <= (4A)^(-1/beta).
double thm1_lower_bound(const BanditInstance& instance, const PacParams& pac);

// (core, init): core = sum_k (L - ln d)/(A max(eps, mu* - mu*_k)^beta),
// init = |K| * N0. Reported separately; the core term is what the worked
// examples quote.
std::pair<double, double> thm2_upper_bound(const BanditInstance& instance,
                                           const PacParams& pac);

double thm3_lower_bound(std::size_t K_size, const TailParams& tail,
                        const PacParams& pac);

double thm4_upper_bound(std::size_t K_size, const TailParams& tail,
                        const PacParams& pac);

// Per-arm ratio terms: theta1_k = (1 + 2^beta)/min(eps0, eps + gap_k)^beta,
// theta2_k = 1/max(eps, gap_k)^beta + 1/eps0^beta.
std::pair<std::vector<double>, std::vector<double>> theta_terms(
    const BanditInstance& instance, const PacParams& pac);

BoundReport evaluate_bounds(const BanditInstance& instance,
                            const PacParams& pac);

enum class Verdict {
  multi_arm_favored,
  unified_favored,
  inconclusive,
  not_applicable,
};
const char* to_string(Verdict v);

struct CaseComparison {
  BoundReport report;
  // Multi-arm upper bound (core term) beats the unified lower bound.
  bool multi_upper_beats_unified_lower = false;
  // Unified upper bound beats the multi-arm upper bound (core term).
  bool unified_upper_beats_multi_upper = false;
  Verdict verdict = Verdict::inconclusive;
};

CaseComparison case_comparison(const BanditInstance& instance,
                               const PacParams& pac);

// Fixed-column CSV: a scalar header block followed by
// arm_index, mu_star_k, gap, theta1, theta2 rows (1-based arm indices).
std::string bound_report_csv(const BanditInstance& instance,
                             const BoundReport& report);

}  // namespace maxbandit
