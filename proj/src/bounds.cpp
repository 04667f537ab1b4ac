#include "maxbandit/bounds.hpp"

#include <cmath>
#include <sstream>

#include "maxbandit/log.hpp"

namespace maxbandit {

namespace {

void warn_thm1_preconditions(const TailParams& tail) {
  if (tail.beta > 1.0)
    warn("multi-arm lower bound: validity requires beta <= 1");
  if (tail.eps0 > std::pow(4.0 * tail.A, -1.0 / tail.beta))
    warn("multi-arm lower bound: validity requires eps0 <= (4A)^(-1/beta)");
}

}  // namespace

double thm1_lower_bound(const BanditInstance& instance, const PacParams& pac) {
  const TailParams& tail = instance.tail();
  pac.validate(tail);
  warn_thm1_preconditions(tail);
  const double log_term = std::log(3.0 / (16.0 * pac.delta));
  const std::size_t excluded = instance.optimal_arm();
  double sum = 0.0;
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    if (k == excluded) continue;
    const double denom_arg = std::min(tail.eps0, pac.eps + instance.gap(k));
    sum += log_term / (8.0 * tail.A * std::pow(denom_arg, tail.beta));
  }
  return sum;
}

std::pair<double, double> thm2_upper_bound(const BanditInstance& instance,
                                           const PacParams& pac) {
  const TailParams& tail = instance.tail();
  const auto sched = max_cb_schedule(instance.num_arms(), tail, pac);
  const double budget = sched.L - std::log(pac.delta);
  double core = 0.0;
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    const double denom_arg = std::max(pac.eps, instance.gap(k));
    core += budget / (tail.A * std::pow(denom_arg, tail.beta));
  }
  const double init = static_cast<double>(instance.num_arms()) *
                      static_cast<double>(sched.N0);
  return {core, init};
}

double thm3_lower_bound(std::size_t K_size, const TailParams& tail,
                        const PacParams& pac) {
  pac.validate(tail);
  if (tail.beta > 1.0)
    warn("unified lower bound: validity requires beta <= 1");
  if (tail.eps0 >
      std::pow(static_cast<double>(K_size) / (2.0 * tail.A), 1.0 / tail.beta))
    warn("unified lower bound: validity requires eps0 <= (|K|/(2A))^(1/beta)");
  return static_cast<double>(K_size) /
         (4.0 * tail.A * std::pow(pac.eps, tail.beta)) *
         std::log(3.0 / (5.0 * pac.delta));
}

double thm4_upper_bound(std::size_t K_size, const TailParams& tail,
                        const PacParams& pac) {
  pac.validate(tail);
  return static_cast<double>(K_size) * std::log(1.0 / pac.delta) /
             (tail.A * std::pow(pac.eps, tail.beta)) +
         2.0;
}

std::pair<std::vector<double>, std::vector<double>> theta_terms(
    const BanditInstance& instance, const PacParams& pac) {
  const TailParams& tail = instance.tail();
  pac.validate(tail);
  const double two_pow_beta = std::pow(2.0, tail.beta);
  const double inv_eps0 = 1.0 / std::pow(tail.eps0, tail.beta);
  std::vector<double> theta1(instance.num_arms());
  std::vector<double> theta2(instance.num_arms());
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    const double gap = instance.gap(k);
    theta1[k] = (1.0 + two_pow_beta) /
                std::pow(std::min(tail.eps0, pac.eps + gap), tail.beta);
    theta2[k] =
        1.0 / std::pow(std::max(pac.eps, gap), tail.beta) + inv_eps0;
  }
  return {std::move(theta1), std::move(theta2)};
}

BoundReport evaluate_bounds(const BanditInstance& instance,
                            const PacParams& pac) {
  BoundReport r;
  r.thm1_lower = thm1_lower_bound(instance, pac);
  std::tie(r.thm2_core, r.thm2_init) = thm2_upper_bound(instance, pac);
  r.thm2_total = r.thm2_core + r.thm2_init;
  r.thm3_lower = thm3_lower_bound(instance.num_arms(), instance.tail(), pac);
  r.thm4_upper = thm4_upper_bound(instance.num_arms(), instance.tail(), pac);
  std::tie(r.theta1, r.theta2) = theta_terms(instance, pac);
  return r;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::multi_arm_favored: return "multi_arm_favored";
    case Verdict::unified_favored: return "unified_favored";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

CaseComparison case_comparison(const BanditInstance& instance,
                               const PacParams& pac) {
  CaseComparison c;
  c.report = evaluate_bounds(instance, pac);
  if (instance.num_arms() == 1) {
    c.verdict = Verdict::not_applicable;
    return c;
  }
  c.multi_upper_beats_unified_lower = c.report.thm2_core < c.report.thm3_lower;
  c.unified_upper_beats_multi_upper = c.report.thm2_core > c.report.thm4_upper;
  if (c.multi_upper_beats_unified_lower && !c.unified_upper_beats_multi_upper)
    c.verdict = Verdict::multi_arm_favored;
  else if (c.unified_upper_beats_multi_upper)
    c.verdict = Verdict::unified_favored;
  else
    c.verdict = Verdict::inconclusive;
  return c;
}

std::string bound_report_csv(const BanditInstance& instance,
                             const BoundReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "# thm1_lower," << report.thm1_lower << "\n"
      << "# thm2_core," << report.thm2_core << "\n"
      << "# thm2_init," << report.thm2_init << "\n"
      << "# thm2_total," << report.thm2_total << "\n"
      << "# thm3_lower," << report.thm3_lower << "\n"
      << "# thm4_upper," << report.thm4_upper << "\n"
      << "arm_index,mu_star_k,gap,theta1,theta2\n";
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    out << (k + 1) << ',' << instance.arm(k).max_reward() << ','
        << instance.gap(k) << ',' << report.theta1[k] << ','
        << report.theta2[k] << "\n";
  }
  return out.str();
}

}  // namespace maxbandit
