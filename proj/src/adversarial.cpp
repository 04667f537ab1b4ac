#include "maxbandit/adversarial.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace maxbandit {

namespace {

// inf{mu : F(mu) > c} by bisection; equals sup{mu : F(mu) <= c} for a
// monotone right-continuous CDF.
double upper_level_point(const Distribution& d, double c) {
  double lo = d.support_lo();
  double hi = d.max_reward();
  if (d.cdf(lo) > c) return lo;
  for (int i = 0; i < 200 && lo < hi; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (d.cdf(mid) > c)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_smooth(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 30);
}

// Integrates a density piece whose only possible singularities sit at the
// endpoints, via dyadic shells shrinking toward each end. The innermost
// sliver (relative width 2^-60) is dropped; its mass is negligible for
// integrable power singularities with exponent above ~0.4.
double integrate_piece(const Distribution& dist, double a, double b) {
  const auto f = [&dist](double x) { return dist.density(x); };
  const double mid = a + 0.5 * (b - a);
  constexpr int kShells = 60;
  constexpr double kShellTol = 1e-11;
  double total = 0.0;
  // Shells toward the left endpoint a.
  double hi = mid;
  for (int j = 0; j < kShells; ++j) {
    const double lo = a + (hi - a) * 0.5;
    if (!(lo > a) || !(lo < hi)) break;
    total += integrate_smooth(f, lo, hi, kShellTol);
    hi = lo;
  }
  // Shells toward the right endpoint b.
  double lo2 = mid;
  for (int j = 0; j < kShells; ++j) {
    const double hi2 = b - (b - lo2) * 0.5;
    if (!(hi2 > lo2) || !(hi2 < b)) break;
    total += integrate_smooth(f, lo2, hi2, kShellTol);
    lo2 = hi2;
  }
  return total;
}

bool supported_base(const Distribution& d) {
  const auto t = d.type_name();
  return t == "power_tail" || t == "uniform" || t == "point_mass";
}

constexpr double kBracketSlack = 1e-12;

}  // namespace

double integrate_density(const Distribution& dist) {
  if (!dist.has_density())
    throw std::invalid_argument(dist.type_name() +
                                ": no density decomposition to integrate");
  double total = 0.0;
  for (const Atom& a : dist.atoms()) total += a.mass;
  const auto pts = dist.density_breakpoints();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i + 1] > pts[i]) total += integrate_piece(dist, pts[i], pts[i + 1]);
  return total;
}

HypothesisConstruction build_hypothesis_multi(const BanditInstance& instance,
                                              std::size_t k,
                                              const PacParams& pac) {
  const TailParams& tail = instance.tail();
  pac.validate(tail);
  if (k >= instance.num_arms())
    throw std::out_of_range("build_hypothesis_multi: arm index out of range");
  if (tail.beta > 1.0)
    throw std::invalid_argument("build_hypothesis_multi: requires beta <= 1");
  if (tail.eps0 > std::pow(4.0 * tail.A, -1.0 / tail.beta) * (1.0 + 1e-12))
    throw std::invalid_argument(
        "build_hypothesis_multi: requires eps0 <= (4A)^(-1/beta)");
  if (!(pac.eps < tail.eps0))
    throw std::invalid_argument("build_hypothesis_multi: requires eps < eps0");
  const DistPtr base = instance.arm_ptr(k);
  if (!supported_base(*base))
    throw std::invalid_argument(
        "build_hypothesis_multi: unsupported base variant " +
        base->type_name());

  HypothesisConstruction h;
  h.k = k;
  h.gap = instance.gap(k);
  h.expected_max = instance.mu_star() + pac.eps;
  const double D = h.gap + pac.eps;  // gap to the new maximum
  h.gamma1 = 1.0 - tail.A * std::pow(tail.eps0, tail.beta);
  h.gamma_k =
      1.0 - 2.0 * tail.A * std::pow(std::min(tail.eps0, D), tail.beta);
  h.t_k = std::log(3.0 / (16.0 * pac.delta)) / (4.0 * (1.0 - h.gamma_k));
  h.case_a = tail.eps0 <= D;

  PerturbedTail::Params p;
  p.base = base;
  p.tail_hi = h.expected_max;
  p.tail_coef = tail.A;
  p.tail_beta = tail.beta;
  if (h.case_a) {
    // Whole base reweighted by gamma1; tail occupies the top eps0 window.
    p.cut = base->max_reward();
    p.w_lo = p.w_atom = p.w_hi = h.gamma1;
    p.tail_lo = h.expected_max - tail.eps0;
  } else {
    const double mass_D = tail.A * std::pow(D, tail.beta);
    const double mu_bar = upper_level_point(*base, h.gamma1);
    const double F_bar = base->cdf(mu_bar);
    const double atom = F_bar - base->cdf_left(mu_bar);
    const double gamma2 = 1.0 - mass_D / h.gamma1;
    // Mass balance is linear in gamma3; solved in closed form. With no atom
    // the balance is already met and gamma3 is vacuous.
    const double gamma3 =
        atom > 0.0
            ? (1.0 - mass_D - (1.0 - F_bar) - gamma2 * (F_bar - atom)) / atom
            : gamma2;
    h.mu_bar = mu_bar;
    h.atom_mass = atom;
    h.gamma2 = gamma2;
    h.gamma3 = gamma3;
    p.cut = mu_bar;
    p.w_lo = gamma2;
    p.w_atom = gamma3;
    p.w_hi = 1.0;
    p.tail_lo = base->max_reward();
  }
  h.perturbed = std::make_shared<PerturbedTail>(std::move(p));
  return h;
}

UnifiedHypothesis build_hypothesis_unified(const BanditInstance& instance,
                                           const PacParams& pac) {
  const TailParams& tail = instance.tail();
  pac.validate(tail);
  const double K = static_cast<double>(instance.num_arms());
  if (tail.beta > 1.0)
    throw std::invalid_argument("build_hypothesis_unified: requires beta <= 1");
  if (tail.eps0 >
      std::pow(K / (2.0 * tail.A), 1.0 / tail.beta) * (1.0 + 1e-12))
    throw std::invalid_argument(
        "build_hypothesis_unified: requires eps0 <= (|K|/(2A))^(1/beta)");
  if (!(pac.eps < tail.eps0))
    throw std::invalid_argument("build_hypothesis_unified: requires eps < eps0");

  const BanditInstance unified = instance.unify();
  const DistPtr base = unified.arm_ptr(0);

  UnifiedHypothesis h;
  h.K_size = instance.num_arms();
  h.gamma = 1.0 - tail.A * std::pow(pac.eps, tail.beta) / K;
  h.t = std::log(3.0 / (5.0 * pac.delta)) / (4.0 * (1.0 - h.gamma));
  h.expected_max = instance.mu_star() + pac.eps;

  // A uniform rescale of the whole base by gamma would leave the top of the
  // distribution short of the tail-assumption envelope at radii beyond eps.
  // Instead, as in the multi-arm narrow-gap branch, the carved mass
  // (A/K) eps^beta is taken from below a level point so the base's top
  // (A/K) eps0^beta of mass is kept intact; subadditivity of x^beta then
  // gives the assumption exactly.
  const double diluted_A = tail.A / K;
  const double gamma1 = 1.0 - diluted_A * std::pow(tail.eps0, tail.beta);
  const double carved = 1.0 - h.gamma;  // (A/K) eps^beta
  const double mu_bar = upper_level_point(*base, gamma1);
  const double F_bar = base->cdf(mu_bar);
  const double atom = F_bar - base->cdf_left(mu_bar);
  const double gamma2 = 1.0 - carved / gamma1;
  const double gamma3 =
      atom > 0.0
          ? (1.0 - carved - (1.0 - F_bar) - gamma2 * (F_bar - atom)) / atom
          : gamma2;

  PerturbedTail::Params p;
  p.base = base;
  p.cut = mu_bar;
  p.w_lo = gamma2;
  p.w_atom = gamma3;
  p.w_hi = 1.0;
  p.tail_lo = instance.mu_star();
  p.tail_hi = h.expected_max;
  p.tail_coef = diluted_A;
  p.tail_beta = tail.beta;
  h.perturbed = std::make_shared<PerturbedTail>(std::move(p));
  return h;
}

ConstructionChecks verify_construction(const HypothesisConstruction& h,
                                       const TailParams& tail) {
  ConstructionChecks c;
  c.integral = integrate_density(*h.perturbed);
  c.normalization = std::abs(c.integral - 1.0) < 1e-6;
  c.new_maximum =
      std::abs(h.perturbed->max_reward() - h.expected_max) <= 1e-12;
  c.assumption1 = check_assumption1(*h.perturbed, tail, 64).pass;
  if (h.case_a) {
    c.gamma_brackets = h.gamma_k <= h.gamma1 + kBracketSlack;
  } else {
    const double g2 = *h.gamma2;
    const double g3 = *h.gamma3;
    const bool g2_bracket =
        g2 >= h.gamma_k - kBracketSlack && g2 <= 1.0 + kBracketSlack;
    const bool g3_ge_g2 = g3 >= g2 - kBracketSlack;
    const bool gk_le_min = h.gamma_k <= std::min(g2, g3) + kBracketSlack;
    c.gamma_brackets = g2_bracket && g3_ge_g2 && gk_le_min;
  }
  return c;
}

ConstructionChecks verify_construction(const UnifiedHypothesis& h,
                                       const TailParams& tail) {
  ConstructionChecks c;
  c.integral = integrate_density(*h.perturbed);
  c.normalization = std::abs(c.integral - 1.0) < 1e-6;
  c.new_maximum =
      std::abs(h.perturbed->max_reward() - h.expected_max) <= 1e-12;
  // The unified arm carries the diluted tail constant A / |K|.
  const TailParams unified_tail{tail.A / static_cast<double>(h.K_size),
                                tail.beta, tail.eps0};
  c.assumption1 = check_assumption1(*h.perturbed, unified_tail, 64).pass;
  const auto& p = dynamic_cast<const PerturbedTail&>(*h.perturbed).params();
  // gamma is exact by construction; confirm it matches the tail mass carved
  // out for the new segment.
  const double carved =
      p.tail_coef * std::pow(p.tail_hi - p.tail_lo, p.tail_beta);
  c.gamma_brackets = std::abs((1.0 - h.gamma) - carved) <= 1e-12 &&
                     h.gamma > 0.0 && h.gamma < 1.0;
  return c;
}

}  // namespace maxbandit
