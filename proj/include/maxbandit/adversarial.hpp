#pragma once

#include <optional>

#include "maxbandit/algorithms.hpp"
#include "maxbandit/bandit.hpp"

namespace maxbandit {

// One perturbed-arm hypothesis from the multi-arm lower-bound construction:
// arm k gains a polynomial tail above the instance maximum, making it the
// unique best arm by at least eps.
struct HypothesisConstruction {
  std::size_t k = 0;              // perturbed arm (0-based)
  DistPtr perturbed;
  bool case_a = false;            // eps0 <= gap + eps branch
  double gamma1 = 0.0;            // 1 - A eps0^beta
  std::optional<double> gamma2;   // case (b) reweight below mu_bar
  std::optional<double> gamma3;   // case (b) atom reweight at mu_bar
  double gamma_k = 0.0;           // 1 - 2A min(eps0, gap + eps)^beta
  double t_k = 0.0;               // ln(3/(16 delta)) / (4 (1 - gamma_k))
  std::optional<double> mu_bar;   // sup{mu : F_k(mu) <= 1 - A eps0^beta}
  double atom_mass = 0.0;         // base atom mass at mu_bar
  double gap = 0.0;               // mu* - mu*_k of the unperturbed instance
  double expected_max = 0.0;      // mu* + eps
};

struct UnifiedHypothesis {
  DistPtr perturbed;
  double gamma = 0.0;  // 1 - A eps^beta / |K|
  double t = 0.0;      // ln(3/(5 delta)) / (4 (1 - gamma))
  double expected_max = 0.0;
  std::size_t K_size = 0;
};

// Builds the perturbed hypothesis for arm k. Requires beta <= 1,
// eps0 <= (4A)^(-1/beta) and eps in (0, eps0); throws std::invalid_argument
// otherwise, and std::invalid_argument for base variants without a
// density/atom decomposition (mixture bases are not supported here).
HypothesisConstruction build_hypothesis_multi(const BanditInstance& instance,
                                              std::size_t k,
                                              const PacParams& pac);

// Requires beta <= 1, eps0 <= (|K|/(2A))^(1/beta) and eps in (0, eps0).
UnifiedHypothesis build_hypothesis_unified(const BanditInstance& instance,
                                           const PacParams& pac);

struct ConstructionChecks {
  bool normalization = false;   // |integral + atom mass - 1| < 1e-6
  bool new_maximum = false;     // max reward equals mu* + eps to 1e-12
  bool assumption1 = false;     // tail grid check, 64 points
  bool gamma_brackets = false;  // coefficient bracket invariants
  double integral = 0.0;        // quadrature value

  bool pass() const {
    return normalization && new_maximum && assumption1 && gamma_brackets;
  }
};

ConstructionChecks verify_construction(const HypothesisConstruction& h,
                                       const TailParams& tail);
ConstructionChecks verify_construction(const UnifiedHypothesis& h,
                                       const TailParams& tail);

// Total mass: quadrature of the continuous density pieces plus atom masses.
// Integrable power singularities at piece boundaries are handled by dyadic
// grading; accuracy degrades below ~1e-7 only for tail exponents under ~0.4.
double integrate_density(const Distribution& dist);

}  // namespace maxbandit
