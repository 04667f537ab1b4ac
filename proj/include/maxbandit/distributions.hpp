#pragma once

#include <memory>
#include <string>
#include <vector>

#include "maxbandit/rng.hpp"

namespace maxbandit {

// Known tail constants: P(X > mu*_k - eps) >= A * eps^beta for eps in (0, eps0].
struct TailParams {
  double A = 1.0;
  double beta = 1.0;
  double eps0 = 1.0;

  // Throws std::invalid_argument on A <= 0, beta <= 0, eps0 <= 0 or
  // A * eps0^beta > 1. beta = 0 is rejected as unsupported (the confidence
  // radius exponent 1/beta would be undefined).
  void validate() const;
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

class Distribution;
using DistPtr = std::shared_ptr<const Distribution>;

// A samplable, CDF-queryable reward distribution with a finite maximal reward.
// Immutable after construction; safe to share across threads.
class Distribution {
 public:
  virtual ~Distribution() = default;

  virtual double cdf(double mu) const = 0;
  // Left limit F(mu-); differs from cdf only at atoms.
  virtual double cdf_left(double mu) const = 0;
  // Generalized inverse inf{mu : F(mu) >= u}. Requires u in (0, 1];
  // throws std::domain_error otherwise.
  virtual double quantile(double u) const = 0;
  // inf{mu : F(mu) = 1}; finite for every variant.
  virtual double max_reward() const = 0;
  virtual double support_lo() const = 0;
  virtual std::string type_name() const = 0;

  // Continuous density part plus atom list, where available. Variants without
  // a closed-form decomposition report has_density() == false.
  virtual bool has_density() const { return false; }
  virtual double density(double mu) const;  // throws if !has_density()
  virtual std::vector<Atom> atoms() const { return {}; }
  // Sorted piece boundaries of the density (integration endpoints; the density
  // may be singular only at these points).
  virtual std::vector<double> density_breakpoints() const;

  // Inverse-transform draw: quantile(u) with u uniform on (0, 1].
  double sample(Rng& rng) const { return quantile(rng.uniform01()); }

  // P(X > max_reward() - eps) = 1 - F(max_reward() - eps); the inequality is
  // strict, so an atom exactly at max_reward() - eps does not count.
  double tail_mass(double eps) const;
};

// F(mu) = 1 - A (mu_star - mu)^beta on [mu_star - A^(-1/beta), mu_star].
// Satisfies the tail assumption with equality for eps <= A^(-1/beta).
class PowerTail final : public Distribution {
 public:
  PowerTail(double mu_star, double A, double beta);

  double cdf(double mu) const override;
  double cdf_left(double mu) const override { return cdf(mu); }
  double quantile(double u) const override;
  double max_reward() const override { return mu_star_; }
  double support_lo() const override { return mu_star_ - width_; }
  std::string type_name() const override { return "power_tail"; }
  bool has_density() const override { return true; }
  double density(double mu) const override;

  double tail_A() const { return A_; }
  double tail_beta() const { return beta_; }

 private:
  double mu_star_, A_, beta_, width_;
};

class Uniform final : public Distribution {
 public:
  Uniform(double lo, double hi);

  double cdf(double mu) const override;
  double cdf_left(double mu) const override { return cdf(mu); }
  double quantile(double u) const override;
  double max_reward() const override { return hi_; }
  double support_lo() const override { return lo_; }
  std::string type_name() const override { return "uniform"; }
  bool has_density() const override { return true; }
  double density(double mu) const override;

  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_, hi_;
};

class PointMass final : public Distribution {
 public:
  explicit PointMass(double mu_star) : mu_star_(mu_star) {}

  double cdf(double mu) const override { return mu >= mu_star_ ? 1.0 : 0.0; }
  double cdf_left(double mu) const override { return mu > mu_star_ ? 1.0 : 0.0; }
  double quantile(double u) const override;
  double max_reward() const override { return mu_star_; }
  double support_lo() const override { return mu_star_; }
  std::string type_name() const override { return "point_mass"; }
  bool has_density() const override { return true; }
  double density(double) const override { return 0.0; }
  std::vector<Atom> atoms() const override { return {{mu_star_, 1.0}}; }

 private:
  double mu_star_;
};

// Convex combination of component distributions; weights must sum to 1.
class FiniteMixture final : public Distribution {
 public:
  FiniteMixture(std::vector<double> weights, std::vector<DistPtr> components);

  double cdf(double mu) const override;
  double cdf_left(double mu) const override;
  double quantile(double u) const override;
  double max_reward() const override { return max_reward_; }
  double support_lo() const override { return support_lo_; }
  std::string type_name() const override { return "mixture"; }
  bool has_density() const override;
  double density(double mu) const override;
  std::vector<Atom> atoms() const override;
  std::vector<double> density_breakpoints() const override;

  std::size_t size() const { return components_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const DistPtr& component(std::size_t i) const { return components_[i]; }

 private:
  std::vector<double> weights_;
  std::vector<DistPtr> components_;
  double max_reward_, support_lo_;
};

// Piecewise perturbation of a base distribution used by the lower-bound
// hypothesis constructions: the base is reweighted below / at / above a cut
// point, and a polynomial tail segment with density
// tail_coef * tail_beta * (tail_hi - mu)^(tail_beta - 1) on (tail_lo, tail_hi]
// is appended above the base support.
class PerturbedTail final : public Distribution {
 public:
  struct Params {
    DistPtr base;
    double cut = 0.0;       // reweight boundary (base atoms at cut use w_atom)
    double w_lo = 1.0;      // base weight strictly below cut
    double w_atom = 1.0;    // weight of the base atom at cut
    double w_hi = 1.0;      // base weight strictly above cut
    double tail_lo = 0.0;   // tail segment support (tail_lo, tail_hi]
    double tail_hi = 0.0;
    double tail_coef = 0.0;
    double tail_beta = 1.0;
  };

  explicit PerturbedTail(Params p);

  double cdf(double mu) const override;
  double cdf_left(double mu) const override;
  double quantile(double u) const override;
  double max_reward() const override { return p_.tail_hi; }
  double support_lo() const override;
  std::string type_name() const override { return "perturbed_tail"; }
  bool has_density() const override { return p_.base->has_density(); }
  double density(double mu) const override;
  std::vector<Atom> atoms() const override;
  std::vector<double> density_breakpoints() const override;

  const Params& params() const { return p_; }
  // Total reweighted base mass (tail segment mass is 1 minus this up to
  // construction error).
  double base_mass() const;

 private:
  double base_part_cdf(double mu) const;
  double base_part_cdf_left(double mu) const;

  Params p_;
  double atom_mass_;  // base atom mass at cut
};

struct Assumption1Report {
  bool pass = true;
  double violating_eps = 0.0;
  double required = 0.0;
  double actual = 0.0;
};

// Evaluates tail_mass(eps) >= A eps^beta on a geometric grid of grid_size
// epsilons spanning (eps0 * 1e-6, eps0]. Requires grid_size >= 2.
Assumption1Report check_assumption1(const Distribution& dist,
                                    const TailParams& params, int grid_size);

}  // namespace maxbandit
