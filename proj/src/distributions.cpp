#include "maxbandit/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace maxbandit {

namespace {

void require_u(double u) {
  if (!(u > 0.0) || !(u <= 1.0))
    throw std::domain_error("quantile: u must lie in (0, 1]");
}

// inf{mu : F(mu) >= u} by bisection; relies on F being monotone and
// right-continuous. Used for variants without a closed-form inverse.
double quantile_bisect(const Distribution& d, double u) {
  double lo = d.support_lo();
  double hi = d.max_reward();
  if (d.cdf(lo) >= u) return lo;
  for (int i = 0; i < 200 && lo < hi; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (d.cdf(mid) >= u)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

void TailParams::validate() const {
  if (!(A > 0.0)) throw std::invalid_argument("TailParams: A must be > 0");
  if (!(beta > 0.0))
    throw std::invalid_argument(
        "TailParams: beta must be > 0 (beta = 0 is unsupported)");
  if (!(eps0 > 0.0)) throw std::invalid_argument("TailParams: eps0 must be > 0");
  if (A * std::pow(eps0, beta) > 1.0 + 1e-12)
    throw std::invalid_argument("TailParams: A * eps0^beta exceeds 1");
}

double Distribution::density(double) const {
  throw std::logic_error(type_name() + ": no density decomposition available");
}

std::vector<double> Distribution::density_breakpoints() const {
  return {support_lo(), max_reward()};
}

double Distribution::tail_mass(double eps) const {
  if (!(eps > 0.0)) throw std::domain_error("tail_mass: eps must be > 0");
  return 1.0 - cdf(max_reward() - eps);
}

// ---------------------------------------------------------------------------
// PowerTail

PowerTail::PowerTail(double mu_star, double A, double beta)
    : mu_star_(mu_star), A_(A), beta_(beta) {
  if (!(A > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("PowerTail: A and beta must be > 0");
  width_ = std::pow(A_, -1.0 / beta_);
}

double PowerTail::cdf(double mu) const {
  if (mu >= mu_star_) return 1.0;
  if (mu <= mu_star_ - width_) return 0.0;
  return 1.0 - A_ * std::pow(mu_star_ - mu, beta_);
}

double PowerTail::quantile(double u) const {
  require_u(u);
  const double x = mu_star_ - std::pow((1.0 - u) / A_, 1.0 / beta_);
  return std::max(x, mu_star_ - width_);
}

double PowerTail::density(double mu) const {
  if (mu <= mu_star_ - width_ || mu >= mu_star_) return 0.0;
  return A_ * beta_ * std::pow(mu_star_ - mu, beta_ - 1.0);
}

// ---------------------------------------------------------------------------
// Uniform

Uniform::Uniform(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw std::invalid_argument("Uniform: requires lo < hi");
}

double Uniform::cdf(double mu) const {
  if (mu <= lo_) return 0.0;
  if (mu >= hi_) return 1.0;
  return (mu - lo_) / (hi_ - lo_);
}

double Uniform::quantile(double u) const {
  require_u(u);
  return lo_ + u * (hi_ - lo_);
}

double Uniform::density(double mu) const {
  return (mu > lo_ && mu < hi_) ? 1.0 / (hi_ - lo_) : 0.0;
}

// ---------------------------------------------------------------------------
// PointMass

double PointMass::quantile(double u) const {
  require_u(u);
  return mu_star_;
}

// ---------------------------------------------------------------------------
// FiniteMixture

FiniteMixture::FiniteMixture(std::vector<double> weights,
                             std::vector<DistPtr> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
  if (weights_.empty() || weights_.size() != components_.size())
    throw std::invalid_argument("FiniteMixture: weight/component size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0))
      throw std::invalid_argument("FiniteMixture: weights must be positive");
    if (!components_[i])
      throw std::invalid_argument("FiniteMixture: null component");
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("FiniteMixture: weights must sum to 1");
  max_reward_ = -std::numeric_limits<double>::infinity();
  support_lo_ = std::numeric_limits<double>::infinity();
  for (const auto& c : components_) {
    max_reward_ = std::max(max_reward_, c->max_reward());
    support_lo_ = std::min(support_lo_, c->support_lo());
  }
}

double FiniteMixture::cdf(double mu) const {
  double v = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i)
    v += weights_[i] * components_[i]->cdf(mu);
  return v;
}

double FiniteMixture::cdf_left(double mu) const {
  double v = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i)
    v += weights_[i] * components_[i]->cdf_left(mu);
  return v;
}

double FiniteMixture::quantile(double u) const {
  require_u(u);
  return quantile_bisect(*this, u);
}

bool FiniteMixture::has_density() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const DistPtr& c) { return c->has_density(); });
}

double FiniteMixture::density(double mu) const {
  double v = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i)
    v += weights_[i] * components_[i]->density(mu);
  return v;
}

std::vector<Atom> FiniteMixture::atoms() const {
  std::map<double, double> merged;
  for (std::size_t i = 0; i < components_.size(); ++i)
    for (const Atom& a : components_[i]->atoms())
      merged[a.location] += weights_[i] * a.mass;
  std::vector<Atom> out;
  out.reserve(merged.size());
  for (const auto& [loc, mass] : merged) out.push_back({loc, mass});
  return out;
}

std::vector<double> FiniteMixture::density_breakpoints() const {
  std::vector<double> pts;
  for (const auto& c : components_) {
    auto b = c->density_breakpoints();
    pts.insert(pts.end(), b.begin(), b.end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// ---------------------------------------------------------------------------
// PerturbedTail

PerturbedTail::PerturbedTail(Params p) : p_(std::move(p)) {
  if (!p_.base) throw std::invalid_argument("PerturbedTail: null base");
  if (!(p_.tail_hi > p_.tail_lo))
    throw std::invalid_argument("PerturbedTail: empty tail segment");
  if (!(p_.tail_coef > 0.0) || !(p_.tail_beta > 0.0))
    throw std::invalid_argument("PerturbedTail: bad tail parameters");
  atom_mass_ = p_.base->cdf(p_.cut) - p_.base->cdf_left(p_.cut);
}

double PerturbedTail::base_part_cdf(double mu) const {
  if (mu < p_.cut) return p_.w_lo * p_.base->cdf(mu);
  double m = p_.w_lo * p_.base->cdf_left(p_.cut) + p_.w_atom * atom_mass_;
  if (mu > p_.cut) m += p_.w_hi * (p_.base->cdf(mu) - p_.base->cdf(p_.cut));
  return m;
}

double PerturbedTail::base_part_cdf_left(double mu) const {
  if (mu <= p_.cut) return p_.w_lo * p_.base->cdf_left(mu);
  return p_.w_lo * p_.base->cdf_left(p_.cut) + p_.w_atom * atom_mass_ +
         p_.w_hi * (p_.base->cdf_left(mu) - p_.base->cdf(p_.cut));
}

double PerturbedTail::base_mass() const {
  return base_part_cdf(p_.base->max_reward());
}

double PerturbedTail::cdf(double mu) const {
  if (mu >= p_.tail_hi) return 1.0;
  double v = base_part_cdf(std::min(mu, p_.base->max_reward()));
  if (mu > p_.tail_lo) {
    const double w = p_.tail_hi - p_.tail_lo;
    v += p_.tail_coef * (std::pow(w, p_.tail_beta) -
                         std::pow(p_.tail_hi - mu, p_.tail_beta));
  }
  return std::min(v, 1.0);
}

double PerturbedTail::cdf_left(double mu) const {
  if (mu > p_.tail_hi) return 1.0;
  double v = base_part_cdf_left(std::min(mu, p_.base->max_reward()));
  if (mu > p_.tail_lo) {
    const double w = p_.tail_hi - p_.tail_lo;
    v += p_.tail_coef * (std::pow(w, p_.tail_beta) -
                         std::pow(p_.tail_hi - mu, p_.tail_beta));
  }
  return std::min(v, 1.0);
}

double PerturbedTail::quantile(double u) const {
  require_u(u);
  const double m_below = p_.w_lo * p_.base->cdf_left(p_.cut);
  const double m_atom = m_below + p_.w_atom * atom_mass_;
  const double m_base = base_mass();
  if (u <= m_below && p_.w_lo > 0.0) return p_.base->quantile(u / p_.w_lo);
  if (u <= m_atom) return p_.cut;
  if (u <= m_base && p_.w_hi > 0.0)
    return p_.base->quantile(
        std::min(1.0, p_.base->cdf(p_.cut) + (u - m_atom) / p_.w_hi));
  // Tail segment: closed-form inverse of the polynomial piece.
  const double w = p_.tail_hi - p_.tail_lo;
  const double rem = std::max(0.0, u - m_base);
  const double arg =
      std::max(0.0, std::pow(w, p_.tail_beta) - rem / p_.tail_coef);
  return p_.tail_hi - std::pow(arg, 1.0 / p_.tail_beta);
}

double PerturbedTail::support_lo() const {
  return std::min(p_.base->support_lo(), p_.tail_lo);
}

double PerturbedTail::density(double mu) const {
  double v = 0.0;
  if (mu < p_.base->max_reward() || mu == p_.base->max_reward()) {
    const double w = mu < p_.cut ? p_.w_lo : (mu == p_.cut ? 0.0 : p_.w_hi);
    v += w * p_.base->density(mu);
  }
  if (mu > p_.tail_lo && mu < p_.tail_hi)
    v += p_.tail_coef * p_.tail_beta *
         std::pow(p_.tail_hi - mu, p_.tail_beta - 1.0);
  return v;
}

std::vector<Atom> PerturbedTail::atoms() const {
  std::vector<Atom> out;
  for (const Atom& a : p_.base->atoms()) {
    const double w =
        a.location < p_.cut ? p_.w_lo : (a.location == p_.cut ? p_.w_atom : p_.w_hi);
    if (w * a.mass > 0.0) out.push_back({a.location, w * a.mass});
  }
  return out;
}

std::vector<double> PerturbedTail::density_breakpoints() const {
  std::vector<double> pts = p_.base->density_breakpoints();
  pts.push_back(p_.cut);
  pts.push_back(p_.tail_lo);
  pts.push_back(p_.tail_hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// ---------------------------------------------------------------------------

Assumption1Report check_assumption1(const Distribution& dist,
                                    const TailParams& params, int grid_size) {
  params.validate();
  if (grid_size < 2)
    throw std::invalid_argument("check_assumption1: grid_size must be >= 2");
  Assumption1Report rep;
  // Geometric grid over (eps0 * 1e-6, eps0]; power-law violations concentrate
  // near zero, so probe all scales.
  const double log_lo = std::log(params.eps0) + std::log(1e-6);
  const double log_hi = std::log(params.eps0);
  for (int i = 0; i < grid_size; ++i) {
    const double t = static_cast<double>(i) / (grid_size - 1);
    const double eps = std::exp(log_lo + t * (log_hi - log_lo));
    const double required = params.A * std::pow(eps, params.beta);
    const double actual = dist.tail_mass(eps);
    if (actual + 1e-12 < required) {
      rep.pass = false;
      rep.violating_eps = eps;
      rep.required = required;
      rep.actual = actual;
      return rep;
    }
  }
  return rep;
}

}  // namespace maxbandit
